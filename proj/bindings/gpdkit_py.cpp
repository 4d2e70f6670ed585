#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gpdkit/algebra.hpp"
#include "gpdkit/driver.hpp"
#include "gpdkit/fixtures.hpp"
#include "gpdkit/registry.hpp"
#include "gpdkit/report_json.hpp"

namespace py = pybind11;
using namespace gpdkit;

namespace {

py::dict report_to_dict(const ValidationReport& rep) {
  py::dict out;
  py::list checks;
  for (const auto& c : rep.checks()) {
    py::dict item;
    item["check"] = c.check;
    item["status"] = to_string(c.status);
    if (!c.witness.empty()) item["witness"] = c.witness;
    if (!c.note.empty()) item["note"] = c.note;
    if (c.count > 0) item["count"] = c.count;
    checks.append(std::move(item));
  }
  out["ok"] = rep.ok();
  out["checks"] = std::move(checks);
  return out;
}

struct PyDocument {
  dsl::Document doc;
};

ValidationReport check_document(const dsl::Document& doc) {
  ValidationReport all;
  for (const auto& block : doc.blocks) {
    const std::string& name = dsl::Document::name_of(block);
    ValidationReport rep;
    if (const auto* g = std::get_if<dsl::GroupoidBlock>(&block))
      rep = validate_groupoid(*g->groupoid);
    else if (const auto* a = std::get_if<dsl::LeftActionBlock>(&block)) {
      rep = check_left_axioms(a->action);
      if (rep.ok()) rep.merge(verify_derived_left_laws(a->action));
    } else if (const auto* a = std::get_if<dsl::RightActionBlock>(&block)) {
      rep = check_right_axioms(a->action);
      if (rep.ok()) rep.merge(verify_derived_right_laws(a->action));
    } else if (const auto* f = std::get_if<dsl::FellBundleBlock>(&block))
      rep = validate_fell(*f->bundle);
    else if (const auto* f = std::get_if<dsl::FellActionBlock>(&block))
      rep = check_fell_left_action(*f->action);
    else if (const auto* d = std::get_if<dsl::DrSystemBlock>(&block))
      rep = check_star_commuting(d->system);
    all.merge_prefixed(rep, name + ".");
  }
  return all;
}

}  // namespace

PYBIND11_MODULE(_gpdkit, m) {
  m.doc() = "finite groupoids, self-similar actions, and Fell bundles";
  m.attr("__version__") = kToolVersion;

  py::register_exception<StructureError>(m, "StructureError");
  py::register_exception<dsl::ParseError>(m, "ParseError");

  py::class_<PyDocument>(m, "Document")
      .def_property_readonly("block_names",
                             [](const PyDocument& d) {
                               std::vector<std::string> names;
                               for (const auto& b : d.doc.blocks)
                                 names.push_back(dsl::Document::name_of(b));
                               return names;
                             })
      .def("__len__",
           [](const PyDocument& d) { return d.doc.blocks.size(); })
      .def("text", [](const PyDocument& d) { return dsl::print(d.doc); });

  m.def("parse", [](const std::string& text) {
    return PyDocument{dsl::parse(text)};
  });

  m.def("example_names", &registry::example_names);
  m.def("example", &registry::example_text, py::arg("name"));

  m.def("check", [](const std::string& text) {
    return report_to_dict(check_document(dsl::parse(text)));
  });

  m.def("groupoid_size", [](const std::string& text, const std::string& name) {
    auto doc = dsl::parse(text);
    const auto* g = doc.groupoid(name);
    if (!g) throw StructureError("no groupoid block named '" + name + "'");
    return py::make_tuple(g->groupoid->size(), g->groupoid->units().size());
  });

  m.def("validate_groupoid", [](const std::string& text, const std::string& name) {
    auto doc = dsl::parse(text);
    const auto* g = doc.groupoid(name);
    if (!g) throw StructureError("no groupoid block named '" + name + "'");
    return report_to_dict(validate_groupoid(*g->groupoid));
  });

  m.def("product", [](const std::string& text, const std::string& action) {
    auto doc = dsl::parse(text);
    const auto* a = doc.left_action(action);
    if (!a) throw StructureError("no left-action block named '" + action + "'");
    auto prod = zs_product_left(a->action);
    py::dict out;
    out["elements"] = prod.base->size();
    out["units"] = prod.base->units().size();
    out["report"] = report_to_dict(validate_groupoid(*prod.base));
    return out;
  });

  m.def("quotient", [](const std::string& text, const std::string& action) {
    auto doc = dsl::parse(text);
    const auto* a = doc.left_action(action);
    if (!a) throw StructureError("no left-action block named '" + action + "'");
    auto orbit = orbit_groupoid_left(a->action);
    py::dict out;
    out["elements"] = orbit.base->size();
    out["units"] = orbit.base->units().size();
    out["report"] = report_to_dict(validate_groupoid(*orbit.base));
    return out;
  });

  m.def("equiv", [](const std::string& text, const std::string& left,
                    const std::string& right) {
    auto doc = dsl::parse(text);
    const auto* lb = doc.left_action(left);
    if (!lb) throw StructureError("no left-action block named '" + left + "'");
    ParaEquivalence para;
    if (right.empty()) {
      para = certify_para_equivalence(lb->action,
                                      trivial_right_action(lb->action.X()));
    } else {
      const auto* rb = doc.right_action(right);
      if (!rb)
        throw StructureError("no right-action block named '" + right + "'");
      para = certify_para_equivalence(lb->action, rb->action);
    }
    py::dict out;
    out["certified"] = para.certified;
    out["para"] = report_to_dict(para.report);
    if (para.certified) {
      auto w = build_equivalence(para);
      out["report"] = report_to_dict(verify_equivalence(w));
    }
    return out;
  }, py::arg("text"), py::arg("left"), py::arg("right") = std::string());

  m.def("algebra", [](const std::string& text, const std::string& name) {
    auto doc = dsl::parse(text);
    const auto* g = doc.groupoid(name);
    if (!g) throw StructureError("no groupoid block named '" + name + "'");
    auto sum = algebra_summary(*g->groupoid);
    py::dict out;
    out["principal"] = sum.principal;
    out["components"] = sum.components;
    if (sum.principal)
      out["block_dims"] = sum.block_dims;
    else
      out["isotropy_witness"] = sum.isotropy_witness;
    return out;
  });

  m.def("fell_bimodule", [](const std::string& text, const std::string& action) {
    auto doc = dsl::parse(text);
    const auto* f = doc.fell_action(action);
    if (!f) throw StructureError("no fell-action block named '" + action + "'");
    auto trivial_r = trivial_right_action(f->action->B->base);
    auto right = std::make_shared<FellRightAction>(
        trivial_fell_right_action(f->action->B, trivial_r));
    auto assm = certify_fell_assumptions(f->action->B, f->action, right);
    py::dict out;
    out["certified"] = assm.certified;
    out["assumptions"] = report_to_dict(assm.report);
    if (assm.certified) {
      auto w = build_bimodule(assm);
      out["report"] = report_to_dict(verify_bimodule(w));
    }
    return out;
  });

  m.def("dr", [](const std::string& text, const std::string& system, int kbound) {
    auto doc = dsl::parse(text);
    const auto* d = doc.dr_system(system);
    if (!d) throw StructureError("no dr-system block named '" + system + "'");
    py::dict out;
    out["star_commuting"] = report_to_dict(check_star_commuting(d->system));
    auto fr = dr_freeness(d->system, kbound);
    out["period"] = fr.period;
    out["witness_point"] = fr.point;
    out["witness_in_window"] = fr.witness_in_window;
    return out;
  }, py::arg("text"), py::arg("system"), py::arg("kbound") = 2);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
