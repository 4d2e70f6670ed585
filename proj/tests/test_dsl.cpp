#include <doctest.h>

#include "gpdkit/registry.hpp"

using namespace gpdkit;
using dsl::Document;

namespace {

bool groupoids_equal(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.size() != b.size()) return false;
  for (ElemId e = 0; e < a.size(); ++e) {
    if (a.label(e) != b.label(e) || a.is_unit(e) != b.is_unit(e)) return false;
    if (a.src(e) != b.src(e) || a.rng(e) != b.rng(e) || a.inv(e) != b.inv(e))
      return false;
  }
  for (ElemId x = 0; x < a.size(); ++x)
    for (ElemId y = 0; y < a.size(); ++y)
      if (a.mul(x, y) != b.mul(x, y)) return false;
  return true;
}

bool documents_equal(const Document& a, const Document& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    if (Document::name_of(a.blocks[i]) != Document::name_of(b.blocks[i]))
      return false;
    if (a.blocks[i].index() != b.blocks[i].index()) return false;
    if (const auto* ga = std::get_if<dsl::GroupoidBlock>(&a.blocks[i])) {
      const auto* gb = std::get_if<dsl::GroupoidBlock>(&b.blocks[i]);
      if (!groupoids_equal(*ga->groupoid, *gb->groupoid)) return false;
    } else if (const auto* la = std::get_if<dsl::LeftActionBlock>(&a.blocks[i])) {
      const auto* lb = std::get_if<dsl::LeftActionBlock>(&b.blocks[i]);
      const auto& H = *la->action.H();
      const auto& X = *la->action.X();
      if (lb->action.H()->size() != H.size() ||
          lb->action.X()->size() != X.size())
        return false;
      for (ElemId u : X.units())
        if (la->action.rho0(u) != lb->action.rho0(u)) return false;
      for (ElemId h = 0; h < H.size(); ++h)
        for (ElemId x = 0; x < X.size(); ++x) {
          if (la->action.act_opt(h, x) != lb->action.act_opt(h, x)) return false;
          if (la->action.restr_opt(h, x) != lb->action.restr_opt(h, x))
            return false;
        }
    } else if (const auto* fa = std::get_if<dsl::FellBundleBlock>(&a.blocks[i])) {
      const auto* fb = std::get_if<dsl::FellBundleBlock>(&b.blocks[i]);
      for (ElemId x = 0; x < fa->bundle->base->size(); ++x) {
        if (fa->bundle->fiber_dim(x) != fb->bundle->fiber_dim(x)) return false;
        for (int i2 = 0; i2 < fa->bundle->fiber_dim(x); ++i2)
          if ((fa->bundle->fibers[x][i2] - fb->bundle->fibers[x][i2]).norm() >
              1e-12)
            return false;
      }
    } else if (const auto* ra = std::get_if<dsl::RightActionBlock>(&a.blocks[i])) {
      const auto* rb = std::get_if<dsl::RightActionBlock>(&b.blocks[i]);
      const auto& G = *ra->action.G();
      const auto& X = *ra->action.X();
      for (ElemId u : X.units())
        if (ra->action.sigma0(u) != rb->action.sigma0(u)) return false;
      for (ElemId x = 0; x < X.size(); ++x)
        for (ElemId t = 0; t < G.size(); ++t) {
          if (ra->action.act_opt(x, t) != rb->action.act_opt(x, t)) return false;
          if (ra->action.restr_opt(x, t) != rb->action.restr_opt(x, t))
            return false;
        }
    } else if (const auto* ma = std::get_if<dsl::FellActionBlock>(&a.blocks[i])) {
      const auto* mb = std::get_if<dsl::FellActionBlock>(&b.blocks[i]);
      if (ma->action->images.size() != mb->action->images.size()) return false;
      for (const auto& [key, imgs] : ma->action->images) {
        auto it = mb->action->images.find(key);
        if (it == mb->action->images.end()) return false;
        if (it->second.size() != imgs.size()) return false;
        for (size_t k = 0; k < imgs.size(); ++k)
          if ((imgs[k] - it->second[k]).norm() > 1e-12) return false;
      }
    } else if (const auto* da = std::get_if<dsl::DrSystemBlock>(&a.blocks[i])) {
      const auto* db = std::get_if<dsl::DrSystemBlock>(&b.blocks[i]);
      if (da->system.S != db->system.S || da->system.T != db->system.T)
        return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("empty input parses to an empty document") {
  auto doc = dsl::parse("");
  CHECK(doc.blocks.empty());
  auto doc2 = dsl::parse("# only a comment\n\n");
  CHECK(doc2.blocks.empty());
}

TEST_CASE("the shipped s4 document parses to three blocks") {
  auto text = registry::example_text("s4");
  auto doc = dsl::parse(text);
  REQUIRE(doc.blocks.size() == 3);
  CHECK(doc.groupoid("d4") != nullptr);
  CHECK(doc.groupoid("x") != nullptr);
  CHECK(doc.left_action("act") != nullptr);
  CHECK(doc.groupoid("x")->groupoid->size() == 72);
}

TEST_CASE("duplicate block names are reported at the second definition") {
  std::string text =
      "[groupoid a]\nelements = e\nunits = e\nsrc e = e\nrng e = e\n"
      "inv e = e\nmul e e = e\n"
      "[groupoid a]\nelements = e\nunits = e\nsrc e = e\nrng e = e\n"
      "inv e = e\nmul e e = e\n";
  try {
    dsl::parse(text);
    FAIL("expected a ParseError");
  } catch (const dsl::ParseError& e) {
    CHECK(e.diag.line == 8);
    CHECK(e.diag.message.find("duplicate") != std::string::npos);
  }
}

TEST_CASE("diagnostics distinguish lexical, reference, and arity errors") {
  SUBCASE("lexical: bad number in a matrix") {
    std::string text =
        "[groupoid g]\nelements = e\nunits = e\nsrc e = e\nrng e = e\n"
        "inv e = e\nmul e e = e\n"
        "[fell-bundle b]\nbase = g\ndim e = 1\nbasis e = [[zz,0]]\n";
    CHECK_THROWS_WITH_AS(dsl::parse(text),
                         doctest::Contains("bad number"), dsl::ParseError);
  }
  SUBCASE("reference: unknown element") {
    std::string text =
        "[groupoid g]\nelements = e\nunits = e\nsrc q = e\n";
    CHECK_THROWS_WITH_AS(dsl::parse(text),
                         doctest::Contains("unknown element"), dsl::ParseError);
  }
  SUBCASE("arity: malformed statement") {
    std::string text = "[groupoid g]\nelements = e\nunits = e\nsrc e e = e\n";
    CHECK_THROWS_WITH_AS(dsl::parse(text), doctest::Contains("expected:"),
                         dsl::ParseError);
  }
  SUBCASE("statements outside blocks") {
    CHECK_THROWS_WITH_AS(dsl::parse("elements = a\n"),
                         doctest::Contains("outside"), dsl::ParseError);
  }
}

TEST_CASE("round-trip: parse(print(doc)) is structurally identical") {
  for (const auto& name : registry::example_names()) {
    auto doc = registry::example_document(name);
    auto text = dsl::print(doc);
    auto back = dsl::parse(text);
    CHECK(documents_equal(doc, back));
    // and printing again is bit-identical
    CHECK(dsl::print(back) == text);
  }
}
