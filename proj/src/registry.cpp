#include "gpdkit/registry.hpp"

#include "gpdkit/fixtures.hpp"

namespace gpdkit::registry {

using namespace dsl;

namespace {

Document s4_document() {
  const auto& fix = fixtures::s4_fixture();
  Document doc;
  doc.blocks.emplace_back(GroupoidBlock{"d4", fix.H});
  doc.blocks.emplace_back(GroupoidBlock{"x", fix.X});
  doc.blocks.emplace_back(LeftActionBlock{"act", "d4", "x", fix.action});
  return doc;
}

Document skew_document() {
  auto h2 = cyclic_group(2);
  auto action = skew_ss_action(cyclic_group(4), h2, {0, 1, 0, 1});
  Document doc;
  doc.blocks.emplace_back(GroupoidBlock{"h2", h2});
  doc.blocks.emplace_back(GroupoidBlock{"gc", action.X()});
  LeftActionBlock b{"act", "h2", "gc", action};
  // the action's H is its own copy of Z/2; re-anchor the block on it
  b.action = action;
  doc.blocks.emplace_back(std::move(b));
  return doc;
}

Document semidirect_document() {
  auto p = fixtures::semidirect_two_sided_fixture();
  Document doc;
  doc.blocks.emplace_back(GroupoidBlock{"z2l", p.left.H()});
  doc.blocks.emplace_back(GroupoidBlock{"z2r", p.right.G()});
  doc.blocks.emplace_back(GroupoidBlock{"x", p.left.X()});
  doc.blocks.emplace_back(LeftActionBlock{"left", "z2l", "x", p.left});
  doc.blocks.emplace_back(RightActionBlock{"right", "z2r", "x", p.right});
  return doc;
}

Document z6_document() {
  Document doc;
  doc.blocks.emplace_back(DrSystemBlock{"sys", fixtures::z6_system()});
  return doc;
}

Document s4_line_document() {
  const auto& fix = fixtures::s4_fixture();
  auto assm = fixtures::s4_line_bundle_assumptions();
  Document doc;
  doc.blocks.emplace_back(GroupoidBlock{"d4", fix.H});
  doc.blocks.emplace_back(GroupoidBlock{"x", fix.X});
  doc.blocks.emplace_back(LeftActionBlock{"act", "d4", "x", fix.action});
  doc.blocks.emplace_back(FellBundleBlock{"line", "x", assm.B});
  doc.blocks.emplace_back(FellActionBlock{"bact", "act", "line", assm.left});
  return doc;
}

Document crossed_document() {
  auto fix = fixtures::crossed_product_fixture();
  Document doc;
  doc.blocks.emplace_back(GroupoidBlock{"h2", fix.action.H()});
  doc.blocks.emplace_back(GroupoidBlock{"gc", fix.action.X()});
  doc.blocks.emplace_back(LeftActionBlock{"act", "h2", "gc", fix.action});
  doc.blocks.emplace_back(FellBundleBlock{"cp", "gc", fix.B});
  doc.blocks.emplace_back(FellActionBlock{"bact", "act", "cp",
                                          fix.assumptions.left});
  return doc;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"s4", "skew-z4", "semidirect", "z6-dr", "s4-line", "crossed"};
}

dsl::Document example_document(const std::string& name) {
  if (name == "s4") return s4_document();
  if (name == "skew-z4") return skew_document();
  if (name == "semidirect") return semidirect_document();
  if (name == "z6-dr") return z6_document();
  if (name == "s4-line") return s4_line_document();
  if (name == "crossed") return crossed_document();
  throw StructureError("unknown example '" + name + "'");
}

std::string example_text(const std::string& name) {
  return dsl::print(example_document(name));
}

}  // namespace gpdkit::registry
