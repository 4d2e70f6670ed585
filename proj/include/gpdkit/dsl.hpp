#pragma once

#include <map>
#include <variant>

#include "gpdkit/dr.hpp"
#include "gpdkit/fell.hpp"

namespace gpdkit::dsl {

struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string message;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d)
      : std::runtime_error("line " + std::to_string(d.line) + ", col " +
                           std::to_string(d.col) + ": " + d.message),
        diag(std::move(d)) {}
  Diagnostic diag;
};

/// Blocks are elaborated to core objects at parse time; element names stay
/// attached as labels for printing and error messages.

struct GroupoidBlock {
  std::string name;
  GpdPtr groupoid;
};

struct LeftActionBlock {
  std::string name, h_name, x_name;
  LeftSelfSimilarAction action;
};

struct RightActionBlock {
  std::string name, g_name, x_name;
  RightSelfSimilarAction action;
};

struct FellBundleBlock {
  std::string name, base_name;
  FellBundlePtr bundle;
};

struct FellActionBlock {
  std::string name, action_name, bundle_name;
  FellLeftActionPtr action;
};

struct DrSystemBlock {
  std::string name;
  StarCommutingSystem system;
};

using Block = std::variant<GroupoidBlock, LeftActionBlock, RightActionBlock,
                           FellBundleBlock, FellActionBlock, DrSystemBlock>;

struct Document {
  std::vector<Block> blocks;

  const Block* find(const std::string& name) const;
  const GroupoidBlock* groupoid(const std::string& name) const;
  const LeftActionBlock* left_action(const std::string& name) const;
  const RightActionBlock* right_action(const std::string& name) const;
  const FellBundleBlock* fell_bundle(const std::string& name) const;
  const FellActionBlock* fell_action(const std::string& name) const;
  const DrSystemBlock* dr_system(const std::string& name) const;
  static const std::string& name_of(const Block& b);
};

/// Line-oriented grammar. Blocks open with `[kind NAME]` for kind in
/// {groupoid, left-action, right-action, fell-bundle, fell-action,
/// dr-system}; `#` starts a comment. Statements:
///   elements = a b c            units = u v
///   src a = u   rng a = v   inv a = b   mul a b = c
///   H = name    X = name    G = name    (block cross-references)
///   rho0 u = w  act h x = y  restr h x = k
///   base = name  dim u = 2
///   basis x = [[re,im;re,im;re,im;re,im],[...]]   (row-major entries)
///   action = name  bundle = name  map h x = [[...],[...]]
///   points = 6  perm S = (0 2 4)(1 3 5)
Document parse(const std::string& text);

/// Canonical emission; parse(print(doc)) is structurally identical to doc.
std::string print(const Document& doc);

std::string print_groupoid_block(const std::string& name, const FiniteGroupoid& g);

}  // namespace gpdkit::dsl
