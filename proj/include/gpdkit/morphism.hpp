#pragma once

#include <optional>

#include "gpdkit/groupoid.hpp"

namespace gpdkit {

/// A total map of element tables. Validation checks preservation of units,
/// src, rng, inv, and every defined product; an isomorphism is additionally
/// a bijection.
struct GroupoidMorphism {
  GpdPtr dom;
  GpdPtr cod;
  std::vector<ElemId> map;  // dom element id -> cod element id

  ElemId operator()(ElemId e) const { return map[e]; }

  ValidationReport validate() const;
  bool is_bijection() const;

  /// validate() passes and the map is a bijection.
  bool is_isomorphism() const { return is_bijection() && validate().ok(); }
};

using Isomorphism = GroupoidMorphism;

/// Backtracking search for an isomorphism, seeded by unit-degree invariants.
/// Iterates candidates in ascending id order, so the result is reproducible.
/// Returns a verified isomorphism, or nullopt when none exists.
std::optional<Isomorphism> iso_check(GpdPtr a, GpdPtr b);

}  // namespace gpdkit
