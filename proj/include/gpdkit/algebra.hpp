#pragma once

#include "gpdkit/groupoid.hpp"

namespace gpdkit {

/// Morita-style invariants of the convolution algebra: unit-orbit partition,
/// isotropy, and (for principal groupoids) one matrix-block dimension per
/// transitivity component.
struct GroupoidAlgebraSummary {
  bool principal = false;
  std::vector<long long> isotropy_witness;  // a non-unit arrow u -> u
  std::vector<int> components;              // unit-orbit sizes, by min unit id
  std::vector<int> block_dims;              // principal only (= components)
};

GroupoidAlgebraSummary algebra_summary(const FiniteGroupoid& g);

/// Matrix algebras are Morita equivalent iff they have the same number of
/// blocks. Pre: both summaries principal.
bool morita_compatible(const GroupoidAlgebraSummary& a,
                       const GroupoidAlgebraSummary& b);

/// Convolution (f1*f2)(x) = sum over x = yz of f1(y) f2(z), in exact integer
/// arithmetic. Functions are dense vectors indexed by element id.
std::vector<long long> convolution_product(const FiniteGroupoid& g,
                                           const std::vector<long long>& f1,
                                           const std::vector<long long>& f2);

/// For a principal groupoid: indicators of the unique arrows u -> v behave
/// as matrix units, e_uv * e_vw = e_uw. `max_pairs` caps the sweep; beyond
/// the cap a deterministic random sample of triples is checked instead.
ValidationReport verify_matrix_units(const FiniteGroupoid& g,
                                     long long max_pairs = 4000);

}  // namespace gpdkit
