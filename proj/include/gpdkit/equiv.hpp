#pragma once

#include "gpdkit/construct.hpp"

namespace gpdkit {

/// X as an equivalence between A = (X/G) |><| H and C = G |><| (H\X):
/// commuting free actions of A (left) and C (right) on X with momentum maps
/// frak_r(x) = r(x)G and frak_s(x) = H s(x), plus the principality
/// bijections. Built from a certified para-equivalence; `verify_equivalence`
/// re-checks everything by enumeration.
struct EquivalenceWitness {
  ParaEquivalence para;

  OrbitGroupoid x_mod_g;  // X/G
  OrbitGroupoid h_mod_x;  // H\X
  LeftSelfSimilarAction qleft;    // H on X/G
  RightSelfSimilarAction qright;  // G on H\X
  ProductGroupoid A;  // (X/G) |><| H
  ProductGroupoid C;  // G |><| (H\X)

  std::vector<ElemId> frak_r;  // X element -> unit of A.base
  std::vector<ElemId> frak_s;  // X element -> unit of C.base

  // (right-orbit class, source unit) -> representative, unique by freeness
  std::unordered_map<int64_t, ElemId> right_rep_by_src;
  // (left-orbit class, range unit) -> representative
  std::unordered_map<int64_t, ElemId> left_rep_by_rng;

  // single-cell corruption hook for mutation testing: key y * |C| + gamma
  std::unordered_map<int64_t, ElemId> right_act_override;

  /// Left action of A.base on X; nullopt when (gamma, y) is off-domain.
  std::optional<ElemId> left_act(ElemId gamma, ElemId y) const;
  /// Right action of C.base on X.
  std::optional<ElemId> right_act(ElemId y, ElemId gamma) const;

  /// Representative of right-orbit class with the given source unit.
  std::optional<ElemId> right_rep(ElemId cls, ElemId src_unit) const;
  /// Representative of left-orbit class with the given range unit.
  std::optional<ElemId> left_rep(ElemId cls, ElemId rng_unit) const;
};

EquivalenceWitness build_equivalence(const ParaEquivalence& p);

/// Four check groups, each exhaustive: (i) action laws and momentum
/// compatibility, (ii) freeness of both actions, (iii) commutation,
/// (iv) principality (the induced maps on orbit spaces are bijections).
ValidationReport verify_equivalence(const EquivalenceWitness& w);

/// The G = {e} special case: X |><| H is equivalent to H\X.
EquivalenceWitness one_sided_equivalence(const LeftSelfSimilarAction& a);

}  // namespace gpdkit
