#pragma once

#include <unordered_map>

#include "gpdkit/constructors.hpp"
#include "gpdkit/morphism.hpp"
#include "gpdkit/ssa.hpp"

namespace gpdkit {

/// A derived groupoid whose elements are pairs, re-indexed densely. For the
/// left product X |><| H an element is (x, h); for the right product
/// G |><| X it is (t, x). `pairs[id]` recovers the pair; `id_of` inverts it.
struct ProductGroupoid {
  GpdPtr base;
  std::vector<std::pair<ElemId, ElemId>> pairs;
  std::unordered_map<int64_t, ElemId> index;
  int second_stride = 0;  // for key packing

  ElemId id_of(ElemId first, ElemId second) const {
    auto it = index.find(static_cast<int64_t>(first) * second_stride + second);
    if (it == index.end())
      throw StructureError("pair is not an element of the product groupoid");
    return it->second;
  }
  bool has_pair(ElemId first, ElemId second) const {
    return index.count(static_cast<int64_t>(first) * second_stride + second) > 0;
  }
  std::pair<ElemId, ElemId> pair_of(ElemId e) const { return pairs[e]; }
};

/// Orbit groupoid: elements are orbit classes, canonicalized by their
/// minimal-id representative. class_map sends X elements to class ids.
struct OrbitGroupoid {
  GpdPtr base;
  std::vector<ElemId> class_map;  // X element -> class id
  std::vector<ElemId> class_rep;  // class id -> minimal representative in X
};

class NotFreeError : public StructureError {
 public:
  NotFreeError(ElemId h, ElemId x)
      : StructureError("action is not free: element " + std::to_string(h) +
                       " fixes " + std::to_string(x)),
        h(h), x(x) {}
  ElemId h, x;
};

/// The self-similar product X |><| H of a left action.
ProductGroupoid zs_product_left(const LeftSelfSimilarAction& a);

/// The self-similar product G |><| X of a right action.
ProductGroupoid zs_product_right(const RightSelfSimilarAction& a);

/// Orbit groupoid H\X of a free left action; throws NotFreeError otherwise.
/// The class product is verified representative-independent, exhaustively.
OrbitGroupoid orbit_groupoid_left(const LeftSelfSimilarAction& a);

/// Orbit groupoid X/G of a free right action.
OrbitGroupoid orbit_groupoid_right(const RightSelfSimilarAction& a);

/// Left H-action descended to X/G (momentum rho~(xG) = rho(x)); the returned
/// action's X is `orbit.base`. Representative independence is enforced.
LeftSelfSimilarAction quotient_left_action(const ParaEquivalence& p,
                                           const OrbitGroupoid& x_mod_g);

/// Right G-action descended to H\X.
RightSelfSimilarAction quotient_right_action(const ParaEquivalence& p,
                                             const OrbitGroupoid& h_mod_x);

/// The matched-pair lift: Htilde = H |x X^(0) (transformation groupoid of the
/// restricted unit action) together with the lifted action pair on X, which
/// has momentum map equal to the range map.
struct MatchedPairLift {
  ProductGroupoid htilde;          // pairs (h, u); base is the groupoid Htilde
  LeftSelfSimilarAction lifted;    // Htilde acting on X
};

MatchedPairLift matched_pair_lift(const LeftSelfSimilarAction& a);

/// The isomorphism X |><| Htilde -> X |><| H, (x,(h,u)) -> (x,h), verified.
Isomorphism matched_lift_iso(const LeftSelfSimilarAction& a,
                             const MatchedPairLift& lift);

/// Skew-product self-similar action: for a homomorphism c from g to a group
/// h, the group acts on g(c) by k |> (a,k') = (a, k' k^-1) with restriction
/// k |< (a,k') = c(a)^-1 k c(a).
LeftSelfSimilarAction skew_ss_action(const GpdPtr& g, const GpdPtr& h,
                                     const std::vector<ElemId>& c);

}  // namespace gpdkit
