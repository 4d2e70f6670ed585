#pragma once

#include "gpdkit/construct.hpp"
#include "gpdkit/dr.hpp"
#include "gpdkit/fell.hpp"

namespace gpdkit::fixtures {

/// Internal Zappa-Szep decomposition of a one-object groupoid K = G.H with
/// G and H subgroups meeting only in the unit: every product h t decomposes
/// uniquely as (h.t)(h|t) with h.t in G and h|t in H.
struct ZsDecomposition {
  GpdPtr K;
  std::vector<ElemId> g_sub, h_sub;           // subgroup element ids in K
  std::unordered_map<int64_t, ElemId> act;    // (h,t) -> h.t   (in K ids)
  std::unordered_map<int64_t, ElemId> restr;  // (h,t) -> h|t

  ElemId act_of(ElemId h, ElemId t) const;
  ElemId restr_of(ElemId h, ElemId t) const;
};

/// Brute-force decomposition tables; throws StructureError unless G_sub and
/// H_sub are subgroups with G.H = K and trivial intersection.
ZsDecomposition elaborate_zs_decomposition(const GpdPtr& K,
                                           const std::vector<ElemId>& g_sub,
                                           const std::vector<ElemId>& h_sub);

/// The S4 = C3 |><| D4 worked example: K = S4 with a = (123), r = (1234),
/// f = (13), G = <a>, H = <r,f>; X = G |x S4 under left translation with
/// the induced self-similar D4-action.
struct S4Fixture {
  GpdPtr S4;            // one-object groupoid, 24 elements, id 0 = e
  GpdPtr G;             // C3 as a standalone group, labels e, a, a2
  GpdPtr H;             // D4 as a standalone group, labels e, r, ..., r3f
  std::vector<ElemId> g_embed, h_embed;  // standalone id -> S4 id
  ZsDecomposition zs;
  GpdPtr X;                     // C3 |x S4 transformation groupoid (72 arrows)
  LeftSelfSimilarAction action;  // D4 on X
};

const S4Fixture& s4_fixture();

/// S4 |x S4 under left translation: 576 arrows, 24 units.
GpdPtr s4_on_s4();

/// C3 |x C3 under left translation: 9 arrows, 3 units.
GpdPtr c3_on_c3();

/// Transformation groupoid of a group acting on itself by left translation.
GpdPtr left_translation_groupoid(const GpdPtr& group);

/// The Example-style action of H on G |x P for a group K = G |><| H acting
/// on the point set P: h |> (t,p) = (h.t, h|t * p), h |< (t,p) = h|t.
LeftSelfSimilarAction zs_action_on_transformation_groupoid(
    const ZsDecomposition& zs, int n_points,
    const std::function<int(ElemId, int)>& k_act,
    const std::vector<std::string>& point_labels = {});

/// Small groupoids (all of size <= 50) for corpus-quantified properties.
std::vector<GpdPtr> groupoid_corpus();

/// Valid self-similar left actions: trivial-group and unit-groupoid actions
/// over the corpus, skew actions, decomposition-driven actions, and seeded
/// random matched pairs. At least 20 entries.
std::vector<LeftSelfSimilarAction> left_action_corpus();

/// Right actions obtained by mirroring a few of the left fixtures.
std::vector<RightSelfSimilarAction> right_action_corpus();

/// Two-sided fixture: X = pair groupoid on Z/4, H = G = Z/2 translating by
/// +2 on both legs, trivial restrictions; free, proper, in tune.
ParaEquivalence semidirect_two_sided_fixture();

/// Mirror of a left action along inversion: x <| t := (t^-1 |> x^-1)^-1,
/// x |< t := (t^-1 |< x^-1)^-1. Used to build right fixtures.
RightSelfSimilarAction mirror_action(const LeftSelfSimilarAction& a);

/// One-sided Fell data over the S4 fixture: the line bundle with the
/// identity fiber maps.
FellAssumptions s4_line_bundle_assumptions();

/// Crossed-product fixture: X = skew product of Z/4 by Z/2, H = Z/2 with
/// the skew action, fibers M_2 twisted by a strict unitary cocycle.
struct CrossedProductFixture {
  LeftSelfSimilarAction action;   // H on X
  ProductGroupoid prod;           // X |><| H
  FellBundlePtr B;                // bundle over X
  FellBundlePtr big;              // bundle over X |><| H (the comparison)
  FellAssumptions assumptions;    // H acts on B, trivial right action
};

CrossedProductFixture crossed_product_fixture();

/// Y = Z/6 with S = +2 and T = +3 (commuting, hence *-commuting).
StarCommutingSystem z6_system();

}  // namespace gpdkit::fixtures
