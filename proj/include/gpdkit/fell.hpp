#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>

#include "gpdkit/equiv.hpp"

namespace gpdkit {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

/// Relative comparison with an absolute floor.
inline bool approx_zero(double value, double scale, double rel = 1e-9,
                        double abs = 1e-12) {
  return value <= std::max(rel * scale, abs);
}

double op_norm(const MatC& m);  // largest singular value

/// Fell bundle in the matrix-fiber model: per arrow an explicit basis of a
/// linear subspace of complex matrices. For bundles entered directly the
/// multiplication is matrix multiplication and the involution is the
/// conjugate transpose; derived bundles (products, quotients) carry their
/// structure maps in mul_fn / star_fn, expressed on the same carriers.
class FellBundle {
 public:
  GpdPtr base;
  std::vector<std::vector<MatC>> fibers;  // per arrow id
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;

  std::function<MatC(ElemId, const MatC&, ElemId, const MatC&)> mul_fn;
  std::function<MatC(ElemId, const MatC&)> star_fn;

  bool plain() const { return !mul_fn && !star_fn; }

  MatC mul(ElemId x, const MatC& b, ElemId y, const MatC& c) const {
    return mul_fn ? mul_fn(x, b, y, c) : MatC(b * c);
  }
  MatC star(ElemId x, const MatC& b) const {
    return star_fn ? star_fn(x, b) : MatC(b.adjoint());
  }

  int fiber_dim(ElemId x) const { return static_cast<int>(fibers[x].size()); }

  /// Least-squares membership test against the fiber basis.
  bool contains(ElemId x, const MatC& m) const;
  /// Coefficients in the fiber basis; nullopt when m is not in the span.
  std::optional<VecC> coefficients(ElemId x, const MatC& m) const;
};

using FellBundlePtr = std::shared_ptr<const FellBundle>;

/// The one-dimensional bundle: every fiber is C.
FellBundle line_bundle(GpdPtr g);

/// Per-unit matrix sizes and *-subalgebras (empty basis list = the full
/// matrix algebra of that size).
struct UnitCStarData {
  std::vector<int> dim;                    // indexed by unit element id
  std::vector<std::vector<MatC>> algebra;  // optional; indexed by unit id
  std::vector<MatC> algebra_basis(ElemId unit) const;
};

/// The Fell bundle of a groupoid dynamical system with inner structure maps:
/// alpha[k] is a unitary d(r(k)) x d(s(k)) with U_{k1} U_{k2} = U_{k1 k2}.
/// The element (a,k) is realized as the matrix a * U_k, so multiplication
/// and involution are the plain matrix operations.
FellBundle crossed_product_bundle(const UnitCStarData& A, GpdPtr K,
                                  const std::vector<MatC>& alpha);

/// F1-F10 on basis tuples, within tolerance. Saturation is reported by
/// is_saturated, not here.
ValidationReport validate_fell(const FellBundle& b);

bool is_saturated(const FellBundle& b);

/// Structure constants of a composable arrow pair: tensor[i][j] =
/// coefficients of basis_i * basis_j in the basis of the target fiber.
std::vector<std::vector<VecC>> structure_constants(const FellBundle& b,
                                                   ElemId x, ElemId y);

/// A left self-similar H-action on a bundle: per (h, x) the images of the
/// S_x basis vectors inside S_{h|>x}.
class FellLeftAction {
 public:
  GpdPtr H;
  FellBundlePtr B;
  LeftSelfSimilarAction underlying;
  std::unordered_map<int64_t, std::vector<MatC>> images;

  int64_t key(ElemId h, ElemId x) const {
    return static_cast<int64_t>(h) * B->base->size() + x;
  }
  void set_images(ElemId h, ElemId x, std::vector<MatC> imgs) {
    images[key(h, x)] = std::move(imgs);
  }
  const std::vector<MatC>& images_of(ElemId h, ElemId x) const;

  /// Apply h |>_B to a matrix in S_x.
  MatC apply(ElemId h, ElemId x, const MatC& m) const;
};

using FellLeftActionPtr = std::shared_ptr<const FellLeftAction>;

class FellRightAction {
 public:
  GpdPtr G;
  FellBundlePtr B;
  RightSelfSimilarAction underlying;
  std::unordered_map<int64_t, std::vector<MatC>> images;

  int64_t key(ElemId x, ElemId t) const {
    return static_cast<int64_t>(x) * G->size() + t;
  }
  void set_images(ElemId x, ElemId t, std::vector<MatC> imgs) {
    images[key(x, t)] = std::move(imgs);
  }
  const std::vector<MatC>& images_of(ElemId x, ElemId t) const;

  MatC apply(ElemId x, ElemId t, const MatC& m) const;
};

using FellRightActionPtr = std::shared_ptr<const FellRightAction>;

/// The identity-on-fibers action of the trivial group on a bundle; the
/// underlying groupoid-level action is passed in so callers can share it
/// with groupoid-level certification.
FellLeftAction trivial_fell_left_action(FellBundlePtr b,
                                        LeftSelfSimilarAction underlying);
FellRightAction trivial_fell_right_action(FellBundlePtr b,
                                          RightSelfSimilarAction underlying);

/// B1-B5 plus fiberwise isometry, each on basis sweeps within tolerance.
ValidationReport check_fell_left_action(const FellLeftAction& a);
ValidationReport check_fell_right_action(const FellRightAction& a);

/// Product bundle B |><| H over X |><| H. The fiber over (x,h) is carried by
/// S_x; multiplication (a,h)(b,k) = (a [h|>_B b], ...) and involution
/// (b,h)* = (h^-1 |>_B b*, ...) act through the carrier.
FellBundle product_bundle_left(FellLeftActionPtr a, const ProductGroupoid& prod);

/// Product bundle G |><| B over G |><| X; the fiber over (t,x) is carried by
/// S_x.
FellBundle product_bundle_right(FellRightActionPtr a, const ProductGroupoid& prod);

/// Quotient bundle H\B over H\X: the fiber over a class is carried by the
/// fiber of B at the canonical representative; everything else is
/// transported along the action.
struct QuotientBundleLeft {
  FellBundle bundle;
  OrbitGroupoid orbit;
  FellLeftActionPtr action;
  std::vector<ElemId> transport_h;           // x -> h with h |> x = rep
  std::vector<std::vector<ElemId>> members;  // class -> member arrows

  /// Class and representative-fiber matrix of an element m in S_x.
  std::pair<ElemId, MatC> project(ElemId x, const MatC& m) const;
};

std::shared_ptr<QuotientBundleLeft> quotient_bundle_left(
    FellLeftActionPtr a, const OrbitGroupoid& orbit);

struct QuotientBundleRight {
  FellBundle bundle;
  OrbitGroupoid orbit;
  FellRightActionPtr action;
  std::vector<ElemId> transport_t;  // x -> t with x <| t = rep
  std::vector<std::vector<ElemId>> members;

  std::pair<ElemId, MatC> project(ElemId x, const MatC& m) const;
};

std::shared_ptr<QuotientBundleRight> quotient_bundle_right(
    FellRightActionPtr a, const OrbitGroupoid& orbit);

/// Everything the imprimitivity theorem requires: a certified groupoid-level
/// para-equivalence (rebuilt from the bundle actions' underlying data), a
/// saturated bundle, both bundle-action axiom suites, and BC1 on basis
/// elements (BC2, BC3 are derived and re-checked at the groupoid level).
struct FellAssumptions {
  ParaEquivalence para;
  FellBundlePtr B;
  FellLeftActionPtr left;
  FellRightActionPtr right;
  bool certified = false;
  ValidationReport report;
};

FellAssumptions certify_fell_assumptions(FellBundlePtr B, FellLeftActionPtr left,
                                         FellRightActionPtr right);

/// Quotient actions: the right G-action on H\B and the left H-action on B/G.
struct QuotientFellActions {
  std::shared_ptr<QuotientBundleLeft> h_mod_b;   // H\B
  std::shared_ptr<QuotientBundleRight> b_mod_g;  // B/G
  FellRightActionPtr right_on_quotient;          // G on H\B
  FellLeftActionPtr left_on_quotient;            // H on B/G
};

QuotientFellActions quotient_fell_actions(const FellAssumptions& assm,
                                          const EquivalenceWitness& w);

/// The bimodule of the imprimitivity theorem: A = (B/G) |><| H acts on the
/// left of B, C = G |><| (H\B) on the right, with A- and C-valued inner
/// products. Matrices handed to the evaluators live in the canonical
/// carrier fibers (quotient representatives for A/C elements).
struct BimoduleWitness {
  FellAssumptions assm;
  EquivalenceWitness gpd;
  QuotientFellActions quot;
  FellBundlePtr A_bundle;  // over gpd.A.base
  FellBundlePtr C_bundle;  // over gpd.C.base

  /// (Theta, h) . b; the resulting arrow is gpd.left_act(a_arrow, y).
  MatC left_act(ElemId a_arrow, const MatC& a_m, ElemId y, const MatC& b_m) const;
  /// b . (t, Xi); the resulting arrow is gpd.right_act(y, c_arrow).
  MatC right_act(ElemId y, const MatC& b_m, ElemId c_arrow, const MatC& c_m) const;

  /// <a,b>_A for a in S_x, b in S_y with frak_s(x) = frak_s(y).
  std::pair<ElemId, MatC> lip(ElemId x, const MatC& a, ElemId y,
                              const MatC& b) const;
  /// <a,b>_C for frak_r(x) = frak_r(y).
  std::pair<ElemId, MatC> rip(ElemId x, const MatC& a, ElemId y,
                              const MatC& b) const;

  /// Single-cell corruption hook for mutation testing: when active, the
  /// matrix part of lip at the arrow pair (x, y) is replaced.
  struct LipOverride {
    bool active = false;
    ElemId x = -1, y = -1;
    MatC matrix;
  };
  LipOverride lip_override;
};

BimoduleWitness build_bimodule(const FellAssumptions& assm);

/// FE1 (both actions, associativity, norm bounds, commutation), FE2.a-d,
/// FE3 (per-fiber imprimitivity: fullness of both inner products and norm
/// compatibility), all on basis sweeps within the bundle tolerance.
ValidationReport verify_bimodule(const BimoduleWitness& w);

}  // namespace gpdkit
