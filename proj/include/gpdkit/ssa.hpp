#pragma once

#include <functional>
#include <optional>
#include <unordered_map>

#include "gpdkit/groupoid.hpp"

namespace gpdkit {

/// A self-similar left action of a groupoid H on a groupoid X: a surjection
/// rho0 from X-units onto H-units anchors the momentum map rho = rho0 o rng,
/// and the two partial maps
///   act   : (h,x) -> h |> x in X     ("H acts on X")
///   restr : (h,x) -> h |< x in H     ("X restricts H")
/// are defined exactly on {(h,x) : s_H(h) = rho(x)}.
class LeftSelfSimilarAction {
 public:
  LeftSelfSimilarAction() = default;
  LeftSelfSimilarAction(GpdPtr H, GpdPtr X, std::vector<ElemId> rho0);

  const GpdPtr& H() const { return H_; }
  const GpdPtr& X() const { return X_; }

  ElemId rho0(ElemId x_unit) const { return rho0_[x_unit]; }
  ElemId rho(ElemId x) const { return rho0_[X_->rng(x)]; }
  bool in_domain(ElemId h, ElemId x) const { return H_->src(h) == rho(x); }

  void set_act(ElemId h, ElemId x, ElemId y);
  void set_restr(ElemId h, ElemId x, ElemId k);

  std::optional<ElemId> act_opt(ElemId h, ElemId x) const;
  std::optional<ElemId> restr_opt(ElemId h, ElemId x) const;
  ElemId act(ElemId h, ElemId x) const;    // throws when undefined
  ElemId restr(ElemId h, ElemId x) const;  // throws when undefined

  long long act_table_size() const { return static_cast<long long>(act_.size()); }

  /// Orbit H |> x as a sorted element list.
  std::vector<ElemId> orbit(ElemId x) const;

 private:
  int64_t key(ElemId h, ElemId x) const {
    return static_cast<int64_t>(h) * X_->size() + x;
  }

  GpdPtr H_, X_;
  std::vector<ElemId> rho0_;
  std::unordered_map<int64_t, ElemId> act_, restr_;
};

/// Mirror data: G acts on the right of X. sigma = sigma0 o src, and
///   act   : (x,t) -> x <| t in X
///   restr : (x,t) -> x |< t in G
/// are defined exactly on {(x,t) : sigma(x) = r_G(t)}.
class RightSelfSimilarAction {
 public:
  RightSelfSimilarAction() = default;
  RightSelfSimilarAction(GpdPtr G, GpdPtr X, std::vector<ElemId> sigma0);

  const GpdPtr& G() const { return G_; }
  const GpdPtr& X() const { return X_; }

  ElemId sigma0(ElemId x_unit) const { return sigma0_[x_unit]; }
  ElemId sigma(ElemId x) const { return sigma0_[X_->src(x)]; }
  bool in_domain(ElemId x, ElemId t) const { return sigma(x) == G_->rng(t); }

  void set_act(ElemId x, ElemId t, ElemId y);
  void set_restr(ElemId x, ElemId t, ElemId s);

  std::optional<ElemId> act_opt(ElemId x, ElemId t) const;
  std::optional<ElemId> restr_opt(ElemId x, ElemId t) const;
  ElemId act(ElemId x, ElemId t) const;
  ElemId restr(ElemId x, ElemId t) const;

  /// Orbit x <| G as a sorted element list.
  std::vector<ElemId> orbit(ElemId x) const;

 private:
  int64_t key(ElemId x, ElemId t) const {
    return static_cast<int64_t>(x) * G_->size() + t;
  }

  GpdPtr G_, X_;
  std::vector<ElemId> sigma0_;
  std::unordered_map<int64_t, ElemId> act_, restr_;
};

struct FreenessResult {
  bool free = false;
  ElemId h = -1, x = -1;  // witness: non-unit h with h |> x = x
  ValidationReport report;
};

/// Axiom suite for left actions: domain exactness, rho0 surjectivity, and
/// L1-L6 by enumeration, each reported with its first witness.
ValidationReport check_left_axioms(const LeftSelfSimilarAction& a);

/// Mirror suite: R1-R6.
ValidationReport check_right_axioms(const RightSelfSimilarAction& a);

/// L7-L10. These are theorems of L1-L6, so a failure here means the caller
/// fed in tables that do not satisfy the axioms (or an implementation bug).
ValidationReport verify_derived_left_laws(const LeftSelfSimilarAction& a);

/// R7-R10.
ValidationReport verify_derived_right_laws(const RightSelfSimilarAction& a);

FreenessResult is_free(const LeftSelfSimilarAction& a);
FreenessResult is_free_right(const RightSelfSimilarAction& a);

/// Free actions identify orbits uniquely by their range: H|>x = H|>x' and
/// r(x) = r(x') force x = x'.
ValidationReport check_unique_orbit_rep(const LeftSelfSimilarAction& a);

/// Counting measure is act-invariant: for (h,u) in the domain with u a unit,
/// x -> h|>x is a bijection from X^u onto X^{h|>u}.
ValidationReport counting_haar_invariance(const LeftSelfSimilarAction& a);
ValidationReport counting_haar_invariance_right(const RightSelfSimilarAction& a);

/// A two-sided package on one X. Certification runs both axiom suites, both
/// freeness checks, and the in-tune conditions C0-C3; properness and open
/// source maps auto-pass in the finite discrete model.
struct ParaEquivalence {
  LeftSelfSimilarAction left;
  RightSelfSimilarAction right;
  bool certified = false;
  ValidationReport report;
};

/// C0-C3 for a candidate pair (same X).
ValidationReport check_in_tune(const LeftSelfSimilarAction& L,
                               const RightSelfSimilarAction& R);

/// Bundles every checker; `certified` iff all pass.
ParaEquivalence certify_para_equivalence(LeftSelfSimilarAction L,
                                         RightSelfSimilarAction R);

/// The trivial right action of the one-element group on X; in tune with
/// every left action, used to reduce one-sided statements to two-sided ones.
RightSelfSimilarAction trivial_right_action(GpdPtr X);

/// The trivial left action of the one-element group on X.
LeftSelfSimilarAction trivial_left_group_action(GpdPtr X);

/// The standard action of the trivial groupoid X^(0) on X:
/// r(x) |> x = x and r(x) |< x = s(x).
LeftSelfSimilarAction unit_groupoid_action(GpdPtr X);

}  // namespace gpdkit
