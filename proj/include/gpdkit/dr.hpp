#pragma once

#include "gpdkit/ssa.hpp"

namespace gpdkit {

/// A pair of commuting surjections S, T of a finite set (hence bijections).
/// *-commuting: whenever Sx = Ty there is a unique z with Tz = x and Sz = y.
struct StarCommutingSystem {
  int n = 0;
  std::vector<int> S, T;
};

ValidationReport check_star_commuting(const StarCommutingSystem& sys);

/// A degree-truncated Deaconu-Renault groupoid for a single bijection:
/// elements (x, d, map^d x) for |d| <= k_bound; compositions whose degree
/// leaves the window are declared in `excluded` rather than silently
/// dropped, and the report records how many were cut.
struct DrGroupoid {
  GpdPtr base;
  int k_bound = 0;
  std::vector<std::tuple<int, int, int>> elems;  // (x, d, y)
  std::vector<std::pair<ElemId, ElemId>> excluded;
  ValidationReport report;

  ElemId id_of(int x, int d) const;  // y is determined by (x, d)
};

DrGroupoid dr_groupoid(const std::vector<int>& map, int n, int k_bound);

/// dr_groupoid for the S component of the system.
DrGroupoid dr_groupoid(const StarCommutingSystem& sys, int k_bound);

/// The action of H = (T-groupoid) on X = (S-groupoid):
///   (x,a,y) |> (y,b,z) = (x,b,w),  (x,a,y) |< (y,b,z) = (w,a,z),
/// where w is the unique point with S-power and T-power compatibility.
struct DrAction {
  DrGroupoid H, X;
  LeftSelfSimilarAction action;
  ValidationReport report;  // includes the fill-in consistency sweep
};

DrAction dr_ss_action(const StarCommutingSystem& sys, int k_bound);

/// On a finite set every bijection T is periodic, so the action is never
/// free. The witness (x, k, x) with k = order(T) fixes the unit (x, 0, x).
struct DrFreenessResult {
  bool free = false;
  long long period = 0;  // minimal k >= 1 with T^k = id
  int point = 0;
  bool witness_in_window = false;
  ValidationReport report;
};

DrFreenessResult dr_freeness(const StarCommutingSystem& sys, int k_bound);

}  // namespace gpdkit
