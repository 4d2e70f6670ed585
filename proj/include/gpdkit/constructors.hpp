#pragma once

#include <functional>

#include "gpdkit/groupoid.hpp"
#include "gpdkit/perm.hpp"

namespace gpdkit {

/// n disjoint units (a finite set viewed as a groupoid).
GpdPtr trivial_groupoid(int n_points);

/// One-object groupoid of Z/n.
GpdPtr cyclic_group(int n);

/// One-object groupoid from an explicit group multiplication table.
/// table[a][b] = a*b; unit must be element 0.
GpdPtr group_from_table(const std::vector<std::vector<int>>& table,
                        const std::vector<std::string>& labels = {});

/// One-object groupoid on a closed set of permutations (sorted, id 0 = identity).
GpdPtr group_from_perms(const std::vector<perm::Perm>& elements,
                        const std::vector<std::string>& labels = {});

/// Pair groupoid on n points: arrows (p,q), id = p*n+q.
GpdPtr pair_groupoid(int n);

/// Transformation groupoid of a left action of a one-object groupoid on a
/// finite set. Element (t,x) has id t*n_points + x; the convention is
/// r(t,x) = t*x and s(t,x) = x. `act(t, x)` evaluates the action.
GpdPtr transformation_groupoid(const GpdPtr& grp, int n_points,
                               const std::function<int(ElemId, int)>& act,
                               const std::vector<std::string>& point_labels = {});

/// Skew-product groupoid g(c) for a homomorphism c from g to a one-object
/// groupoid h: elements (a, k) with id a*|h| + k and operations
/// (a,k)(a', k c(a)) = (aa', k), (a,k)^-1 = (a^-1, k c(a)).
/// Throws StructureError when c is not a homomorphism.
GpdPtr skew_product_groupoid(const GpdPtr& g, const GpdPtr& h,
                             const std::vector<ElemId>& c);

}  // namespace gpdkit
