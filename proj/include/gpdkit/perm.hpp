#pragma once

#include <string>
#include <vector>

namespace gpdkit {

/// Permutations of {0..n-1} in one-line notation (image vector).
/// Composition is right-to-left: (a*b)(x) = a(b(x)).
namespace perm {

using Perm = std::vector<int>;

Perm identity(int n);
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
bool is_perm(const Perm& a);

/// Closure of the generators under composition, sorted lexicographically
/// (so the identity is always element 0).
std::vector<Perm> generate(int n, const std::vector<Perm>& gens);

/// lcm of the cycle lengths = order of the permutation.
long long order(const Perm& a);

/// Cycle lengths, shortest first.
std::vector<int> cycle_type(const Perm& a);

/// Parses "(0 2 4)(1 3 5)" over {0..n-1}; fixed points may be omitted.
Perm parse_cycles(const std::string& text, int n);
std::string format_cycles(const Perm& a);

}  // namespace perm
}  // namespace gpdkit
