#include "gpdkit/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace gpdkit {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

GroupoidAlgebraSummary algebra_summary(const FiniteGroupoid& g) {
  GroupoidAlgebraSummary s;

  UnionFind uf(g.size());
  for (ElemId e = 0; e < g.size(); ++e) uf.unite(g.src(e), g.rng(e));

  // unit-orbit sizes keyed by the component's minimal unit id
  std::map<int, int> comp_size;
  for (ElemId u : g.units()) comp_size[uf.find(u)] += 1;
  std::map<int, int> by_min_unit;
  for (ElemId u : g.units()) {
    int root = uf.find(u);
    auto it = by_min_unit.find(root);
    if (it == by_min_unit.end()) by_min_unit[root] = u;
    else it->second = std::min(it->second, static_cast<int>(u));
  }
  std::map<int, int> ordered;  // min unit id -> size
  for (auto [root, mn] : by_min_unit) ordered[mn] = comp_size[root];
  for (auto [mn, size] : ordered) s.components.push_back(size);

  s.principal = true;
  for (ElemId e = 0; e < g.size(); ++e)
    if (!g.is_unit(e) && g.src(e) == g.rng(e)) {
      s.principal = false;
      s.isotropy_witness = {e};
      break;
    }
  if (s.principal) s.block_dims = s.components;
  return s;
}

bool morita_compatible(const GroupoidAlgebraSummary& a,
                       const GroupoidAlgebraSummary& b) {
  if (!a.principal || !b.principal)
    throw StructureError("morita_compatible requires principal summaries");
  return a.block_dims.size() == b.block_dims.size();
}

std::vector<long long> convolution_product(const FiniteGroupoid& g,
                                           const std::vector<long long>& f1,
                                           const std::vector<long long>& f2) {
  std::vector<long long> out(g.size(), 0);
  for (ElemId y = 0; y < g.size(); ++y) {
    if (f1[y] == 0) continue;
    for (ElemId z : g.arrows_into(g.src(y))) {
      if (f2[z] == 0) continue;
      if (auto x = g.mul(y, z)) out[*x] += f1[y] * f2[z];
    }
  }
  return out;
}

ValidationReport verify_matrix_units(const FiniteGroupoid& g,
                                     long long max_pairs) {
  ValidationReport rep;
  auto s = algebra_summary(g);
  if (!s.principal) {
    rep.add_fail("matrix-units", s.isotropy_witness, "groupoid is not principal");
    return rep;
  }

  // principality in arrow form: at most one arrow between any two units
  std::map<std::pair<ElemId, ElemId>, ElemId> arrow;
  for (ElemId e = 0; e < g.size(); ++e) {
    auto key = std::make_pair(g.rng(e), g.src(e));
    auto [it, ins] = arrow.emplace(key, e);
    if (!ins) {
      rep.add_fail("matrix-units", {it->second, e}, "parallel arrows");
      return rep;
    }
  }

  auto indicator = [&](ElemId e) {
    std::vector<long long> f(g.size(), 0);
    f[e] = 1;
    return f;
  };
  auto check_triple = [&](ElemId u, ElemId v, ElemId wu) -> bool {
    auto iuv = arrow.find({u, v});
    auto ivw = arrow.find({v, wu});
    auto iuw = arrow.find({u, wu});
    if (iuv == arrow.end() || ivw == arrow.end()) return true;
    if (iuw == arrow.end()) return false;
    auto prod = convolution_product(g, indicator(iuv->second), indicator(ivw->second));
    for (ElemId e = 0; e < g.size(); ++e)
      if (prod[e] != (e == iuw->second ? 1 : 0)) return false;
    return true;
  };

  const auto& units = g.units();
  long long total =
      static_cast<long long>(units.size()) * units.size() * units.size();
  long long cnt = 0;
  if (total <= max_pairs) {
    for (ElemId u : units)
      for (ElemId v : units)
        for (ElemId wu : units) {
          ++cnt;
          if (!check_triple(u, v, wu)) {
            rep.add_fail("matrix-units", {u, v, wu});
            return rep;
          }
        }
  } else {
    std::mt19937 rng(20240811u);
    std::uniform_int_distribution<size_t> pick(0, units.size() - 1);
    for (int i = 0; i < 512; ++i) {
      ElemId u = units[pick(rng)], v = units[pick(rng)], wu = units[pick(rng)];
      ++cnt;
      if (!check_triple(u, v, wu)) {
        rep.add_fail("matrix-units", {u, v, wu});
        return rep;
      }
    }
  }
  rep.add_pass("matrix-units", cnt);
  return rep;
}

}  // namespace gpdkit
