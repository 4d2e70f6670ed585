#include "gpdkit/morphism.hpp"

#include <algorithm>
#include <map>

namespace gpdkit {

ValidationReport GroupoidMorphism::validate() const {
  ValidationReport rep;
  const auto& d = *dom;
  const auto& c = *cod;
  if (static_cast<int>(map.size()) != d.size())
    throw StructureError("morphism map size mismatch");
  for (ElemId e = 0; e < d.size(); ++e)
    if (map[e] < 0 || map[e] >= c.size())
      throw StructureError("morphism image out of range");

  bool ok = true;
  for (ElemId e = 0; e < d.size() && ok; ++e) {
    if (d.is_unit(e) && !c.is_unit(map[e])) {
      rep.add_fail("morphism-units", {e});
      ok = false;
    } else if (c.src(map[e]) != map[d.src(e)] || c.rng(map[e]) != map[d.rng(e)]) {
      rep.add_fail("morphism-src-rng", {e});
      ok = false;
    } else if (c.inv(map[e]) != map[d.inv(e)]) {
      rep.add_fail("morphism-inv", {e});
      ok = false;
    }
  }
  if (ok) rep.add_pass("morphism-structure", d.size());

  long long pairs = 0;
  bool mok = true;
  for (ElemId a = 0; a < d.size() && mok; ++a)
    for (ElemId b : d.arrows_into(d.src(a))) {
      auto p = d.mul(a, b);
      if (!p) continue;
      ++pairs;
      auto q = c.mul(map[a], map[b]);
      if (!q || *q != map[*p]) {
        rep.add_fail("morphism-mul", {a, b});
        mok = false;
        break;
      }
    }
  if (mok) rep.add_pass("morphism-mul", pairs);
  return rep;
}

bool GroupoidMorphism::is_bijection() const {
  if (dom->size() != cod->size()) return false;
  std::vector<bool> hit(cod->size(), false);
  for (ElemId e : map) {
    if (hit[e]) return false;
    hit[e] = true;
  }
  return true;
}

namespace {

// Invariant fingerprint of a unit: (in-degree, out-degree, isotropy size,
// sorted multiset of (src-fiber sizes of incoming arrows)).
struct UnitSig {
  int in_deg, out_deg, iso;
  std::vector<int> profile;
  bool operator==(const UnitSig&) const = default;
  bool operator<(const UnitSig& o) const {
    return std::tie(in_deg, out_deg, iso, profile) <
           std::tie(o.in_deg, o.out_deg, o.iso, o.profile);
  }
};

UnitSig unit_sig(const FiniteGroupoid& g, ElemId u) {
  UnitSig s;
  s.in_deg = static_cast<int>(g.arrows_into(u).size());
  s.out_deg = static_cast<int>(g.arrows_out_of(u).size());
  s.iso = 0;
  for (ElemId e : g.arrows_into(u))
    if (g.src(e) == u) ++s.iso;
  for (ElemId e : g.arrows_into(u))
    s.profile.push_back(static_cast<int>(g.arrows_out_of(g.src(e)).size()));
  std::sort(s.profile.begin(), s.profile.end());
  return s;
}

struct IsoSearch {
  const FiniteGroupoid& a;
  const FiniteGroupoid& b;
  std::vector<ElemId> map;       // a -> b, -1 unassigned
  std::vector<bool> used;        // b ids already taken
  std::vector<std::vector<std::pair<ElemId, ElemId>>> factors;  // p -> (u,v)

  IsoSearch(const FiniteGroupoid& a_, const FiniteGroupoid& b_)
      : a(a_), b(b_), map(a_.size(), -1), used(b_.size(), false),
        factors(a_.size()) {
    for (ElemId u = 0; u < a.size(); ++u)
      for (ElemId v : a.arrows_into(a.src(u)))
        if (auto p = a.mul(u, v)) factors[*p].emplace_back(u, v);
  }

  bool compatible(ElemId e, ElemId f) const {
    if (a.is_unit(e) != b.is_unit(f)) return false;
    ElemId ms = map[a.src(e)], mr = map[a.rng(e)];
    if (ms != -1 && b.src(f) != ms) return false;
    if (mr != -1 && b.rng(f) != mr) return false;
    ElemId mi = map[a.inv(e)];
    if (mi != -1 && b.inv(f) != mi) return false;
    // products with already-assigned partners must be preserved
    for (ElemId x = 0; x < a.size(); ++x) {
      if (map[x] == -1) continue;
      if (a.composable(e, x)) {
        auto p = a.mul(e, x);
        auto q = b.mul(f, map[x]);
        if (p.has_value() != q.has_value()) return false;
        if (p && map[*p] != -1 && map[*p] != *q) return false;
      }
      if (a.composable(x, e)) {
        auto p = a.mul(x, e);
        auto q = b.mul(map[x], f);
        if (p.has_value() != q.has_value()) return false;
        if (p && map[*p] != -1 && map[*p] != *q) return false;
      }
    }
    // assigned factorizations landing on e must map to factorizations of f
    for (auto [u, v] : factors[e]) {
      if (map[u] == -1 || map[v] == -1) continue;
      auto q = b.mul(map[u], map[v]);
      if (!q || *q != f) return false;
    }
    return true;
  }

  bool extend(ElemId e) {
    while (e < a.size() && map[e] != -1) ++e;
    if (e == a.size()) return true;
    for (ElemId f = 0; f < b.size(); ++f) {
      if (used[f] || !compatible(e, f)) continue;
      map[e] = f;
      used[f] = true;
      if (extend(e + 1)) return true;
      map[e] = -1;
      used[f] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<Isomorphism> iso_check(GpdPtr a, GpdPtr b) {
  if (a->size() != b->size()) return std::nullopt;
  if (a->units().size() != b->units().size()) return std::nullopt;

  // cheap invariant screen: multisets of unit signatures must agree
  std::vector<UnitSig> sa, sb;
  for (ElemId u : a->units()) sa.push_back(unit_sig(*a, u));
  for (ElemId u : b->units()) sb.push_back(unit_sig(*b, u));
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;

  IsoSearch search(*a, *b);
  if (!search.extend(0)) return std::nullopt;
  Isomorphism iso{a, b, search.map};
  if (!iso.is_isomorphism())
    throw StructureError("iso_check produced an invalid map");
  return iso;
}

}  // namespace gpdkit
