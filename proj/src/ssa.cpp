#include "gpdkit/ssa.hpp"

#include <algorithm>

namespace gpdkit {

LeftSelfSimilarAction::LeftSelfSimilarAction(GpdPtr H, GpdPtr X,
                                             std::vector<ElemId> rho0)
    : H_(std::move(H)), X_(std::move(X)), rho0_(std::move(rho0)) {
  if (static_cast<int>(rho0_.size()) != X_->size())
    throw StructureError("rho0 must be indexed by X elements (units used)");
  for (ElemId u : X_->units()) {
    ElemId v = rho0_[u];
    if (v < 0 || v >= H_->size() || !H_->is_unit(v))
      throw StructureError("rho0 must map X-units to H-units");
  }
}

void LeftSelfSimilarAction::set_act(ElemId h, ElemId x, ElemId y) {
  act_[key(h, x)] = y;
}
void LeftSelfSimilarAction::set_restr(ElemId h, ElemId x, ElemId k) {
  restr_[key(h, x)] = k;
}

std::optional<ElemId> LeftSelfSimilarAction::act_opt(ElemId h, ElemId x) const {
  auto it = act_.find(key(h, x));
  if (it == act_.end()) return std::nullopt;
  return it->second;
}
std::optional<ElemId> LeftSelfSimilarAction::restr_opt(ElemId h, ElemId x) const {
  auto it = restr_.find(key(h, x));
  if (it == restr_.end()) return std::nullopt;
  return it->second;
}

ElemId LeftSelfSimilarAction::act(ElemId h, ElemId x) const {
  auto v = act_opt(h, x);
  if (!v)
    throw StructureError("act undefined at (" + std::to_string(h) + "," +
                         std::to_string(x) + ")");
  return *v;
}
ElemId LeftSelfSimilarAction::restr(ElemId h, ElemId x) const {
  auto v = restr_opt(h, x);
  if (!v)
    throw StructureError("restr undefined at (" + std::to_string(h) + "," +
                         std::to_string(x) + ")");
  return *v;
}

std::vector<ElemId> LeftSelfSimilarAction::orbit(ElemId x) const {
  std::vector<ElemId> out;
  for (ElemId h = 0; h < H_->size(); ++h)
    if (in_domain(h, x))
      if (auto y = act_opt(h, x)) out.push_back(*y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RightSelfSimilarAction::RightSelfSimilarAction(GpdPtr G, GpdPtr X,
                                               std::vector<ElemId> sigma0)
    : G_(std::move(G)), X_(std::move(X)), sigma0_(std::move(sigma0)) {
  if (static_cast<int>(sigma0_.size()) != X_->size())
    throw StructureError("sigma0 must be indexed by X elements (units used)");
  for (ElemId u : X_->units()) {
    ElemId v = sigma0_[u];
    if (v < 0 || v >= G_->size() || !G_->is_unit(v))
      throw StructureError("sigma0 must map X-units to G-units");
  }
}

void RightSelfSimilarAction::set_act(ElemId x, ElemId t, ElemId y) {
  act_[key(x, t)] = y;
}
void RightSelfSimilarAction::set_restr(ElemId x, ElemId t, ElemId s) {
  restr_[key(x, t)] = s;
}

std::optional<ElemId> RightSelfSimilarAction::act_opt(ElemId x, ElemId t) const {
  auto it = act_.find(key(x, t));
  if (it == act_.end()) return std::nullopt;
  return it->second;
}
std::optional<ElemId> RightSelfSimilarAction::restr_opt(ElemId x, ElemId t) const {
  auto it = restr_.find(key(x, t));
  if (it == restr_.end()) return std::nullopt;
  return it->second;
}

ElemId RightSelfSimilarAction::act(ElemId x, ElemId t) const {
  auto v = act_opt(x, t);
  if (!v)
    throw StructureError("right act undefined at (" + std::to_string(x) + "," +
                         std::to_string(t) + ")");
  return *v;
}
ElemId RightSelfSimilarAction::restr(ElemId x, ElemId t) const {
  auto v = restr_opt(x, t);
  if (!v)
    throw StructureError("right restr undefined at (" + std::to_string(x) +
                         "," + std::to_string(t) + ")");
  return *v;
}

std::vector<ElemId> RightSelfSimilarAction::orbit(ElemId x) const {
  std::vector<ElemId> out;
  for (ElemId t = 0; t < G_->size(); ++t)
    if (in_domain(x, t))
      if (auto y = act_opt(x, t)) out.push_back(*y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

ValidationReport check_left_axioms(const LeftSelfSimilarAction& a) {
  ValidationReport rep;
  const auto& H = *a.H();
  const auto& X = *a.X();

  // rho0 surjectivity onto H-units
  {
    std::vector<bool> hit(H.size(), false);
    for (ElemId u : X.units()) hit[a.rho0(u)] = true;
    bool ok = true;
    for (ElemId v : H.units())
      if (!hit[v]) {
        rep.add_fail("rho0-surjective", {v});
        ok = false;
        break;
      }
    if (ok) rep.add_pass("rho0-surjective", static_cast<long long>(X.units().size()));
  }

  // exact domain of definition
  {
    bool ok = true;
    long long dom = 0;
    for (ElemId h = 0; h < H.size() && ok; ++h)
      for (ElemId x = 0; x < X.size(); ++x) {
        bool in = a.in_domain(h, x);
        bool has_act = a.act_opt(h, x).has_value();
        bool has_restr = a.restr_opt(h, x).has_value();
        if (in) ++dom;
        if (in && (!has_act || !has_restr)) {
          rep.add_fail("domain-exact", {h, x}, "missing on the fiber product");
          ok = false;
          break;
        }
        if (!in && (has_act || has_restr)) {
          rep.add_fail("domain-exact", {h, x}, "defined off the fiber product");
          ok = false;
          break;
        }
      }
    if (ok) rep.add_pass("domain-exact", dom);
    if (!ok) return rep;  // later sweeps assume totality on the domain
  }

  // typing: act lands in X, restr lands in H (table values in range)
  // guaranteed by ElemId storage; nothing to check beyond ids, which the
  // setters cannot validate without context:
  {
    bool ok = true;
    for (ElemId h = 0; h < H.size() && ok; ++h)
      for (ElemId x = 0; x < X.size(); ++x) {
        if (!a.in_domain(h, x)) continue;
        ElemId y = a.act(h, x), k = a.restr(h, x);
        if (y < 0 || y >= X.size() || k < 0 || k >= H.size()) {
          rep.add_fail("table-range", {h, x});
          ok = false;
          break;
        }
      }
    if (ok) rep.add_pass("table-range");
  }

  // L1: r_H(h) = rho(h|>x), s_H(h|<x) = rho(x^-1), r_H(h|<x) = rho((h|>x)^-1)
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId h = 0; h < H.size() && ok; ++h)
      for (ElemId x = 0; x < X.size(); ++x) {
        if (!a.in_domain(h, x)) continue;
        ++cnt;
        ElemId y = a.act(h, x), k = a.restr(h, x);
        if (H.rng(h) != a.rho(y) || H.src(k) != a.rho(X.inv(x)) ||
            H.rng(k) != a.rho(X.inv(y))) {
          rep.add_fail("L1", {h, x});
          ok = false;
          break;
        }
      }
    if (ok) rep.add_pass("L1", cnt);
  }

  // L2: h|<v = h for units v; rho(x)|>x = x
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId h = 0; h < H.size() && ok; ++h)
      for (ElemId v : X.units()) {
        if (!a.in_domain(h, v)) continue;
        ++cnt;
        if (a.restr(h, v) != h) {
          rep.add_fail("L2", {h, v}, "h|<v != h");
          ok = false;
          break;
        }
      }
    for (ElemId x = 0; x < X.size() && ok; ++x) {
      ++cnt;
      if (a.act(a.rho(x), x) != x) {
        rep.add_fail("L2", {a.rho(x), x}, "rho(x)|>x != x");
        ok = false;
      }
    }
    if (ok) rep.add_pass("L2", cnt);
  }

  // L3 + L4 over h and composable (x,y); independent flags so one failing
  // law cannot mask the other
  {
    bool ok3 = true, ok4 = true;
    long long cnt = 0;
    for (ElemId h = 0; h < H.size() && (ok3 || ok4); ++h)
      for (ElemId x = 0; x < X.size() && (ok3 || ok4); ++x) {
        if (!a.in_domain(h, x)) continue;
        for (ElemId y : X.arrows_into(X.src(x))) {
          auto xy = X.mul(x, y);
          if (!xy) continue;
          ++cnt;
          ElemId hx = a.act(h, x), hrx = a.restr(h, x);
          if (ok3) {
            // connective: s(h|>x) = r((h|<x)|>y)
            if (X.src(hx) != X.rng(a.act(hrx, y))) {
              rep.add_fail("L3", {h, x, y}, "s(h|>x) != r((h|<x)|>y)");
              ok3 = false;
            } else if (a.restr(h, *xy) != a.restr(hrx, y)) {
              rep.add_fail("L3", {h, x, y});
              ok3 = false;
            }
          }
          if (ok4) {
            auto prod = X.mul(hx, a.act(hrx, y));
            if (!prod || a.act(h, *xy) != *prod) {
              rep.add_fail("L4", {h, x, y});
              ok4 = false;
            }
          }
          if (!ok3 && !ok4) break;
        }
      }
    if (ok3) rep.add_pass("L3", cnt);
    if (ok4) rep.add_pass("L4", cnt);
  }

  // L5 + L6 over composable (h,k) and x
  {
    bool ok5 = true, ok6 = true;
    long long cnt = 0;
    for (ElemId h = 0; h < H.size() && (ok5 || ok6); ++h)
      for (ElemId k : H.arrows_into(H.src(h))) {
        auto hk = H.mul(h, k);
        if (!hk) continue;
        for (ElemId x = 0; x < X.size(); ++x) {
          if (!a.in_domain(k, x)) continue;
          ++cnt;
          ElemId kx = a.act(k, x);
          if (ok5 && a.act(*hk, x) != a.act(h, kx)) {
            rep.add_fail("L5", {h, k, x});
            ok5 = false;
          }
          if (ok6) {
            auto prod = H.mul(a.restr(h, kx), a.restr(k, x));
            if (!prod || a.restr(*hk, x) != *prod) {
              rep.add_fail("L6", {h, k, x});
              ok6 = false;
            }
          }
          if (!ok5 && !ok6) break;
        }
        if (!ok5 && !ok6) break;
      }
    if (ok5) rep.add_pass("L5", cnt);
    if (ok6) rep.add_pass("L6", cnt);
  }

  return rep;
}

ValidationReport check_right_axioms(const RightSelfSimilarAction& a) {
  ValidationReport rep;
  const auto& G = *a.G();
  const auto& X = *a.X();

  {
    std::vector<bool> hit(G.size(), false);
    for (ElemId u : X.units()) hit[a.sigma0(u)] = true;
    bool ok = true;
    for (ElemId v : G.units())
      if (!hit[v]) {
        rep.add_fail("sigma0-surjective", {v});
        ok = false;
        break;
      }
    if (ok) rep.add_pass("sigma0-surjective", static_cast<long long>(X.units().size()));
  }

  {
    bool ok = true;
    long long dom = 0;
    for (ElemId x = 0; x < X.size() && ok; ++x)
      for (ElemId t = 0; t < G.size(); ++t) {
        bool in = a.in_domain(x, t);
        bool has_act = a.act_opt(x, t).has_value();
        bool has_restr = a.restr_opt(x, t).has_value();
        if (in) ++dom;
        if (in && (!has_act || !has_restr)) {
          rep.add_fail("domain-exact", {x, t}, "missing on the fiber product");
          ok = false;
          break;
        }
        if (!in && (has_act || has_restr)) {
          rep.add_fail("domain-exact", {x, t}, "defined off the fiber product");
          ok = false;
          break;
        }
      }
    if (ok) rep.add_pass("domain-exact", dom);
    if (!ok) return rep;
  }

  // R1: sigma(x<|t) = s_G(t), sigma(x^-1) = r_G(x|<t), sigma((x<|t)^-1) = s_G(x|<t)
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId x = 0; x < X.size() && ok; ++x)
      for (ElemId t = 0; t < G.size(); ++t) {
        if (!a.in_domain(x, t)) continue;
        ++cnt;
        ElemId y = a.act(x, t), s = a.restr(x, t);
        if (a.sigma(y) != G.src(t) || a.sigma(X.inv(x)) != G.rng(s) ||
            a.sigma(X.inv(y)) != G.src(s)) {
          rep.add_fail("R1", {x, t});
          ok = false;
          break;
        }
      }
    if (ok) rep.add_pass("R1", cnt);
  }

  // R2: v|<s = s for units v; x <| sigma(x) = x
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId v : X.units()) {
      for (ElemId s = 0; s < G.size(); ++s) {
        if (!a.in_domain(v, s)) continue;
        ++cnt;
        if (a.restr(v, s) != s) {
          rep.add_fail("R2", {v, s}, "v|<s != s");
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    for (ElemId x = 0; x < X.size() && ok; ++x) {
      ++cnt;
      if (a.act(x, a.sigma(x)) != x) {
        rep.add_fail("R2", {x, a.sigma(x)}, "x<|sigma(x) != x");
        ok = false;
      }
    }
    if (ok) rep.add_pass("R2", cnt);
  }

  // R3 + R4 over composable (x,y) and s with sigma(y) = r_G(s)
  {
    bool ok3 = true, ok4 = true;
    long long cnt = 0;
    for (ElemId x = 0; x < X.size() && (ok3 || ok4); ++x)
      for (ElemId y : X.arrows_into(X.src(x))) {
        auto xy = X.mul(x, y);
        if (!xy) continue;
        for (ElemId s = 0; s < G.size(); ++s) {
          if (!a.in_domain(y, s)) continue;
          ++cnt;
          ElemId ys = a.act(y, s), yls = a.restr(y, s);
          if (ok3) {
            // connective: s(x <| (y|<s)) = r(y<|s)
            if (X.src(a.act(x, yls)) != X.rng(ys)) {
              rep.add_fail("R3", {x, y, s}, "s(x<|(y|<s)) != r(y<|s)");
              ok3 = false;
            } else if (a.restr(*xy, s) != a.restr(x, yls)) {
              rep.add_fail("R3", {x, y, s});
              ok3 = false;
            }
          }
          if (ok4) {
            auto prod = X.mul(a.act(x, yls), ys);
            if (!prod || a.act(*xy, s) != *prod) {
              rep.add_fail("R4", {x, y, s});
              ok4 = false;
            }
          }
          if (!ok3 && !ok4) break;
        }
        if (!ok3 && !ok4) break;
      }
    if (ok3) rep.add_pass("R3", cnt);
    if (ok4) rep.add_pass("R4", cnt);
  }

  // R5 + R6 over x and composable (s,t)
  {
    bool ok5 = true, ok6 = true;
    long long cnt = 0;
    for (ElemId x = 0; x < X.size() && (ok5 || ok6); ++x)
      for (ElemId s = 0; s < G.size(); ++s) {
        if (!a.in_domain(x, s)) continue;
        for (ElemId t : G.arrows_into(G.src(s))) {
          auto st = G.mul(s, t);
          if (!st) continue;
          ++cnt;
          ElemId xs = a.act(x, s);
          if (ok5 && a.act(x, *st) != a.act(xs, t)) {
            rep.add_fail("R5", {x, s, t});
            ok5 = false;
          }
          if (ok6) {
            auto prod = G.mul(a.restr(x, s), a.restr(xs, t));
            if (!prod || a.restr(x, *st) != *prod) {
              rep.add_fail("R6", {x, s, t});
              ok6 = false;
            }
          }
          if (!ok5 && !ok6) break;
        }
        if (!ok5 && !ok6) break;
      }
    if (ok5) rep.add_pass("R5", cnt);
    if (ok6) rep.add_pass("R6", cnt);
  }

  return rep;
}

ValidationReport verify_derived_left_laws(const LeftSelfSimilarAction& a) {
  ValidationReport rep;
  const auto& H = *a.H();
  const auto& X = *a.X();

  // L7: rho(x)|<x = rho(x^-1)
  {
    bool ok = true;
    for (ElemId x = 0; x < X.size() && ok; ++x)
      if (a.restr(a.rho(x), x) != a.rho(X.inv(x))) {
        rep.add_fail("L7", {x});
        ok = false;
      }
    if (ok) rep.add_pass("L7", X.size());
  }

  // L8: h|>v is a unit for units v
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId h = 0; h < H.size() && ok; ++h)
      for (ElemId v : X.units()) {
        if (!a.in_domain(h, v)) continue;
        ++cnt;
        if (!X.is_unit(a.act(h, v))) {
          rep.add_fail("L8", {h, v});
          ok = false;
          break;
        }
      }
    if (ok) rep.add_pass("L8", cnt);
  }

  // L9: (h|>x)^-1 = (h|<x)|>x^-1  and  (h|<x)^-1 = h^-1 |< (h|>x)
  // L10: r(h|>x) = h|>r(x)        and  s(h|>x) = (h|<x)|>s(x)
  {
    bool ok9 = true, ok10 = true;
    long long cnt = 0;
    for (ElemId h = 0; h < H.size() && (ok9 || ok10); ++h)
      for (ElemId x = 0; x < X.size(); ++x) {
        if (!a.in_domain(h, x)) continue;
        ++cnt;
        ElemId y = a.act(h, x), k = a.restr(h, x);
        if (ok9 && (X.inv(y) != a.act(k, X.inv(x)) ||
                    H.inv(k) != a.restr(H.inv(h), y))) {
          rep.add_fail("L9", {h, x});
          ok9 = false;
        }
        if (ok10 && (X.rng(y) != a.act(h, X.rng(x)) ||
                     X.src(y) != a.act(k, X.src(x)))) {
          rep.add_fail("L10", {h, x});
          ok10 = false;
        }
        if (!ok9 && !ok10) break;
      }
    if (ok9) rep.add_pass("L9", cnt);
    if (ok10) rep.add_pass("L10", cnt);
  }

  // corollary: h|>x a unit forces x a unit
  {
    bool ok = true;
    for (ElemId h = 0; h < H.size() && ok; ++h)
      for (ElemId x = 0; x < X.size(); ++x) {
        if (!a.in_domain(h, x)) continue;
        if (X.is_unit(a.act(h, x)) && !X.is_unit(x)) {
          rep.add_fail("unit-preimage", {h, x});
          ok = false;
          break;
        }
      }
    if (ok) rep.add_pass("unit-preimage");
  }

  return rep;
}

ValidationReport verify_derived_right_laws(const RightSelfSimilarAction& a) {
  ValidationReport rep;
  const auto& G = *a.G();
  const auto& X = *a.X();

  // R7: x|<sigma(x) = sigma(x^-1)
  {
    bool ok = true;
    for (ElemId x = 0; x < X.size() && ok; ++x)
      if (a.restr(x, a.sigma(x)) != a.sigma(X.inv(x))) {
        rep.add_fail("R7", {x});
        ok = false;
      }
    if (ok) rep.add_pass("R7", X.size());
  }

  // R8: v<|t is a unit
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId v : X.units()) {
      for (ElemId t = 0; t < G.size(); ++t) {
        if (!a.in_domain(v, t)) continue;
        ++cnt;
        if (!X.is_unit(a.act(v, t))) {
          rep.add_fail("R8", {v, t});
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) rep.add_pass("R8", cnt);
  }

  // R9: (x<|t)^-1 = x^-1 <| (x|<t)  and  (x|<t)^-1 = (x<|t)|<t^-1
  // R10: s(x<|t) = s(x)<|t          and  r(x<|t) = r(x)<|(x|<t)
  {
    bool ok9 = true, ok10 = true;
    long long cnt = 0;
    for (ElemId x = 0; x < X.size() && (ok9 || ok10); ++x)
      for (ElemId t = 0; t < G.size(); ++t) {
        if (!a.in_domain(x, t)) continue;
        ++cnt;
        ElemId y = a.act(x, t), s = a.restr(x, t);
        if (ok9 && (X.inv(y) != a.act(X.inv(x), s) ||
                    G.inv(s) != a.restr(y, G.inv(t)))) {
          rep.add_fail("R9", {x, t});
          ok9 = false;
        }
        if (ok10 && (X.src(y) != a.act(X.src(x), t) ||
                     X.rng(y) != a.act(X.rng(x), s))) {
          rep.add_fail("R10", {x, t});
          ok10 = false;
        }
        if (!ok9 && !ok10) break;
      }
    if (ok9) rep.add_pass("R9", cnt);
    if (ok10) rep.add_pass("R10", cnt);
  }

  return rep;
}

FreenessResult is_free(const LeftSelfSimilarAction& a) {
  FreenessResult res;
  const auto& H = *a.H();
  const auto& X = *a.X();
  res.free = true;
  for (ElemId h = 0; h < H.size() && res.free; ++h) {
    if (H.is_unit(h)) continue;
    for (ElemId x = 0; x < X.size(); ++x) {
      if (!a.in_domain(h, x)) continue;
      if (a.act(h, x) == x) {
        res.free = false;
        res.h = h;
        res.x = x;
        break;
      }
    }
  }
  if (res.free)
    res.report.add_pass("free");
  else
    res.report.add_fail("free", {res.h, res.x}, "non-unit fixes an element");

  // Freeness on X must agree with freeness of the restricted action on X^(0).
  bool free_on_units = true;
  ElemId wh = -1, wu = -1;
  for (ElemId h = 0; h < H.size() && free_on_units; ++h) {
    if (H.is_unit(h)) continue;
    for (ElemId u : X.units()) {
      if (!a.in_domain(h, u)) continue;
      if (a.act(h, u) == u) {
        free_on_units = false;
        wh = h;
        wu = u;
        break;
      }
    }
  }
  if (free_on_units == res.free)
    res.report.add_pass("free-on-units-agrees");
  else
    res.report.add_fail("free-on-units-agrees", {wh, wu},
                        "X and X^(0) freeness disagree");
  return res;
}

FreenessResult is_free_right(const RightSelfSimilarAction& a) {
  FreenessResult res;
  const auto& G = *a.G();
  const auto& X = *a.X();
  res.free = true;
  for (ElemId t = 0; t < G.size() && res.free; ++t) {
    if (G.is_unit(t)) continue;
    for (ElemId x = 0; x < X.size(); ++x) {
      if (!a.in_domain(x, t)) continue;
      if (a.act(x, t) == x) {
        res.free = false;
        res.h = t;
        res.x = x;
        break;
      }
    }
  }
  if (res.free)
    res.report.add_pass("free");
  else
    res.report.add_fail("free", {res.x, res.h}, "non-unit fixes an element");
  return res;
}

ValidationReport check_unique_orbit_rep(const LeftSelfSimilarAction& a) {
  ValidationReport rep;
  const auto& X = *a.X();
  long long cnt = 0;
  for (ElemId x = 0; x < X.size(); ++x) {
    for (ElemId y : a.orbit(x)) {
      ++cnt;
      if (y != x && X.rng(y) == X.rng(x)) {
        rep.add_fail("unique-orbit-rep", {x, y},
                     "distinct orbit members share a range");
        return rep;
      }
    }
  }
  rep.add_pass("unique-orbit-rep", cnt);
  return rep;
}

ValidationReport counting_haar_invariance(const LeftSelfSimilarAction& a) {
  ValidationReport rep;
  const auto& H = *a.H();
  const auto& X = *a.X();
  long long cnt = 0;
  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId u : X.units()) {
      if (!a.in_domain(h, u)) continue;
      ElemId hu = a.act(h, u);
      const auto& fiber = X.arrows_into(u);
      const auto& target = X.arrows_into(hu);
      std::vector<ElemId> image;
      for (ElemId x : fiber) {
        ++cnt;
        ElemId y = a.act(h, x);
        if (X.rng(y) != hu) {
          rep.add_fail("counting-haar", {h, x}, "image leaves the target fiber");
          return rep;
        }
        image.push_back(y);
      }
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
        rep.add_fail("counting-haar", {h, u}, "not injective on the fiber");
        return rep;
      }
      if (image.size() != target.size()) {
        rep.add_fail("counting-haar", {h, u}, "not onto the target fiber");
        return rep;
      }
    }
  rep.add_pass("counting-haar", cnt);
  return rep;
}

ValidationReport counting_haar_invariance_right(const RightSelfSimilarAction& a) {
  ValidationReport rep;
  const auto& G = *a.G();
  const auto& X = *a.X();
  long long cnt = 0;
  for (ElemId u : X.units())
    for (ElemId t = 0; t < G.size(); ++t) {
      if (!a.in_domain(u, t)) continue;
      ElemId ut = a.act(u, t);
      const auto& fiber = X.arrows_out_of(u);
      const auto& target = X.arrows_out_of(ut);
      std::vector<ElemId> image;
      for (ElemId x : fiber) {
        ++cnt;
        ElemId y = a.act(x, t);
        if (X.src(y) != ut) {
          rep.add_fail("counting-haar-right", {x, t},
                       "image leaves the target fiber");
          return rep;
        }
        image.push_back(y);
      }
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
        rep.add_fail("counting-haar-right", {u, t}, "not injective on the fiber");
        return rep;
      }
      if (image.size() != target.size()) {
        rep.add_fail("counting-haar-right", {u, t}, "not onto the target fiber");
        return rep;
      }
    }
  rep.add_pass("counting-haar-right", cnt);
  return rep;
}

ValidationReport check_in_tune(const LeftSelfSimilarAction& L,
                               const RightSelfSimilarAction& R) {
  ValidationReport rep;
  if (L.X() != R.X() && L.X()->size() != R.X()->size())
    throw StructureError("in-tune check needs both actions on the same X");
  const auto& H = *L.H();
  const auto& G = *R.G();
  const auto& X = *L.X();

  bool ok0 = true, ok1 = true, ok2 = true, ok3 = true;
  long long cnt = 0;

  // C0 first half quantifies over (h,x) alone and second over (x,t) alone.
  for (ElemId h = 0; h < H.size() && ok0; ++h)
    for (ElemId x = 0; x < X.size(); ++x) {
      if (!L.in_domain(h, x)) continue;
      if (R.sigma(L.act(h, x)) != R.sigma(x)) {
        rep.add_fail("C0", {h, x}, "sigma(h|>x) != sigma(x)");
        ok0 = false;
        break;
      }
    }
  for (ElemId x = 0; x < X.size() && ok0; ++x)
    for (ElemId t = 0; t < G.size(); ++t) {
      if (!R.in_domain(x, t)) continue;
      if (L.rho(R.act(x, t)) != L.rho(x)) {
        rep.add_fail("C0", {x, t}, "rho(x<|t) != rho(x)");
        ok0 = false;
        break;
      }
    }
  if (ok0) rep.add_pass("C0");
  if (!ok0) return rep;  // C1-C3 only make sense when C0 holds

  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId x = 0; x < X.size(); ++x) {
      if (!L.in_domain(h, x)) continue;
      for (ElemId t = 0; t < G.size(); ++t) {
        if (!R.in_domain(x, t)) continue;
        ++cnt;
        ElemId hx = L.act(h, x), xt = R.act(x, t);
        if (ok1 && L.act(h, xt) != R.act(hx, t)) {
          rep.add_fail("C1", {h, x, t});
          ok1 = false;
        }
        if (ok2 && R.restr(hx, t) != R.restr(x, t)) {
          rep.add_fail("C2", {h, x, t});
          ok2 = false;
        }
        if (ok3 && L.restr(h, xt) != L.restr(h, x)) {
          rep.add_fail("C3", {h, x, t});
          ok3 = false;
        }
        if (!ok1 && !ok2 && !ok3) return rep;
      }
    }
  if (ok1) rep.add_pass("C1", cnt);
  if (ok2) rep.add_pass("C2", cnt);
  if (ok3) rep.add_pass("C3", cnt);
  return rep;
}

ParaEquivalence certify_para_equivalence(LeftSelfSimilarAction L,
                                         RightSelfSimilarAction R) {
  ParaEquivalence p;
  p.report.merge_prefixed(check_left_axioms(L), "left.");
  p.report.merge_prefixed(check_right_axioms(R), "right.");
  if (p.report.ok()) {
    auto fl = is_free(L);
    p.report.merge_prefixed(fl.report, "left.");
    auto fr = is_free_right(R);
    p.report.merge_prefixed(fr.report, "right.");
    if (fl.free && fr.free) p.report.merge(check_in_tune(L, R));
  }
  p.report.add_auto("left.proper");
  p.report.add_auto("right.proper");
  p.report.add_auto("open-source-maps");
  p.certified = p.report.ok();
  p.left = std::move(L);
  p.right = std::move(R);
  return p;
}

RightSelfSimilarAction trivial_right_action(GpdPtr X) {
  GroupoidBuilder b(1);
  b.label(0, "e").self_unit(0).mul(0, 0, 0);
  GpdPtr E = b.build();
  std::vector<ElemId> sigma0(X->size(), 0);
  RightSelfSimilarAction a(E, X, sigma0);
  for (ElemId x = 0; x < X->size(); ++x) {
    a.set_act(x, 0, x);
    a.set_restr(x, 0, 0);
  }
  return a;
}

LeftSelfSimilarAction trivial_left_group_action(GpdPtr X) {
  GroupoidBuilder b(1);
  b.label(0, "e").self_unit(0).mul(0, 0, 0);
  GpdPtr E = b.build();
  std::vector<ElemId> rho0(X->size(), 0);
  LeftSelfSimilarAction a(E, X, rho0);
  for (ElemId x = 0; x < X->size(); ++x) {
    a.set_act(0, x, x);
    a.set_restr(0, x, 0);
  }
  return a;
}

LeftSelfSimilarAction unit_groupoid_action(GpdPtr X) {
  // H = the trivial groupoid on X^(0), re-indexed densely.
  const auto& units = X->units();
  int m = static_cast<int>(units.size());
  GroupoidBuilder b(m);
  std::vector<ElemId> unit_index(X->size(), -1);
  for (int i = 0; i < m; ++i) {
    unit_index[units[i]] = i;
    b.label(i, X->label(units[i])).self_unit(i).mul(i, i, i);
  }
  GpdPtr H = b.build();
  std::vector<ElemId> rho0(X->size(), -1);
  for (ElemId u : X->units()) rho0[u] = unit_index[u];
  LeftSelfSimilarAction a(H, X, rho0);
  for (ElemId x = 0; x < X->size(); ++x) {
    a.set_act(unit_index[X->rng(x)], x, x);
    a.set_restr(unit_index[X->rng(x)], x, unit_index[X->src(x)]);
  }
  return a;
}

}  // namespace gpdkit
