#include "gpdkit/equiv.hpp"

#include <algorithm>

namespace gpdkit {

std::optional<ElemId> EquivalenceWitness::right_rep(ElemId cls,
                                                    ElemId src_unit) const {
  auto it = right_rep_by_src.find(
      static_cast<int64_t>(cls) * para.left.X()->size() + src_unit);
  if (it == right_rep_by_src.end()) return std::nullopt;
  return it->second;
}

std::optional<ElemId> EquivalenceWitness::left_rep(ElemId cls,
                                                   ElemId rng_unit) const {
  auto it = left_rep_by_rng.find(
      static_cast<int64_t>(cls) * para.left.X()->size() + rng_unit);
  if (it == left_rep_by_rng.end()) return std::nullopt;
  return it->second;
}

std::optional<ElemId> EquivalenceWitness::left_act(ElemId gamma,
                                                   ElemId y) const {
  const auto& X = *para.left.X();
  if (A.base->src(gamma) != frak_r[y]) return std::nullopt;
  auto [xi, h] = A.pair_of(gamma);
  ElemId hy = para.left.act(h, y);
  auto x = right_rep(xi, X.rng(hy));
  if (!x) throw StructureError("missing representative in left witness action");
  return X.mul_req(*x, hy);
}

std::optional<ElemId> EquivalenceWitness::right_act(ElemId y,
                                                    ElemId gamma) const {
  const auto& X = *para.left.X();
  if (frak_s[y] != C.base->rng(gamma)) return std::nullopt;
  if (!right_act_override.empty()) {
    auto it = right_act_override.find(
        static_cast<int64_t>(y) * C.base->size() + gamma);
    if (it != right_act_override.end()) return it->second;
  }
  auto [t, eta] = C.pair_of(gamma);
  ElemId yt = para.right.act(y, t);
  auto z = left_rep(eta, X.src(yt));
  if (!z) throw StructureError("missing representative in right witness action");
  return X.mul_req(yt, *z);
}

EquivalenceWitness build_equivalence(const ParaEquivalence& p) {
  if (!p.certified)
    throw StructureError("build_equivalence needs a certified para-equivalence");
  EquivalenceWitness w;
  w.para = p;
  const auto& X = *p.left.X();

  w.x_mod_g = orbit_groupoid_right(p.right);
  w.h_mod_x = orbit_groupoid_left(p.left);
  w.qleft = quotient_left_action(p, w.x_mod_g);
  w.qright = quotient_right_action(p, w.h_mod_x);
  w.A = zs_product_left(w.qleft);
  w.C = zs_product_right(w.qright);

  // frak_r(x) = r(x)G as a unit of A; frak_s(x) = H s(x) as a unit of C.
  w.frak_r.resize(X.size());
  w.frak_s.resize(X.size());
  for (ElemId x = 0; x < X.size(); ++x) {
    ElemId rc = w.x_mod_g.class_map[X.rng(x)];
    w.frak_r[x] = w.A.id_of(rc, w.qleft.rho0(rc));
    ElemId sc = w.h_mod_x.class_map[X.src(x)];
    w.frak_s[x] = w.C.id_of(w.qright.sigma0(sc), sc);
  }

  // representative caches; collisions signal a freeness bug upstream
  for (ElemId x = 0; x < X.size(); ++x) {
    int64_t kr = static_cast<int64_t>(w.x_mod_g.class_map[x]) * X.size() + X.src(x);
    auto [itr, insr] = w.right_rep_by_src.emplace(kr, x);
    if (!insr && itr->second != x)
      throw StructureError("right-orbit representative not unique (freeness bug)");
    int64_t kl = static_cast<int64_t>(w.h_mod_x.class_map[x]) * X.size() + X.rng(x);
    auto [itl, insl] = w.left_rep_by_rng.emplace(kl, x);
    if (!insl && itl->second != x)
      throw StructureError("left-orbit representative not unique (freeness bug)");
  }
  return w;
}

ValidationReport verify_equivalence(const EquivalenceWitness& w) {
  ValidationReport rep;
  const auto& X = *w.para.left.X();
  const auto& A = *w.A.base;
  const auto& C = *w.C.base;

  // (i) action laws + momentum compatibility
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId g = 0; g < A.size() && ok; ++g)
      for (ElemId y = 0; y < X.size(); ++y) {
        auto gy = w.left_act(g, y);
        if (!gy) continue;
        ++cnt;
        if (w.frak_r[*gy] != A.rng(g)) {
          rep.add_fail("left-action-momentum", {g, y});
          ok = false;
          break;
        }
      }
    for (ElemId y = 0; y < X.size() && ok; ++y) {
      ++cnt;
      // the unit of A at frak_r(y) must act as the identity
      auto gy = w.left_act(w.frak_r[y], y);
      if (!gy || *gy != y) {
        rep.add_fail("left-action-unit", {w.frak_r[y], y});
        ok = false;
      }
    }
    for (ElemId g1 = 0; g1 < A.size() && ok; ++g1)
      for (ElemId g2 : A.arrows_into(A.src(g1))) {
        auto g12 = A.mul(g1, g2);
        if (!g12) continue;
        for (ElemId y = 0; y < X.size(); ++y) {
          auto g2y = w.left_act(g2, y);
          if (!g2y) continue;
          ++cnt;
          auto lhs = w.left_act(*g12, y);
          auto rhs = w.left_act(g1, *g2y);
          if (!lhs || !rhs || *lhs != *rhs) {
            rep.add_fail("left-action-assoc", {g1, g2, y});
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("left-action-laws", cnt);
  }
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId g = 0; g < C.size() && ok; ++g)
      for (ElemId y = 0; y < X.size(); ++y) {
        auto yg = w.right_act(y, g);
        if (!yg) continue;
        ++cnt;
        if (w.frak_s[*yg] != C.src(g)) {
          rep.add_fail("right-action-momentum", {y, g});
          ok = false;
          break;
        }
      }
    for (ElemId y = 0; y < X.size() && ok; ++y) {
      ++cnt;
      auto yg = w.right_act(y, w.frak_s[y]);
      if (!yg || *yg != y) {
        rep.add_fail("right-action-unit", {y, w.frak_s[y]});
        ok = false;
      }
    }
    for (ElemId g1 = 0; g1 < C.size() && ok; ++g1)
      for (ElemId g2 : C.arrows_into(C.src(g1))) {
        auto g12 = C.mul(g1, g2);
        if (!g12) continue;
        for (ElemId y = 0; y < X.size(); ++y) {
          auto yg1 = w.right_act(y, g1);
          if (!yg1) continue;
          ++cnt;
          auto lhs = w.right_act(y, *g12);
          auto rhs = w.right_act(*yg1, g2);
          if (!lhs || !rhs || *lhs != *rhs) {
            rep.add_fail("right-action-assoc", {y, g1, g2});
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("right-action-laws", cnt);
  }

  // (ii) freeness of both witness actions
  {
    bool ok = true;
    for (ElemId g = 0; g < A.size() && ok; ++g) {
      if (A.is_unit(g)) continue;
      for (ElemId y = 0; y < X.size(); ++y) {
        auto gy = w.left_act(g, y);
        if (gy && *gy == y) {
          rep.add_fail("left-action-free", {g, y});
          ok = false;
          break;
        }
      }
    }
    for (ElemId g = 0; g < C.size() && ok; ++g) {
      if (C.is_unit(g)) continue;
      for (ElemId y = 0; y < X.size(); ++y) {
        auto yg = w.right_act(y, g);
        if (yg && *yg == y) {
          rep.add_fail("right-action-free", {y, g});
          ok = false;
          break;
        }
      }
    }
    if (ok) rep.add_pass("actions-free");
  }

  // (iii) commutation
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId ga = 0; ga < A.size() && ok; ++ga)
      for (ElemId y = 0; y < X.size(); ++y) {
        auto gay = w.left_act(ga, y);
        if (!gay) continue;
        for (ElemId gc = 0; gc < C.size(); ++gc) {
          auto ygc = w.right_act(y, gc);
          if (!ygc) continue;
          ++cnt;
          auto lhs = w.right_act(*gay, gc);
          auto rhs = w.left_act(ga, *ygc);
          if (!lhs || !rhs || *lhs != *rhs) {
            rep.add_fail("actions-commute", {ga, y, gc});
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("actions-commute", cnt);
  }

  // (iv) principality: frak_r induces a bijection X/(C-orbits) -> A units,
  //      frak_s a bijection (A-orbits)\X -> C units.
  {
    // orbits of the right C-action
    std::vector<int> cls(X.size(), -1);
    int n_cls = 0;
    for (ElemId x = 0; x < X.size(); ++x) {
      if (cls[x] != -1) continue;
      std::vector<ElemId> stack{x};
      cls[x] = n_cls;
      while (!stack.empty()) {
        ElemId y = stack.back();
        stack.pop_back();
        for (ElemId g = 0; g < C.size(); ++g) {
          auto yg = w.right_act(y, g);
          if (yg && cls[*yg] == -1) {
            cls[*yg] = n_cls;
            stack.push_back(*yg);
          }
        }
      }
      ++n_cls;
    }
    bool ok = true;
    std::vector<ElemId> image(n_cls, -1);
    for (ElemId x = 0; x < X.size() && ok; ++x) {
      ElemId& im = image[cls[x]];
      if (im == -1) im = w.frak_r[x];
      else if (im != w.frak_r[x]) {
        rep.add_fail("principality-r-welldef", {x});
        ok = false;
      }
    }
    if (ok) {
      std::vector<ElemId> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        rep.add_fail("principality-r-injective", {});
        ok = false;
      } else if (static_cast<int>(sorted.size()) !=
                 static_cast<int>(A.units().size())) {
        rep.add_fail("principality-r-surjective", {});
        ok = false;
      }
    }
    if (ok) rep.add_pass("principality-r", n_cls);
  }
  {
    // orbits of the left A-action
    std::vector<int> cls(X.size(), -1);
    int n_cls = 0;
    for (ElemId x = 0; x < X.size(); ++x) {
      if (cls[x] != -1) continue;
      std::vector<ElemId> stack{x};
      cls[x] = n_cls;
      while (!stack.empty()) {
        ElemId y = stack.back();
        stack.pop_back();
        for (ElemId g = 0; g < A.size(); ++g) {
          auto gy = w.left_act(g, y);
          if (gy && cls[*gy] == -1) {
            cls[*gy] = n_cls;
            stack.push_back(*gy);
          }
        }
      }
      ++n_cls;
    }
    bool ok = true;
    std::vector<ElemId> image(n_cls, -1);
    for (ElemId x = 0; x < X.size() && ok; ++x) {
      ElemId& im = image[cls[x]];
      if (im == -1) im = w.frak_s[x];
      else if (im != w.frak_s[x]) {
        rep.add_fail("principality-s-welldef", {x});
        ok = false;
      }
    }
    if (ok) {
      std::vector<ElemId> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        rep.add_fail("principality-s-injective", {});
        ok = false;
      } else if (static_cast<int>(sorted.size()) !=
                 static_cast<int>(C.units().size())) {
        rep.add_fail("principality-s-surjective", {});
        ok = false;
      }
    }
    if (ok) rep.add_pass("principality-s", n_cls);
  }

  return rep;
}

EquivalenceWitness one_sided_equivalence(const LeftSelfSimilarAction& a) {
  auto fr = is_free(a);
  if (!fr.free) throw NotFreeError(fr.h, fr.x);
  ParaEquivalence p = certify_para_equivalence(a, trivial_right_action(a.X()));
  if (!p.certified) {
    const auto* f = p.report.first_failure();
    throw StructureError("one-sided certification failed at " +
                         (f ? f->check : std::string("?")));
  }
  return build_equivalence(p);
}

}  // namespace gpdkit
