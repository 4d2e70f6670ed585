#include <algorithm>

#include "gpdkit/fell.hpp"

namespace gpdkit {

namespace {

struct ProductLeftCtx {
  FellLeftActionPtr act;
  ProductGroupoid prod;
};

struct ProductRightCtx {
  FellRightActionPtr act;
  ProductGroupoid prod;
};

}  // namespace

FellBundle product_bundle_left(FellLeftActionPtr a, const ProductGroupoid& prod) {
  FellBundle out;
  out.base = prod.base;
  out.rel_tol = a->B->rel_tol;
  out.abs_tol = a->B->abs_tol;
  out.fibers.resize(prod.base->size());
  for (ElemId e = 0; e < prod.base->size(); ++e)
    out.fibers[e] = a->B->fibers[prod.pair_of(e).first];

  auto ctx = std::make_shared<ProductLeftCtx>(ProductLeftCtx{a, prod});
  // (a,h)(b,k) = (a [h |>_B b], (h |< q(b)) k)
  out.mul_fn = [ctx](ElemId e1, const MatC& m1, ElemId e2, const MatC& m2) {
    auto [x, h] = ctx->prod.pair_of(e1);
    auto [y, k] = ctx->prod.pair_of(e2);
    const auto& u = ctx->act->underlying;
    return ctx->act->B->mul(x, m1, u.act(h, y), ctx->act->apply(h, y, m2));
  };
  // (b,h)* = (h^-1 |>_B b*, h^-1 |< q(b)*)
  out.star_fn = [ctx](ElemId e, const MatC& m) {
    auto [x, h] = ctx->prod.pair_of(e);
    const auto& H = *ctx->act->H;
    const auto& X = *ctx->act->B->base;
    return ctx->act->apply(H.inv(h), X.inv(x), ctx->act->B->star(x, m));
  };
  return out;
}

FellBundle product_bundle_right(FellRightActionPtr a, const ProductGroupoid& prod) {
  FellBundle out;
  out.base = prod.base;
  out.rel_tol = a->B->rel_tol;
  out.abs_tol = a->B->abs_tol;
  out.fibers.resize(prod.base->size());
  for (ElemId e = 0; e < prod.base->size(); ++e)
    out.fibers[e] = a->B->fibers[prod.pair_of(e).second];

  auto ctx = std::make_shared<ProductRightCtx>(ProductRightCtx{a, prod});
  // (s,b)(t,c) = (s (q(b) |< t), (b <|_B t) c)
  out.mul_fn = [ctx](ElemId e1, const MatC& m1, ElemId e2, const MatC& m2) {
    auto [s, x] = ctx->prod.pair_of(e1);
    auto [t, y] = ctx->prod.pair_of(e2);
    const auto& u = ctx->act->underlying;
    return ctx->act->B->mul(u.act(x, t), ctx->act->apply(x, t, m1), y, m2);
  };
  // (t,b)* = (q(b)^-1 |< t^-1, b* <|_B t^-1)
  out.star_fn = [ctx](ElemId e, const MatC& m) {
    auto [t, x] = ctx->prod.pair_of(e);
    const auto& G = *ctx->act->G;
    const auto& X = *ctx->act->B->base;
    return ctx->act->apply(X.inv(x), G.inv(t), ctx->act->B->star(x, m));
  };
  return out;
}

std::pair<ElemId, MatC> QuotientBundleLeft::project(ElemId x,
                                                    const MatC& m) const {
  ElemId cls = orbit.class_map[x];
  ElemId h = transport_h[x];
  return {cls, action->apply(h, x, m)};
}

std::shared_ptr<QuotientBundleLeft> quotient_bundle_left(
    FellLeftActionPtr a, const OrbitGroupoid& orbit) {
  auto q = std::make_shared<QuotientBundleLeft>();
  q->orbit = orbit;
  q->action = a;
  const auto& X = *a->B->base;
  const auto& H = *a->H;
  const auto& u = a->underlying;

  q->members.resize(orbit.class_rep.size());
  for (ElemId x = 0; x < X.size(); ++x)
    q->members[orbit.class_map[x]].push_back(x);

  q->transport_h.assign(X.size(), -1);
  for (ElemId x = 0; x < X.size(); ++x) {
    ElemId rep = orbit.class_rep[orbit.class_map[x]];
    for (ElemId h = 0; h < H.size(); ++h)
      if (u.in_domain(h, x) && u.act(h, x) == rep) {
        q->transport_h[x] = h;
        break;
      }
    if (q->transport_h[x] == -1)
      throw StructureError("orbit member cannot be moved to its representative");
  }

  q->bundle.base = orbit.base;
  q->bundle.rel_tol = a->B->rel_tol;
  q->bundle.abs_tol = a->B->abs_tol;
  q->bundle.fibers.resize(orbit.base->size());
  for (ElemId c = 0; c < orbit.base->size(); ++c)
    q->bundle.fibers[c] = a->B->fibers[orbit.class_rep[c]];

  std::weak_ptr<QuotientBundleLeft> weak = q;
  auto lock = [weak]() {
    auto p = weak.lock();
    if (!p) throw StructureError("quotient bundle context expired");
    return p;
  };
  q->bundle.mul_fn = [lock](ElemId c1, const MatC& m1, ElemId c2, const MatC& m2) {
    auto qb = lock();
    const auto& X = *qb->action->B->base;
    const auto& H = *qb->action->H;
    const auto& u = qb->action->underlying;
    ElemId x0 = qb->orbit.class_rep[c1];
    // find the member of c2 composable with x0 (exists; action is free)
    for (ElemId y : qb->members[c2]) {
      if (X.rng(y) != X.src(x0)) continue;
      ElemId y0 = qb->orbit.class_rep[c2];
      // transport m2 from the representative fiber to S_y
      ElemId hy = -1;
      for (ElemId h = 0; h < H.size(); ++h)
        if (u.in_domain(h, y0) && u.act(h, y0) == y) {
          hy = h;
          break;
        }
      if (hy == -1) break;
      MatC m2y = qb->action->apply(hy, y0, m2);
      MatC p = qb->action->B->mul(x0, m1, y, m2y);
      return qb->project(X.mul_req(x0, y), p).second;
    }
    throw StructureError("no composable representatives for quotient product");
  };
  q->bundle.star_fn = [lock](ElemId c, const MatC& m) {
    auto qb = lock();
    const auto& X = *qb->action->B->base;
    ElemId x0 = qb->orbit.class_rep[c];
    return qb->project(X.inv(x0), qb->action->B->star(x0, m)).second;
  };
  return q;
}

std::pair<ElemId, MatC> QuotientBundleRight::project(ElemId x,
                                                     const MatC& m) const {
  ElemId cls = orbit.class_map[x];
  ElemId t = transport_t[x];
  return {cls, action->apply(x, t, m)};
}

std::shared_ptr<QuotientBundleRight> quotient_bundle_right(
    FellRightActionPtr a, const OrbitGroupoid& orbit) {
  auto q = std::make_shared<QuotientBundleRight>();
  q->orbit = orbit;
  q->action = a;
  const auto& X = *a->B->base;
  const auto& G = *a->G;
  const auto& u = a->underlying;

  q->members.resize(orbit.class_rep.size());
  for (ElemId x = 0; x < X.size(); ++x)
    q->members[orbit.class_map[x]].push_back(x);

  q->transport_t.assign(X.size(), -1);
  for (ElemId x = 0; x < X.size(); ++x) {
    ElemId rep = orbit.class_rep[orbit.class_map[x]];
    for (ElemId t = 0; t < G.size(); ++t)
      if (u.in_domain(x, t) && u.act(x, t) == rep) {
        q->transport_t[x] = t;
        break;
      }
    if (q->transport_t[x] == -1)
      throw StructureError("orbit member cannot be moved to its representative");
  }

  q->bundle.base = orbit.base;
  q->bundle.rel_tol = a->B->rel_tol;
  q->bundle.abs_tol = a->B->abs_tol;
  q->bundle.fibers.resize(orbit.base->size());
  for (ElemId c = 0; c < orbit.base->size(); ++c)
    q->bundle.fibers[c] = a->B->fibers[orbit.class_rep[c]];

  std::weak_ptr<QuotientBundleRight> weak = q;
  auto lock = [weak]() {
    auto p = weak.lock();
    if (!p) throw StructureError("quotient bundle context expired");
    return p;
  };
  q->bundle.mul_fn = [lock](ElemId c1, const MatC& m1, ElemId c2, const MatC& m2) {
    auto qb = lock();
    const auto& X = *qb->action->B->base;
    const auto& G = *qb->action->G;
    const auto& u = qb->action->underlying;
    ElemId y0 = qb->orbit.class_rep[c2];
    for (ElemId x : qb->members[c1]) {
      if (X.src(x) != X.rng(y0)) continue;
      ElemId x0 = qb->orbit.class_rep[c1];
      ElemId tx = -1;
      for (ElemId t = 0; t < G.size(); ++t)
        if (u.in_domain(x0, t) && u.act(x0, t) == x) {
          tx = t;
          break;
        }
      if (tx == -1) break;
      MatC m1x = qb->action->apply(x0, tx, m1);
      MatC p = qb->action->B->mul(x, m1x, y0, m2);
      return qb->project(X.mul_req(x, y0), p).second;
    }
    throw StructureError("no composable representatives for quotient product");
  };
  q->bundle.star_fn = [lock](ElemId c, const MatC& m) {
    auto qb = lock();
    const auto& X = *qb->action->B->base;
    ElemId x0 = qb->orbit.class_rep[c];
    return qb->project(X.inv(x0), qb->action->B->star(x0, m)).second;
  };
  return q;
}

FellAssumptions certify_fell_assumptions(FellBundlePtr B, FellLeftActionPtr left,
                                         FellRightActionPtr right) {
  FellAssumptions out;
  out.B = std::move(B);
  out.left = std::move(left);
  out.right = std::move(right);

  out.para = certify_para_equivalence(out.left->underlying,
                                      out.right->underlying);
  out.report.merge_prefixed(out.para.report, "para.");
  if (!out.para.certified) return out;

  out.report.merge_prefixed(validate_fell(*out.B), "bundle.");
  if (is_saturated(*out.B))
    out.report.add_pass("bundle.saturated");
  else
    out.report.add_fail("bundle.saturated", {}, "the theorem needs saturation");

  out.report.merge_prefixed(check_fell_left_action(*out.left), "leftB.");
  out.report.merge_prefixed(check_fell_right_action(*out.right), "rightB.");
  if (!out.report.ok()) return out;

  // BC1 on basis elements: (h |>_B b) <|_B t = h |>_B (b <|_B t)
  {
    const auto& H = *out.left->H;
    const auto& G = *out.right->G;
    const auto& X = *out.B->base;
    const auto& ul = out.left->underlying;
    const auto& ur = out.right->underlying;
    bool ok = true;
    long long cnt = 0;
    for (ElemId h = 0; h < H.size() && ok; ++h)
      for (ElemId x = 0; x < X.size(); ++x) {
        if (!ul.in_domain(h, x)) continue;
        ElemId hx = ul.act(h, x);
        for (ElemId t = 0; t < G.size(); ++t) {
          if (!ur.in_domain(x, t)) continue;
          for (const auto& bm : out.B->fibers[x]) {
            ++cnt;
            MatC lhs = out.right->apply(hx, t, out.left->apply(h, x, bm));
            MatC rhs = out.left->apply(h, ur.act(x, t),
                                       out.right->apply(x, t, bm));
            if (!approx_zero((lhs - rhs).norm(), std::max(rhs.norm(), 1.0),
                             out.B->rel_tol, out.B->abs_tol)) {
              out.report.add_fail("BC1", {h, x, t});
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    if (ok) out.report.add_pass("BC1", cnt);
  }

  // BC2/BC3 are consequences of B1 with C2/C3; re-check at groupoid level.
  {
    const auto& H = *out.left->H;
    const auto& G = *out.right->G;
    const auto& X = *out.B->base;
    const auto& ul = out.left->underlying;
    const auto& ur = out.right->underlying;
    bool ok2 = true, ok3 = true;
    for (ElemId h = 0; h < H.size() && (ok2 || ok3); ++h)
      for (ElemId x = 0; x < X.size(); ++x) {
        if (!ul.in_domain(h, x)) continue;
        ElemId hx = ul.act(h, x);
        for (ElemId t = 0; t < G.size(); ++t) {
          if (!ur.in_domain(x, t)) continue;
          if (ok2 && ur.restr(hx, t) != ur.restr(x, t)) {
            out.report.add_fail("BC2", {h, x, t});
            ok2 = false;
          }
          if (ok3 && ul.restr(h, ur.act(x, t)) != ul.restr(h, x)) {
            out.report.add_fail("BC3", {h, x, t});
            ok3 = false;
          }
        }
      }
    if (ok2)
      out.report.add({"BC2", CheckStatus::pass, {}, "derived from (C2)", 0});
    if (ok3)
      out.report.add({"BC3", CheckStatus::pass, {}, "derived from (C3)", 0});
  }

  out.certified = out.report.ok();
  return out;
}

QuotientFellActions quotient_fell_actions(const FellAssumptions& assm,
                                          const EquivalenceWitness& w) {
  if (!assm.certified)
    throw StructureError("quotient bundle actions need certified assumptions");
  QuotientFellActions out;
  out.h_mod_b = quotient_bundle_left(assm.left, w.h_mod_x);
  out.b_mod_g = quotient_bundle_right(assm.right, w.x_mod_g);

  const auto& X = *assm.B->base;
  const auto& H = *assm.left->H;
  const auto& G = *assm.right->G;

  // right G-action on H\B: Xi <|~ t = H |>_B (b <|_B t)
  {
    auto act = std::make_shared<FellRightAction>();
    act->G = assm.right->G;
    act->B = FellBundlePtr(out.h_mod_b, &out.h_mod_b->bundle);
    act->underlying = w.qright;
    const auto& HX = *w.h_mod_x.base;
    for (ElemId c = 0; c < HX.size(); ++c) {
      ElemId x0 = w.h_mod_x.class_rep[c];
      for (ElemId t = 0; t < G.size(); ++t) {
        if (!w.qright.in_domain(c, t)) continue;
        std::vector<MatC> imgs;
        for (const auto& bm : assm.B->fibers[x0]) {
          auto [cls, m] = out.h_mod_b->project(
              assm.right->underlying.act(x0, t),
              assm.right->apply(x0, t, bm));
          if (cls != w.qright.act(c, t))
            throw StructureError("quotient right action lands in wrong class");
          imgs.push_back(std::move(m));
        }
        act->set_images(c, t, std::move(imgs));
      }
    }
    out.right_on_quotient = act;
  }

  // left H-action on B/G: h |>~ Xi = (h |>_B b) <| G
  {
    auto act = std::make_shared<FellLeftAction>();
    act->H = assm.left->H;
    act->B = FellBundlePtr(out.b_mod_g, &out.b_mod_g->bundle);
    act->underlying = w.qleft;
    const auto& XG = *w.x_mod_g.base;
    for (ElemId h = 0; h < H.size(); ++h)
      for (ElemId c = 0; c < XG.size(); ++c) {
        if (!w.qleft.in_domain(h, c)) continue;
        ElemId x0 = w.x_mod_g.class_rep[c];
        std::vector<MatC> imgs;
        for (const auto& bm : assm.B->fibers[x0]) {
          auto [cls, m] = out.b_mod_g->project(
              assm.left->underlying.act(h, x0), assm.left->apply(h, x0, bm));
          if (cls != w.qleft.act(h, c))
            throw StructureError("quotient left action lands in wrong class");
          imgs.push_back(std::move(m));
        }
        act->set_images(h, c, std::move(imgs));
      }
    out.left_on_quotient = act;
  }
  return out;
}

BimoduleWitness build_bimodule(const FellAssumptions& assm) {
  if (!assm.certified)
    throw StructureError("build_bimodule needs certified assumptions");
  BimoduleWitness w;
  w.assm = assm;
  w.gpd = build_equivalence(assm.para);
  w.quot = quotient_fell_actions(assm, w.gpd);
  w.A_bundle = std::make_shared<FellBundle>(
      product_bundle_left(w.quot.left_on_quotient, w.gpd.A));
  w.C_bundle = std::make_shared<FellBundle>(
      product_bundle_right(w.quot.right_on_quotient, w.gpd.C));
  return w;
}

namespace {

// unique t in G with from <| t = to (freeness); throws when absent
ElemId transporter_right(const RightSelfSimilarAction& u, ElemId from, ElemId to) {
  const auto& G = *u.G();
  for (ElemId t = 0; t < G.size(); ++t)
    if (u.in_domain(from, t) && u.act(from, t) == to) return t;
  throw StructureError("no right transporter between orbit members");
}

ElemId transporter_left(const LeftSelfSimilarAction& u, ElemId from, ElemId to) {
  const auto& H = *u.H();
  for (ElemId h = 0; h < H.size(); ++h)
    if (u.in_domain(h, from) && u.act(h, from) == to) return h;
  throw StructureError("no left transporter between orbit members");
}

}  // namespace

MatC BimoduleWitness::left_act(ElemId a_arrow, const MatC& a_m, ElemId y,
                               const MatC& b_m) const {
  const auto& X = *assm.B->base;
  const auto& ul = assm.left->underlying;
  const auto& ur = assm.right->underlying;
  auto [xi, h] = gpd.A.pair_of(a_arrow);

  ElemId hy = ul.act(h, y);
  MatC mb = assm.left->apply(h, y, b_m);
  auto x = gpd.right_rep(xi, X.rng(hy));
  if (!x) throw StructureError("left bimodule action: no representative");
  ElemId rep0 = gpd.x_mod_g.class_rep[xi];
  ElemId t = transporter_right(ur, rep0, *x);
  MatC am = assm.right->apply(rep0, t, a_m);
  return assm.B->mul(*x, am, hy, mb);
}

MatC BimoduleWitness::right_act(ElemId y, const MatC& b_m, ElemId c_arrow,
                                const MatC& c_m) const {
  const auto& X = *assm.B->base;
  const auto& ul = assm.left->underlying;
  const auto& ur = assm.right->underlying;
  auto [t, eta] = gpd.C.pair_of(c_arrow);

  ElemId yt = ur.act(y, t);
  MatC mb = assm.right->apply(y, t, b_m);
  auto z = gpd.left_rep(eta, X.src(yt));
  if (!z) throw StructureError("right bimodule action: no representative");
  ElemId rep0 = gpd.h_mod_x.class_rep[eta];
  ElemId h = transporter_left(ul, rep0, *z);
  MatC cm = assm.left->apply(h, rep0, c_m);
  return assm.B->mul(yt, mb, *z, cm);
}

std::pair<ElemId, MatC> BimoduleWitness::lip(ElemId x, const MatC& a, ElemId y,
                                             const MatC& b) const {
  const auto& X = *assm.B->base;
  const auto& ul = assm.left->underlying;

  ElemId h = transporter_left(ul, X.src(y), X.src(x));
  MatC bstar = assm.B->star(y, b);
  MatC hb = assm.left->apply(h, X.inv(y), bstar);
  ElemId hyinv = ul.act(h, X.inv(y));
  MatC prod = assm.B->mul(x, a, hyinv, hb);
  ElemId arrow_x = X.mul_req(x, hyinv);
  auto [cls, mat] = quot.b_mod_g->project(arrow_x, prod);
  ElemId k = ul.restr(h, X.inv(y));
  ElemId a_arrow = gpd.A.id_of(cls, k);
  if (lip_override.active && lip_override.x == x && lip_override.y == y)
    return {a_arrow, lip_override.matrix};
  return {a_arrow, mat};
}

std::pair<ElemId, MatC> BimoduleWitness::rip(ElemId x, const MatC& a, ElemId y,
                                             const MatC& b) const {
  const auto& X = *assm.B->base;
  const auto& ur = assm.right->underlying;

  ElemId t = transporter_right(ur, X.rng(x), X.rng(y));
  MatC astar = assm.B->star(x, a);
  MatC at = assm.right->apply(X.inv(x), t, astar);
  ElemId xinvt = ur.act(X.inv(x), t);
  MatC prod = assm.B->mul(xinvt, at, y, b);
  ElemId arrow_x = X.mul_req(xinvt, y);
  auto [cls, mat] = quot.h_mod_b->project(arrow_x, prod);
  ElemId s = ur.restr(X.inv(x), t);
  ElemId c_arrow = gpd.C.id_of(s, cls);
  return {c_arrow, mat};
}

ValidationReport verify_bimodule(const BimoduleWitness& w) {
  ValidationReport rep;
  const auto& X = *w.assm.B->base;
  const auto& B = *w.assm.B;
  const auto& A = *w.gpd.A.base;
  const auto& C = *w.gpd.C.base;
  const auto& AB = *w.A_bundle;
  const auto& CB = *w.C_bundle;
  const double rel = B.rel_tol, abs = B.abs_tol;

  auto close = [&](const MatC& u, const MatC& v) {
    return approx_zero((u - v).norm(), std::max(v.norm(), 1.0), rel, abs);
  };

  // FE1: left action respects fibers, is associative, bounded
  {
    bool okf = true, oka = true, okn = true;
    long long cnt = 0;
    for (ElemId g = 0; g < A.size() && okf; ++g)
      for (ElemId y = 0; y < X.size(); ++y) {
        auto arrow = w.gpd.left_act(g, y);
        if (!arrow) continue;
        for (const auto& am : AB.fibers[g])
          for (const auto& bm : B.fibers[y]) {
            ++cnt;
            MatC res = w.left_act(g, am, y, bm);
            if (!B.contains(*arrow, res)) {
              rep.add_fail("FE1.left-fiber", {g, y});
              okf = false;
              break;
            }
            if (op_norm(res) > op_norm(am) * op_norm(bm) +
                                   std::max(rel * op_norm(am) * op_norm(bm), abs)) {
              rep.add_fail("FE1.left-norm", {g, y});
              okn = false;
              break;
            }
          }
        if (!okf || !okn) break;
      }
    for (ElemId g1 = 0; g1 < A.size() && oka && okf; ++g1)
      for (ElemId g2 : A.arrows_into(A.src(g1))) {
        auto g12 = A.mul(g1, g2);
        if (!g12) continue;
        for (ElemId y = 0; y < X.size(); ++y) {
          auto arrow2 = w.gpd.left_act(g2, y);
          if (!arrow2) continue;
          for (const auto& a1 : AB.fibers[g1])
            for (const auto& a2 : AB.fibers[g2])
              for (const auto& bm : B.fibers[y]) {
                ++cnt;
                MatC lhs = w.left_act(*g12, AB.mul(g1, a1, g2, a2), y, bm);
                MatC rhs = w.left_act(g1, a1, *arrow2, w.left_act(g2, a2, y, bm));
                if (!close(lhs, rhs)) {
                  rep.add_fail("FE1.left-assoc", {g1, g2, y});
                  oka = false;
                  break;
                }
              }
          if (!oka) break;
        }
        if (!oka) break;
      }
    if (okf && oka && okn) rep.add_pass("FE1.left-action", cnt);
  }

  // FE1: right action
  {
    bool okf = true, oka = true, okn = true;
    long long cnt = 0;
    for (ElemId g = 0; g < C.size() && okf; ++g)
      for (ElemId y = 0; y < X.size(); ++y) {
        auto arrow = w.gpd.right_act(y, g);
        if (!arrow) continue;
        for (const auto& cm : CB.fibers[g])
          for (const auto& bm : B.fibers[y]) {
            ++cnt;
            MatC res = w.right_act(y, bm, g, cm);
            if (!B.contains(*arrow, res)) {
              rep.add_fail("FE1.right-fiber", {y, g});
              okf = false;
              break;
            }
            if (op_norm(res) > op_norm(bm) * op_norm(cm) +
                                   std::max(rel * op_norm(bm) * op_norm(cm), abs)) {
              rep.add_fail("FE1.right-norm", {y, g});
              okn = false;
              break;
            }
          }
        if (!okf || !okn) break;
      }
    for (ElemId g1 = 0; g1 < C.size() && oka && okf; ++g1)
      for (ElemId g2 : C.arrows_into(C.src(g1))) {
        auto g12 = C.mul(g1, g2);
        if (!g12) continue;
        for (ElemId y = 0; y < X.size(); ++y) {
          auto arrow1 = w.gpd.right_act(y, g1);
          if (!arrow1) continue;
          for (const auto& c1 : CB.fibers[g1])
            for (const auto& c2 : CB.fibers[g2])
              for (const auto& bm : B.fibers[y]) {
                ++cnt;
                MatC lhs = w.right_act(y, bm, *g12, CB.mul(g1, c1, g2, c2));
                MatC rhs = w.right_act(*arrow1, w.right_act(y, bm, g1, c1), g2, c2);
                if (!close(lhs, rhs)) {
                  rep.add_fail("FE1.right-assoc", {y, g1, g2});
                  oka = false;
                  break;
                }
              }
          if (!oka) break;
        }
        if (!oka) break;
      }
    if (okf && oka && okn) rep.add_pass("FE1.right-action", cnt);
  }

  // FE1: the actions commute
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId ga = 0; ga < A.size() && ok; ++ga)
      for (ElemId y = 0; y < X.size(); ++y) {
        auto gay = w.gpd.left_act(ga, y);
        if (!gay) continue;
        for (ElemId gc = 0; gc < C.size(); ++gc) {
          auto ygc = w.gpd.right_act(y, gc);
          if (!ygc) continue;
          for (const auto& am : AB.fibers[ga])
            for (const auto& bm : B.fibers[y])
              for (const auto& cm : CB.fibers[gc]) {
                ++cnt;
                MatC lhs = w.right_act(*gay, w.left_act(ga, am, y, bm), gc, cm);
                MatC rhs = w.left_act(ga, am, *ygc, w.right_act(y, bm, gc, cm));
                if (!close(lhs, rhs)) {
                  rep.add_fail("FE1.commute", {ga, y, gc});
                  ok = false;
                  break;
                }
              }
          if (!ok) break;
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("FE1.commute", cnt);
  }

  // FE2.a: fiber compatibility of both inner products
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId x = 0; x < X.size() && ok; ++x)
      for (ElemId y = 0; y < X.size(); ++y) {
        if (w.gpd.frak_s[x] != w.gpd.frak_s[y]) continue;
        for (const auto& am : B.fibers[x]) {
          for (const auto& bm : B.fibers[y]) {
            ++cnt;
            auto [arr, mat] = w.lip(x, am, y, bm);
            auto back = w.gpd.left_act(arr, y);
            if (!back || *back != x) {
              rep.add_fail("FE2.a", {x, y}, "left inner product leaves the fiber");
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    for (ElemId x = 0; x < X.size() && ok; ++x)
      for (ElemId y = 0; y < X.size(); ++y) {
        if (w.gpd.frak_r[x] != w.gpd.frak_r[y]) continue;
        for (const auto& am : B.fibers[x]) {
          for (const auto& bm : B.fibers[y]) {
            ++cnt;
            auto [arr, mat] = w.rip(x, am, y, bm);
            auto fwd = w.gpd.right_act(x, arr);
            if (!fwd || *fwd != y) {
              rep.add_fail("FE2.a", {x, y}, "right inner product leaves the fiber");
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("FE2.a", cnt);
  }

  // FE2.b: adjoints
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId x = 0; x < X.size() && ok; ++x)
      for (ElemId y = 0; y < X.size(); ++y) {
        if (w.gpd.frak_s[x] != w.gpd.frak_s[y]) continue;
        for (const auto& am : B.fibers[x]) {
          for (const auto& bm : B.fibers[y]) {
            ++cnt;
            auto [arr1, m1] = w.lip(x, am, y, bm);
            auto [arr2, m2] = w.lip(y, bm, x, am);
            if (A.inv(arr1) != arr2 || !close(AB.star(arr1, m1), m2)) {
              rep.add_fail("FE2.b", {x, y}, "left adjoint");
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    for (ElemId x = 0; x < X.size() && ok; ++x)
      for (ElemId y = 0; y < X.size(); ++y) {
        if (w.gpd.frak_r[x] != w.gpd.frak_r[y]) continue;
        for (const auto& am : B.fibers[x]) {
          for (const auto& bm : B.fibers[y]) {
            ++cnt;
            auto [arr1, m1] = w.rip(x, am, y, bm);
            auto [arr2, m2] = w.rip(y, bm, x, am);
            if (C.inv(arr1) != arr2 || !close(CB.star(arr1, m1), m2)) {
              rep.add_fail("FE2.b", {x, y}, "right adjoint");
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("FE2.b", cnt);
  }

  // FE2.c: module linearity over the bundle algebras
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId g = 0; g < A.size() && ok; ++g)
      for (ElemId x = 0; x < X.size(); ++x) {
        auto gx = w.gpd.left_act(g, x);
        if (!gx) continue;
        for (ElemId y = 0; y < X.size(); ++y) {
          if (w.gpd.frak_s[x] != w.gpd.frak_s[y]) continue;
          for (const auto& am : AB.fibers[g])
            for (const auto& m1 : B.fibers[x])
              for (const auto& m2 : B.fibers[y]) {
                ++cnt;
                MatC moved = w.left_act(g, am, x, m1);
                auto [arrL, matL] = w.lip(*gx, moved, y, m2);
                auto [arr0, mat0] = w.lip(x, m1, y, m2);
                auto prod_arrow = A.mul(g, arr0);
                if (!prod_arrow || *prod_arrow != arrL ||
                    !close(matL, AB.mul(g, am, arr0, mat0))) {
                  rep.add_fail("FE2.c", {g, x, y}, "left linearity");
                  ok = false;
                  break;
                }
              }
          if (!ok) break;
        }
        if (!ok) break;
      }
    for (ElemId g = 0; g < C.size() && ok; ++g)
      for (ElemId y = 0; y < X.size(); ++y) {
        auto yg = w.gpd.right_act(y, g);
        if (!yg) continue;
        for (ElemId x = 0; x < X.size(); ++x) {
          if (w.gpd.frak_r[x] != w.gpd.frak_r[y]) continue;
          for (const auto& cm : CB.fibers[g])
            for (const auto& m1 : B.fibers[x])
              for (const auto& m2 : B.fibers[y]) {
                ++cnt;
                MatC moved = w.right_act(y, m2, g, cm);
                auto [arrR, matR] = w.rip(x, m1, *yg, moved);
                auto [arr0, mat0] = w.rip(x, m1, y, m2);
                auto prod_arrow = C.mul(arr0, g);
                if (!prod_arrow || *prod_arrow != arrR ||
                    !close(matR, CB.mul(arr0, mat0, g, cm))) {
                  rep.add_fail("FE2.c", {g, x, y}, "right linearity");
                  ok = false;
                  break;
                }
              }
          if (!ok) break;
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("FE2.c", cnt);
  }

  // FE2.d: <m1,m2>_A . m3 = m1 . <m2,m3>_C
  {
    bool ok = true;
    long long cnt = 0;
    for (ElemId x = 0; x < X.size() && ok; ++x)
      for (ElemId y = 0; y < X.size(); ++y) {
        if (w.gpd.frak_s[x] != w.gpd.frak_s[y]) continue;
        for (ElemId z = 0; z < X.size(); ++z) {
          if (w.gpd.frak_r[y] != w.gpd.frak_r[z]) continue;
          for (const auto& m1 : B.fibers[x])
            for (const auto& m2 : B.fibers[y])
              for (const auto& m3 : B.fibers[z]) {
                ++cnt;
                auto [arrA, matA] = w.lip(x, m1, y, m2);
                auto [arrC, matC] = w.rip(y, m2, z, m3);
                auto arrow_l = w.gpd.left_act(arrA, z);
                auto arrow_r = w.gpd.right_act(x, arrC);
                if (!arrow_l || !arrow_r || *arrow_l != *arrow_r) {
                  rep.add_fail("FE2.d", {x, y, z}, "arrow mismatch");
                  ok = false;
                  break;
                }
                MatC lhs = w.left_act(arrA, matA, z, m3);
                MatC rhs = w.right_act(x, m1, arrC, matC);
                if (!close(lhs, rhs)) {
                  rep.add_fail("FE2.d", {x, y, z});
                  ok = false;
                  break;
                }
              }
          if (!ok) break;
        }
        if (!ok) break;
      }
    if (ok) rep.add_pass("FE2.d", cnt);
  }

  // FE3: each fiber is an imprimitivity bimodule: fullness of both inner
  // products and compatibility of the norms
  {
    bool ok = true;
    for (ElemId x = 0; x < X.size() && ok; ++x) {
      ElemId au = w.gpd.frak_r[x];  // unit arrow of A
      ElemId cu = w.gpd.frak_s[x];  // unit arrow of C
      int adim = AB.fiber_dim(au), cdim = CB.fiber_dim(cu);
      std::vector<VecC> aspan, cspan;
      for (const auto& m1 : B.fibers[x])
        for (const auto& m2 : B.fibers[x]) {
          auto [arrA, matA] = w.lip(x, m1, x, m2);
          if (arrA != au) {
            rep.add_fail("FE3", {x}, "left inner product misses the unit fiber");
            ok = false;
            break;
          }
          auto ca = AB.coefficients(au, matA);
          if (!ca) {
            rep.add_fail("FE3", {x}, "left inner product escapes the fiber");
            ok = false;
            break;
          }
          aspan.push_back(*ca);
          auto [arrC, matC] = w.rip(x, m1, x, m2);
          if (arrC != cu) {
            rep.add_fail("FE3", {x}, "right inner product misses the unit fiber");
            ok = false;
            break;
          }
          auto cc = CB.coefficients(cu, matC);
          if (!cc) {
            rep.add_fail("FE3", {x}, "right inner product escapes the fiber");
            ok = false;
            break;
          }
          cspan.push_back(*cc);
        }
      if (!ok) break;
      auto rank_of = [&](const std::vector<VecC>& vs, int dim) {
        if (vs.empty()) return 0;
        MatC m(vs[0].size(), vs.size());
        for (size_t i = 0; i < vs.size(); ++i) m.col(i) = vs[i];
        Eigen::JacobiSVD<MatC> svd(m);
        if (svd.singularValues().size() == 0) return 0;
        double thr = std::max(rel * svd.singularValues()(0), abs);
        int r = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
          if (svd.singularValues()(i) > thr) ++r;
        return r;
      };
      if (rank_of(aspan, adim) < adim) {
        rep.add_fail("FE3", {x}, "left inner product is not full");
        ok = false;
        break;
      }
      if (rank_of(cspan, cdim) < cdim) {
        rep.add_fail("FE3", {x}, "right inner product is not full");
        ok = false;
        break;
      }
      // norm compatibility: ||<m,m>_A|| = ||m||^2 = ||<m,m>_C||
      for (const auto& m1 : B.fibers[x]) {
        double n2 = op_norm(m1) * op_norm(m1);
        auto [arrA, matA] = w.lip(x, m1, x, m1);
        auto [arrC, matC] = w.rip(x, m1, x, m1);
        if (!approx_zero(std::abs(op_norm(matA) - n2), std::max(n2, 1.0), rel, abs) ||
            !approx_zero(std::abs(op_norm(matC) - n2), std::max(n2, 1.0), rel, abs)) {
          rep.add_fail("FE3", {x}, "norm compatibility");
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) rep.add_pass("FE3", X.size());
  }

  return rep;
}

}  // namespace gpdkit
