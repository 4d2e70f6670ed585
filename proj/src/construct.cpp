#include "gpdkit/construct.hpp"

#include <algorithm>
#include <map>

namespace gpdkit {

ProductGroupoid zs_product_left(const LeftSelfSimilarAction& a) {
  const auto& H = *a.H();
  const auto& X = *a.X();

  ProductGroupoid P;
  P.second_stride = H.size();
  // membership: rho(x^-1) = r_H(h), i.e. rho0(src(x)) = rng(h)
  for (ElemId x = 0; x < X.size(); ++x)
    for (ElemId h = 0; h < H.size(); ++h)
      if (a.rho0(X.src(x)) == H.rng(h)) {
        ElemId e = static_cast<ElemId>(P.pairs.size());
        P.pairs.emplace_back(x, h);
        P.index[static_cast<int64_t>(x) * P.second_stride + h] = e;
      }

  int n = static_cast<int>(P.pairs.size());
  GroupoidBuilder b(n);
  for (ElemId e = 0; e < n; ++e) {
    auto [x, h] = P.pairs[e];
    b.label(e, "(" + X.label(x) + "," + H.label(h) + ")");
    if (X.is_unit(x) && H.is_unit(h)) b.unit(e);
    // r(x,h) = (r(x), r_H(h) |< x^-1); s(x,h) = (h^-1 |> s(x), s_H(h))
    ElemId rh = a.restr(H.rng(h), X.inv(x));
    b.rng(e, P.id_of(X.rng(x), rh));
    ElemId sx = a.act(H.inv(h), X.src(x));
    b.src(e, P.id_of(sx, H.src(h)));
    // (x,h)^-1 = (h^-1 |> x^-1, h^-1 |< x^-1)
    b.inv(e, P.id_of(a.act(H.inv(h), X.inv(x)), a.restr(H.inv(h), X.inv(x))));
  }
  // (x,h)(y,k) = (x(h|>y), (h|<y)k) whenever h^-1 |> s(x) = r(y)
  for (ElemId e1 = 0; e1 < n; ++e1) {
    auto [x, h] = P.pairs[e1];
    ElemId sx = a.act(H.inv(h), X.src(x));
    for (ElemId e2 = 0; e2 < n; ++e2) {
      auto [y, k] = P.pairs[e2];
      if (X.rng(y) != sx) continue;
      ElemId hy = a.act(h, y);
      ElemId prod_x = X.mul_req(x, hy);
      ElemId prod_h = H.mul_req(a.restr(h, y), k);
      b.mul(e1, e2, P.id_of(prod_x, prod_h));
    }
  }
  P.base = b.build();
  return P;
}

ProductGroupoid zs_product_right(const RightSelfSimilarAction& a) {
  const auto& G = *a.G();
  const auto& X = *a.X();

  ProductGroupoid P;
  P.second_stride = X.size();
  // membership: s_G(t) = sigma(r(x)) = sigma0(rng(x))
  for (ElemId t = 0; t < G.size(); ++t)
    for (ElemId x = 0; x < X.size(); ++x)
      if (G.src(t) == a.sigma0(X.rng(x))) {
        ElemId e = static_cast<ElemId>(P.pairs.size());
        P.pairs.emplace_back(t, x);
        P.index[static_cast<int64_t>(t) * P.second_stride + x] = e;
      }

  int n = static_cast<int>(P.pairs.size());
  GroupoidBuilder b(n);
  for (ElemId e = 0; e < n; ++e) {
    auto [t, x] = P.pairs[e];
    b.label(e, "(" + G.label(t) + "," + X.label(x) + ")");
    if (G.is_unit(t) && X.is_unit(x)) b.unit(e);
    // r(t,x) = (sigma(r(x) <| t^-1), r(x) <| t^-1); s(t,x) = (sigma(s(x)), s(x))
    ElemId rx = a.act(X.rng(x), G.inv(t));
    b.rng(e, P.id_of(a.sigma0(rx), rx));
    b.src(e, P.id_of(a.sigma0(X.src(x)), X.src(x)));
    // (t,x)^-1 = (x^-1 |< t^-1, x^-1 <| t^-1)
    b.inv(e, P.id_of(a.restr(X.inv(x), G.inv(t)), a.act(X.inv(x), G.inv(t))));
  }
  // (s,x)(t,y) = (s(x|<t), (x<|t)y) whenever s(x) = r(y) <| t^-1
  for (ElemId e2 = 0; e2 < n; ++e2) {
    auto [t, y] = P.pairs[e2];
    ElemId ry = a.act(X.rng(y), G.inv(t));
    for (ElemId e1 = 0; e1 < n; ++e1) {
      auto [s, x] = P.pairs[e1];
      if (X.src(x) != ry) continue;
      ElemId prod_g = G.mul_req(s, a.restr(x, t));
      ElemId prod_x = X.mul_req(a.act(x, t), y);
      b.mul(e1, e2, P.id_of(prod_g, prod_x));
    }
  }
  P.base = b.build();
  return P;
}

namespace {

// Orbit classes for a generic orbit function, canonical rep = min id.
struct Classes {
  std::vector<ElemId> class_map, class_rep;
  std::vector<std::vector<ElemId>> members;
};

Classes make_classes(int n, const std::function<std::vector<ElemId>(ElemId)>& orbit) {
  Classes c;
  c.class_map.assign(n, -1);
  for (ElemId x = 0; x < n; ++x) {
    if (c.class_map[x] != -1) continue;
    auto orb = orbit(x);
    ElemId cls = static_cast<ElemId>(c.class_rep.size());
    c.class_rep.push_back(orb.empty() ? x : orb.front());
    c.members.push_back(orb);
    for (ElemId y : orb) {
      if (c.class_map[y] != -1 && c.class_map[y] != cls)
        throw StructureError("orbits are not a partition");
      c.class_map[y] = cls;
    }
  }
  return c;
}

}  // namespace

OrbitGroupoid orbit_groupoid_left(const LeftSelfSimilarAction& a) {
  auto fr = is_free(a);
  if (!fr.free) throw NotFreeError(fr.h, fr.x);
  const auto& X = *a.X();

  Classes cls = make_classes(X.size(), [&](ElemId x) { return a.orbit(x); });
  int n = static_cast<int>(cls.class_rep.size());
  GroupoidBuilder b(n);
  for (ElemId c = 0; c < n; ++c) {
    ElemId rep = cls.class_rep[c];
    b.label(c, "[" + X.label(rep) + "]");
    if (X.is_unit(rep)) b.unit(c);
    b.src(c, cls.class_map[X.src(rep)]);
    b.rng(c, cls.class_map[X.rng(rep)]);
    b.inv(c, cls.class_map[X.inv(rep)]);
  }
  // class product xi.eta = [x y] for representatives with s(x) = r(y);
  // checked over every representative pair (independence is a theorem for
  // free actions, and doubles as a freeness regression test here).
  for (ElemId c1 = 0; c1 < n; ++c1)
    for (ElemId c2 = 0; c2 < n; ++c2) {
      if (cls.class_map[X.src(cls.class_rep[c1])] !=
          cls.class_map[X.rng(cls.class_rep[c2])])
        continue;
      ElemId prod_class = -1;
      for (ElemId x : cls.members[c1])
        for (ElemId y : cls.members[c2]) {
          if (X.src(x) != X.rng(y)) continue;
          ElemId p = cls.class_map[X.mul_req(x, y)];
          if (prod_class == -1) prod_class = p;
          else if (prod_class != p)
            throw StructureError("orbit product depends on representatives");
        }
      if (prod_class == -1)
        throw StructureError("no composable representatives for class pair");
      b.mul(c1, c2, prod_class);
    }

  OrbitGroupoid O;
  O.base = b.build();
  O.class_map = cls.class_map;
  O.class_rep = cls.class_rep;
  return O;
}

OrbitGroupoid orbit_groupoid_right(const RightSelfSimilarAction& a) {
  auto fr = is_free_right(a);
  if (!fr.free) throw NotFreeError(fr.h, fr.x);
  const auto& X = *a.X();

  Classes cls = make_classes(X.size(), [&](ElemId x) { return a.orbit(x); });
  int n = static_cast<int>(cls.class_rep.size());
  GroupoidBuilder b(n);
  for (ElemId c = 0; c < n; ++c) {
    ElemId rep = cls.class_rep[c];
    b.label(c, "[" + X.label(rep) + "]");
    if (X.is_unit(rep)) b.unit(c);
    b.src(c, cls.class_map[X.src(rep)]);
    b.rng(c, cls.class_map[X.rng(rep)]);
    b.inv(c, cls.class_map[X.inv(rep)]);
  }
  for (ElemId c1 = 0; c1 < n; ++c1)
    for (ElemId c2 = 0; c2 < n; ++c2) {
      if (cls.class_map[X.src(cls.class_rep[c1])] !=
          cls.class_map[X.rng(cls.class_rep[c2])])
        continue;
      ElemId prod_class = -1;
      for (ElemId x : cls.members[c1])
        for (ElemId y : cls.members[c2]) {
          if (X.src(x) != X.rng(y)) continue;
          ElemId p = cls.class_map[X.mul_req(x, y)];
          if (prod_class == -1) prod_class = p;
          else if (prod_class != p)
            throw StructureError("orbit product depends on representatives");
        }
      if (prod_class == -1)
        throw StructureError("no composable representatives for class pair");
      b.mul(c1, c2, prod_class);
    }

  OrbitGroupoid O;
  O.base = b.build();
  O.class_map = cls.class_map;
  O.class_rep = cls.class_rep;
  return O;
}

LeftSelfSimilarAction quotient_left_action(const ParaEquivalence& p,
                                           const OrbitGroupoid& x_mod_g) {
  if (!p.certified)
    throw StructureError("quotient actions need a certified para-equivalence");
  const auto& L = p.left;
  const auto& R = p.right;
  const auto& X = *L.X();
  const auto& H = *L.H();
  const auto& Q = *x_mod_g.base;

  // rho~ on classes, checked representative-independent (C0).
  std::vector<ElemId> rho0(Q.size(), -1);
  for (ElemId x = 0; x < X.size(); ++x) {
    ElemId c = x_mod_g.class_map[x];
    if (!Q.is_unit(c)) continue;
    if (!X.is_unit(x)) continue;
    ElemId v = L.rho0(x);
    if (rho0[c] == -1) rho0[c] = v;
    else if (rho0[c] != v)
      throw StructureError("quotient momentum map depends on representatives");
  }

  LeftSelfSimilarAction qa(L.H(), x_mod_g.base, rho0);
  // h |>~ (xG) = (h|>x) G and h |<~ (xG) = h|<x, both checked over all reps.
  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId c = 0; c < Q.size(); ++c) {
      if (H.src(h) != rho0[Q.rng(c)]) continue;
      ElemId act_class = -1, restr_val = -1;
      for (ElemId x = 0; x < X.size(); ++x) {
        if (x_mod_g.class_map[x] != c) continue;
        if (!L.in_domain(h, x))
          throw StructureError("quotient action representative off-domain");
        ElemId ac = x_mod_g.class_map[L.act(h, x)];
        ElemId rv = L.restr(h, x);
        if (act_class == -1) { act_class = ac; restr_val = rv; }
        else if (act_class != ac || restr_val != rv)
          throw StructureError("quotient action depends on representatives");
      }
      qa.set_act(h, c, act_class);
      qa.set_restr(h, c, restr_val);
    }
  return qa;
}

RightSelfSimilarAction quotient_right_action(const ParaEquivalence& p,
                                             const OrbitGroupoid& h_mod_x) {
  if (!p.certified)
    throw StructureError("quotient actions need a certified para-equivalence");
  const auto& L = p.left;
  const auto& R = p.right;
  const auto& X = *R.X();
  const auto& G = *R.G();
  const auto& Q = *h_mod_x.base;

  std::vector<ElemId> sigma0(Q.size(), -1);
  for (ElemId x = 0; x < X.size(); ++x) {
    ElemId c = h_mod_x.class_map[x];
    if (!Q.is_unit(c)) continue;
    if (!X.is_unit(x)) continue;
    ElemId v = R.sigma0(x);
    if (sigma0[c] == -1) sigma0[c] = v;
    else if (sigma0[c] != v)
      throw StructureError("quotient momentum map depends on representatives");
  }

  RightSelfSimilarAction qa(R.G(), h_mod_x.base, sigma0);
  // (Hx) <|~ s = H(x<|s) and (Hx) |<~ s = x|<s, checked over all reps.
  for (ElemId c = 0; c < Q.size(); ++c)
    for (ElemId t = 0; t < G.size(); ++t) {
      if (sigma0[Q.src(c)] != G.rng(t)) continue;
      ElemId act_class = -1, restr_val = -1;
      for (ElemId x = 0; x < X.size(); ++x) {
        if (h_mod_x.class_map[x] != c) continue;
        if (!R.in_domain(x, t))
          throw StructureError("quotient action representative off-domain");
        ElemId ac = h_mod_x.class_map[R.act(x, t)];
        ElemId rv = R.restr(x, t);
        if (act_class == -1) { act_class = ac; restr_val = rv; }
        else if (act_class != ac || restr_val != rv)
          throw StructureError("quotient action depends on representatives");
      }
      qa.set_act(c, t, act_class);
      qa.set_restr(c, t, restr_val);
    }
  return qa;
}

MatchedPairLift matched_pair_lift(const LeftSelfSimilarAction& a) {
  const auto& H = *a.H();
  const auto& X = *a.X();

  MatchedPairLift lift;
  auto& P = lift.htilde;
  P.second_stride = X.size();
  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId u : X.units())
      if (H.src(h) == a.rho0(u)) {
        ElemId e = static_cast<ElemId>(P.pairs.size());
        P.pairs.emplace_back(h, u);
        P.index[static_cast<int64_t>(h) * P.second_stride + u] = e;
      }

  int n = static_cast<int>(P.pairs.size());
  GroupoidBuilder b(n);
  for (ElemId e = 0; e < n; ++e) {
    auto [h, u] = P.pairs[e];
    b.label(e, "(" + H.label(h) + "," + X.label(u) + ")");
    if (H.is_unit(h)) b.unit(e);
    b.src(e, P.id_of(a.rho0(u), u));
    ElemId hu = a.act(h, u);
    b.rng(e, P.id_of(a.rho0(hu), hu));
    b.inv(e, P.id_of(H.inv(h), hu));
  }
  // (k, h|>u)(h, u) = (kh, u)
  for (ElemId e1 = 0; e1 < n; ++e1) {
    auto [k, v] = P.pairs[e1];
    for (ElemId e2 = 0; e2 < n; ++e2) {
      auto [h, u] = P.pairs[e2];
      if (a.act(h, u) != v) continue;
      b.mul(e1, e2, P.id_of(H.mul_req(k, h), u));
    }
  }
  P.base = b.build();

  // Lifted action of Htilde on X: momentum map = range map of X.
  std::vector<ElemId> rho0(X.size(), -1);
  for (ElemId u : X.units()) rho0[u] = P.id_of(a.rho0(u), u);
  LeftSelfSimilarAction lifted(P.base, a.X(), rho0);
  for (ElemId e = 0; e < n; ++e) {
    auto [h, u] = P.pairs[e];
    for (ElemId x = 0; x < X.size(); ++x) {
      if (X.rng(x) != u) continue;
      lifted.set_act(e, x, a.act(h, x));
      lifted.set_restr(e, x, P.id_of(a.restr(h, x), X.src(x)));
    }
  }
  lift.lifted = std::move(lifted);
  return lift;
}

Isomorphism matched_lift_iso(const LeftSelfSimilarAction& a,
                             const MatchedPairLift& lift) {
  ProductGroupoid tilde_prod = zs_product_left(lift.lifted);
  ProductGroupoid plain_prod = zs_product_left(a);

  std::vector<ElemId> map(tilde_prod.base->size());
  for (ElemId e = 0; e < tilde_prod.base->size(); ++e) {
    auto [x, ht] = tilde_prod.pair_of(e);
    ElemId h = lift.htilde.pair_of(ht).first;
    map[e] = plain_prod.id_of(x, h);
  }
  Isomorphism iso{tilde_prod.base, plain_prod.base, map};
  if (!iso.is_isomorphism())
    throw StructureError("matched-pair lift comparison map failed validation");
  return iso;
}

LeftSelfSimilarAction skew_ss_action(const GpdPtr& g, const GpdPtr& h,
                                     const std::vector<ElemId>& c) {
  const auto& H = *h;
  if (H.units().size() != 1)
    throw StructureError("skew actions need a one-object acting groupoid");
  GpdPtr gc = skew_product_groupoid(g, h, c);
  const auto& X = *gc;
  int m = H.size();
  ElemId e0 = H.units()[0];

  std::vector<ElemId> rho0(X.size(), -1);
  for (ElemId u : X.units()) rho0[u] = e0;
  LeftSelfSimilarAction a(h, gc, rho0);
  // k |> (a, k') = (a, k' k^-1); k |< (a, k') = c(a)^-1 k c(a)
  for (ElemId k = 0; k < m; ++k)
    for (ElemId e = 0; e < X.size(); ++e) {
      ElemId ga = e / m, hp = e % m;
      a.set_act(k, e, ga * m + H.mul_req(hp, H.inv(k)));
      a.set_restr(k, e, H.mul_req({H.inv(c[ga]), k, c[ga]}));
    }
  return a;
}

}  // namespace gpdkit
