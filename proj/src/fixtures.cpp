#include "gpdkit/fixtures.hpp"

#include <algorithm>
#include <random>

namespace gpdkit::fixtures {

using perm::Perm;

ElemId ZsDecomposition::act_of(ElemId h, ElemId t) const {
  auto it = act.find(static_cast<int64_t>(h) * K->size() + t);
  if (it == act.end()) throw StructureError("decomposition table miss");
  return it->second;
}

ElemId ZsDecomposition::restr_of(ElemId h, ElemId t) const {
  auto it = restr.find(static_cast<int64_t>(h) * K->size() + t);
  if (it == restr.end()) throw StructureError("decomposition table miss");
  return it->second;
}

ZsDecomposition elaborate_zs_decomposition(const GpdPtr& K,
                                           const std::vector<ElemId>& g_sub,
                                           const std::vector<ElemId>& h_sub) {
  const auto& k = *K;
  if (k.units().size() != 1)
    throw StructureError("decomposition needs a one-object groupoid");
  ElemId e = k.units()[0];

  auto is_subgroup = [&](const std::vector<ElemId>& s) {
    if (std::find(s.begin(), s.end(), e) == s.end()) return false;
    for (ElemId a : s) {
      if (std::find(s.begin(), s.end(), k.inv(a)) == s.end()) return false;
      for (ElemId b : s)
        if (std::find(s.begin(), s.end(), k.mul_req(a, b)) == s.end())
          return false;
    }
    return true;
  };
  if (!is_subgroup(g_sub) || !is_subgroup(h_sub))
    throw StructureError("decomposition inputs must be subgroups");
  for (ElemId a : g_sub)
    if (a != e && std::find(h_sub.begin(), h_sub.end(), a) != h_sub.end())
      throw StructureError("subgroups must intersect trivially");
  if (g_sub.size() * h_sub.size() != static_cast<size_t>(k.size()))
    throw StructureError("|G| |H| must equal |K|");

  ZsDecomposition out;
  out.K = K;
  out.g_sub = g_sub;
  out.h_sub = h_sub;
  for (ElemId h : h_sub)
    for (ElemId t : g_sub) {
      ElemId ht = k.mul_req(h, t);
      ElemId found_t = -1, found_h = -1;
      for (ElemId t2 : g_sub) {
        ElemId h2 = k.mul_req(k.inv(t2), ht);
        if (std::find(h_sub.begin(), h_sub.end(), h2) != h_sub.end()) {
          if (found_t != -1)
            throw StructureError("decomposition is not unique");
          found_t = t2;
          found_h = h2;
        }
      }
      if (found_t == -1)
        throw StructureError("element admits no G.H decomposition");
      int64_t key = static_cast<int64_t>(h) * k.size() + t;
      out.act[key] = found_t;
      out.restr[key] = found_h;
    }
  return out;
}

namespace {

// S4 as sorted permutations of {0,1,2,3}; labels by a^i r^j f^k decomposition.
struct S4Tables {
  std::vector<Perm> elems;  // sorted, index = id
  int id_of(const Perm& p) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), p);
    return static_cast<int>(it - elems.begin());
  }
};

const Perm kA{1, 2, 0, 3};   // (123) one-line, 0-based
const Perm kR{1, 2, 3, 0};   // (1234)
const Perm kF{2, 1, 0, 3};   // (13)

S4Tables make_s4_tables() {
  S4Tables t;
  t.elems = perm::generate(4, {kR, kF, kA});
  if (t.elems.size() != 24) throw StructureError("S4 generation failed");
  return t;
}

std::string power_label(const std::string& base, int i) {
  if (i == 0) return "";
  if (i == 1) return base;
  return base + std::to_string(i);
}

}  // namespace

const S4Fixture& s4_fixture() {
  static const S4Fixture fix = [] {
    S4Fixture f;
    S4Tables tab = make_s4_tables();

    // labels: every k in S4 is uniquely a^i * (r^j f^m)
    std::vector<std::string> labels(24);
    {
      std::vector<Perm> apow{perm::identity(4), kA, perm::compose(kA, kA)};
      std::vector<Perm> hs;
      std::vector<std::string> hl;
      for (int m = 0; m < 2; ++m)
        for (int j = 0; j < 4; ++j) {
          Perm p = perm::identity(4);
          for (int q = 0; q < j; ++q) p = perm::compose(kR, p);
          if (m) p = perm::compose(p, kF);
          hs.push_back(p);
          std::string l = power_label("r", j) + (m ? "f" : "");
          hl.push_back(l.empty() ? "e" : l);
        }
      for (int i = 0; i < 3; ++i)
        for (size_t j = 0; j < hs.size(); ++j) {
          Perm p = perm::compose(apow[i], hs[j]);
          std::string l;
          if (i == 0 && hl[j] == "e") l = "e";
          else if (i == 0) l = hl[j];
          else if (hl[j] == "e") l = power_label("a", i);
          else l = power_label("a", i) + "*" + hl[j];
          labels[tab.id_of(p)] = l;
        }
    }
    f.S4 = group_from_perms(tab.elems, labels);

    // standalone C3 and D4 with their embeddings
    {
      std::vector<Perm> gp{perm::identity(4), kA, perm::compose(kA, kA)};
      f.G = group_from_perms([&] {
        auto v = gp;
        std::sort(v.begin(), v.end());
        return v;
      }(), {});
      // relabel deterministically: id order in sorted perms
      std::vector<Perm> sorted = gp;
      std::sort(sorted.begin(), sorted.end());
      std::vector<std::string> gl(3);
      for (int i = 0; i < 3; ++i) {
        int idx = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(),
                                                    gp[i]) - sorted.begin());
        gl[idx] = power_label("a", i).empty() ? "e" : power_label("a", i);
      }
      GroupoidBuilder gb(3);
      // rebuild with labels in sorted order
      std::vector<std::vector<int>> table(3, std::vector<int>(3));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Perm p = perm::compose(sorted[i], sorted[j]);
          table[i][j] = static_cast<int>(std::lower_bound(sorted.begin(),
                                                          sorted.end(), p) -
                                         sorted.begin());
        }
      f.G = group_from_table(table, gl);
      f.g_embed.resize(3);
      for (int i = 0; i < 3; ++i) f.g_embed[i] = tab.id_of(sorted[i]);
    }
    {
      std::vector<Perm> hp = perm::generate(4, {kR, kF});
      if (hp.size() != 8) throw StructureError("D4 generation failed");
      std::vector<std::string> hl(8);
      for (int m = 0; m < 2; ++m)
        for (int j = 0; j < 4; ++j) {
          Perm p = perm::identity(4);
          for (int q = 0; q < j; ++q) p = perm::compose(kR, p);
          if (m) p = perm::compose(p, kF);
          int idx = static_cast<int>(std::lower_bound(hp.begin(), hp.end(), p) -
                                     hp.begin());
          std::string l = power_label("r", j) + (m ? "f" : "");
          hl[idx] = l.empty() ? "e" : l;
        }
      std::vector<std::vector<int>> table(8, std::vector<int>(8));
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          Perm p = perm::compose(hp[i], hp[j]);
          table[i][j] = static_cast<int>(std::lower_bound(hp.begin(), hp.end(),
                                                          p) - hp.begin());
        }
      f.H = group_from_table(table, hl);
      f.h_embed.resize(8);
      for (int i = 0; i < 8; ++i) f.h_embed[i] = tab.id_of(hp[i]);
    }

    std::vector<ElemId> g_sub, h_sub;
    for (ElemId i : f.g_embed) g_sub.push_back(i);
    for (ElemId i : f.h_embed) h_sub.push_back(i);
    std::sort(g_sub.begin(), g_sub.end());
    std::sort(h_sub.begin(), h_sub.end());
    f.zs = elaborate_zs_decomposition(f.S4, g_sub, h_sub);

    // X = C3 |x S4 (left translation); the D4-action via the tables
    const auto& s4 = *f.S4;
    auto k_act = [&](ElemId t, int p) {
      return static_cast<int>(s4.mul_req(f.g_embed[t], p));
    };
    std::vector<std::string> pt_labels(24);
    for (int p = 0; p < 24; ++p) pt_labels[p] = s4.label(p);
    f.action = zs_action_on_transformation_groupoid(
        f.zs, 24,
        [&](ElemId k, int p) { return static_cast<int>(s4.mul_req(k, p)); },
        pt_labels);
    f.X = f.action.X();
    return f;
  }();
  return fix;
}

LeftSelfSimilarAction zs_action_on_transformation_groupoid(
    const ZsDecomposition& zs, int n_points,
    const std::function<int(ElemId, int)>& k_act,
    const std::vector<std::string>& point_labels) {
  const auto& K = *zs.K;

  // standalone copies of G and H with dense ids following subgroup order
  std::vector<ElemId> g_sub = zs.g_sub, h_sub = zs.h_sub;
  std::vector<int> g_index(K.size(), -1), h_index(K.size(), -1);
  for (size_t i = 0; i < g_sub.size(); ++i) g_index[g_sub[i]] = static_cast<int>(i);
  for (size_t i = 0; i < h_sub.size(); ++i) h_index[h_sub[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> gt(g_sub.size(), std::vector<int>(g_sub.size()));
  std::vector<std::string> gl(g_sub.size());
  for (size_t i = 0; i < g_sub.size(); ++i) {
    gl[i] = K.label(g_sub[i]);
    for (size_t j = 0; j < g_sub.size(); ++j)
      gt[i][j] = g_index[K.mul_req(g_sub[i], g_sub[j])];
  }
  std::vector<std::vector<int>> ht(h_sub.size(), std::vector<int>(h_sub.size()));
  std::vector<std::string> hl(h_sub.size());
  for (size_t i = 0; i < h_sub.size(); ++i) {
    hl[i] = K.label(h_sub[i]);
    for (size_t j = 0; j < h_sub.size(); ++j)
      ht[i][j] = h_index[K.mul_req(h_sub[i], h_sub[j])];
  }
  // subgroups are closed, so the unit sits at index of e
  ElemId e = K.units()[0];
  if (g_index[e] != 0 || h_index[e] != 0)
    throw StructureError("subgroup lists must start with the unit");
  GpdPtr G = group_from_table(gt, gl);
  GpdPtr H = group_from_table(ht, hl);

  auto g_act = [&](ElemId t, int p) { return k_act(g_sub[t], p); };
  GpdPtr X = transformation_groupoid(G, n_points, g_act, point_labels);

  std::vector<ElemId> rho0(X->size(), 0);
  LeftSelfSimilarAction a(H, X, rho0);
  // h |> (t,p) = (h.t, (h|t) * p);  h |< (t,p) = h|t
  for (size_t hi = 0; hi < h_sub.size(); ++hi)
    for (size_t ti = 0; ti < g_sub.size(); ++ti) {
      ElemId hdott = zs.act_of(h_sub[hi], g_sub[ti]);
      ElemId hrest = zs.restr_of(h_sub[hi], g_sub[ti]);
      for (int p = 0; p < n_points; ++p) {
        ElemId from = static_cast<ElemId>(ti) * n_points + p;
        ElemId to = static_cast<ElemId>(g_index[hdott]) * n_points +
                    k_act(hrest, p);
        a.set_act(static_cast<ElemId>(hi), from, to);
        a.set_restr(static_cast<ElemId>(hi), from, h_index[hrest]);
      }
    }
  return a;
}

GpdPtr left_translation_groupoid(const GpdPtr& group) {
  const auto& g = *group;
  std::vector<std::string> pl(g.size());
  for (ElemId p = 0; p < g.size(); ++p) pl[p] = g.label(p);
  return transformation_groupoid(group, g.size(), [&](ElemId t, int p) {
    return static_cast<int>(g.mul_req(t, p));
  }, pl);
}

GpdPtr s4_on_s4() { return left_translation_groupoid(s4_fixture().S4); }

GpdPtr c3_on_c3() { return left_translation_groupoid(s4_fixture().G); }

std::vector<GpdPtr> groupoid_corpus() {
  std::vector<GpdPtr> out;
  out.push_back(trivial_groupoid(1));
  out.push_back(trivial_groupoid(4));
  out.push_back(cyclic_group(2));
  out.push_back(cyclic_group(3));
  out.push_back(cyclic_group(4));
  out.push_back(cyclic_group(6));
  // Z2 x Z2
  out.push_back(group_from_table({{0, 1, 2, 3},
                                  {1, 0, 3, 2},
                                  {2, 3, 0, 1},
                                  {3, 2, 1, 0}},
                                 {"e", "x", "y", "xy"}));
  // S3 on 3 points
  out.push_back(group_from_perms(perm::generate(3, {{1, 0, 2}, {1, 2, 0}}), {}));
  out.push_back(pair_groupoid(2));
  out.push_back(pair_groupoid(3));
  out.push_back(pair_groupoid(5));
  out.push_back(c3_on_c3());
  out.push_back(s4_fixture().H);  // D4
  // Z2 acting on two points by swap
  out.push_back(transformation_groupoid(cyclic_group(2), 2, [](ElemId t, int p) {
    return t == 0 ? p : 1 - p;
  }));
  // skew product Z4 -> Z2
  out.push_back(skew_product_groupoid(cyclic_group(4), cyclic_group(2),
                                      {0, 1, 0, 1}));
  // skew product of a pair groupoid by Z2 with the zero cocycle
  out.push_back(skew_product_groupoid(pair_groupoid(2), cyclic_group(2),
                                      {0, 0, 0, 0}));
  return out;
}

RightSelfSimilarAction mirror_action(const LeftSelfSimilarAction& a) {
  const auto& H = *a.H();
  const auto& X = *a.X();
  std::vector<ElemId> sigma0(X.size(), -1);
  for (ElemId u : X.units()) sigma0[u] = a.rho0(u);
  RightSelfSimilarAction m(a.H(), a.X(), sigma0);
  for (ElemId t = 0; t < H.size(); ++t)
    for (ElemId x = 0; x < X.size(); ++x) {
      if (!a.in_domain(H.inv(t), X.inv(x))) continue;
      m.set_act(x, t, X.inv(a.act(H.inv(t), X.inv(x))));
      m.set_restr(x, t, H.inv(a.restr(H.inv(t), X.inv(x))));
    }
  return m;
}

namespace {

// random matched pair: a seeded choice of a group K with a ZS subgroup pair,
// acting on its own elements by left translation
LeftSelfSimilarAction random_decomposition_action(uint32_t seed) {
  std::mt19937 rng(seed);

  // candidate (K, G, H) triples by generators over small permutation degrees
  struct Cand {
    int degree;
    std::vector<Perm> k_gens, g_gens, h_gens;
  };
  std::vector<Cand> cands = {
      // S3 = C3 . C2
      {3, {{1, 2, 0}, {1, 0, 2}}, {{1, 2, 0}}, {{1, 0, 2}}},
      // S3 = C2 . C3 (roles swapped)
      {3, {{1, 2, 0}, {1, 0, 2}}, {{1, 0, 2}}, {{1, 2, 0}}},
      // Z6 = Z2 x Z3 as a ZS (direct) product
      {5, {{1, 0, 2, 3, 4}, {0, 1, 3, 4, 2}}, {{1, 0, 2, 3, 4}}, {{0, 1, 3, 4, 2}}},
      // S4 = C3 . D4
      {4, {kA, kR, kF}, {kA}, {kR, kF}},
  };
  const Cand& c = cands[rng() % cands.size()];

  auto elems = perm::generate(c.degree, c.k_gens);
  GpdPtr K = group_from_perms(elems, {});
  auto sub_ids = [&](const std::vector<Perm>& gens) {
    auto sub = perm::generate(c.degree, gens);
    std::vector<ElemId> ids;
    for (const auto& p : sub)
      ids.push_back(static_cast<ElemId>(std::lower_bound(elems.begin(),
                                                         elems.end(), p) -
                                        elems.begin()));
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  auto zs = elaborate_zs_decomposition(K, sub_ids(c.g_gens), sub_ids(c.h_gens));
  const auto& k = *K;
  return zs_action_on_transformation_groupoid(zs, k.size(), [&k](ElemId t, int p) {
    return static_cast<int>(k.mul_req(t, p));
  });
}

}  // namespace

std::vector<LeftSelfSimilarAction> left_action_corpus() {
  std::vector<LeftSelfSimilarAction> out;
  for (const auto& g : groupoid_corpus()) {
    out.push_back(trivial_left_group_action(g));
    out.push_back(unit_groupoid_action(g));
  }
  out.push_back(skew_ss_action(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1}));
  out.push_back(skew_ss_action(cyclic_group(4), cyclic_group(2), {0, 0, 0, 0}));
  out.push_back(skew_ss_action(pair_groupoid(2), cyclic_group(2), {0, 0, 0, 0}));
  out.push_back(
      skew_ss_action(cyclic_group(6), cyclic_group(3), {0, 1, 2, 0, 1, 2}));
  out.push_back(s4_fixture().action);
  out.push_back(semidirect_two_sided_fixture().left);
  for (uint32_t seed = 1; seed <= 4; ++seed)
    out.push_back(random_decomposition_action(seed));
  return out;
}

std::vector<RightSelfSimilarAction> right_action_corpus() {
  std::vector<RightSelfSimilarAction> out;
  for (const auto& g : groupoid_corpus()) out.push_back(trivial_right_action(g));
  out.push_back(mirror_action(s4_fixture().action));
  out.push_back(mirror_action(skew_ss_action(cyclic_group(4), cyclic_group(2),
                                             {0, 1, 0, 1})));
  out.push_back(semidirect_two_sided_fixture().right);
  return out;
}

ParaEquivalence semidirect_two_sided_fixture() {
  GpdPtr X = pair_groupoid(4);
  GpdPtr Z2 = cyclic_group(2);
  auto shift = [](ElemId k, int p) { return (p + 2 * k) % 4; };

  std::vector<ElemId> rho0(X->size(), 0);
  LeftSelfSimilarAction L(Z2, X, rho0);
  for (ElemId h = 0; h < 2; ++h)
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) {
        ElemId x = p * 4 + q;
        L.set_act(h, x, shift(h, p) * 4 + shift(h, q));
        L.set_restr(h, x, h);
      }

  std::vector<ElemId> sigma0(X->size(), 0);
  RightSelfSimilarAction R(Z2, X, sigma0);
  for (ElemId t = 0; t < 2; ++t)
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) {
        ElemId x = p * 4 + q;
        R.set_act(x, t, shift(t, p) * 4 + shift(t, q));
        R.set_restr(x, t, t);
      }

  return certify_para_equivalence(std::move(L), std::move(R));
}

FellAssumptions s4_line_bundle_assumptions() {
  const auto& fix = s4_fixture();
  auto B = std::make_shared<FellBundle>(line_bundle(fix.X));

  auto left = std::make_shared<FellLeftAction>();
  left->H = fix.H;
  left->B = B;
  left->underlying = fix.action;
  const auto& H = *fix.H;
  const auto& X = *fix.X;
  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId x = 0; x < X.size(); ++x)
      if (fix.action.in_domain(h, x))
        left->set_images(h, x, {MatC::Identity(1, 1)});

  auto trivial_right = trivial_right_action(fix.X);
  auto right = std::make_shared<FellRightAction>(
      trivial_fell_right_action(B, trivial_right));
  return certify_fell_assumptions(B, left, right);
}

CrossedProductFixture crossed_product_fixture() {
  CrossedProductFixture out;
  out.action = skew_ss_action(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1});
  out.prod = zs_product_left(out.action);

  const auto& X = *out.action.X();
  const auto& P = *out.prod.base;

  MatC V(2, 2);
  V << 0, 1, 1, 0;
  auto vpow = [&](int k) { return k % 2 == 0 ? MatC(MatC::Identity(2, 2)) : V; };

  // degree homomorphisms: on X = Z4(c), deg(g,h') = g mod 2;
  // on X |><| H, deg2((x,h)) = deg(x) + h mod 2.
  auto deg_x = [&](ElemId x) { return (x / 2) % 2; };  // id = g*2 + h'
  auto deg_p = [&](ElemId e) {
    auto [x, h] = out.prod.pair_of(e);
    return (deg_x(x) + h) % 2;
  };

  UnitCStarData A2;
  A2.dim.assign(X.size(), 0);
  for (ElemId u : X.units()) A2.dim[u] = 2;
  std::vector<MatC> alphaX(X.size());
  for (ElemId x = 0; x < X.size(); ++x) alphaX[x] = vpow(deg_x(x));
  out.B = std::make_shared<FellBundle>(crossed_product_bundle(A2, out.action.X(),
                                                              alphaX));

  UnitCStarData A2p;
  A2p.dim.assign(P.size(), 0);
  for (ElemId u : P.units()) A2p.dim[u] = 2;
  std::vector<MatC> alphaP(P.size());
  for (ElemId e = 0; e < P.size(); ++e) alphaP[e] = vpow(deg_p(e));
  out.big = std::make_shared<FellBundle>(crossed_product_bundle(A2p, out.prod.base,
                                                                alphaP));

  // the H-action on B: basis element E W_x -> (U_k E U_k*) W_{h|>x} with
  // U_k the cocycle value at k = (h |> r(x), h)
  auto left = std::make_shared<FellLeftAction>();
  left->H = out.action.H();
  left->B = out.B;
  left->underlying = out.action;
  const auto& H = *out.action.H();
  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId x = 0; x < X.size(); ++x) {
      if (!out.action.in_domain(h, x)) continue;
      ElemId hrx = out.action.act(h, X.rng(x));
      MatC U = vpow((deg_x(hrx) + h) % 2);
      ElemId hx = out.action.act(h, x);
      std::vector<MatC> imgs;
      for (const auto& bm : out.B->fibers[x]) {
        MatC a = bm * alphaX[x].adjoint();
        imgs.push_back(U * a * U.adjoint() * alphaX[hx]);
      }
      left->set_images(h, x, std::move(imgs));
    }

  auto trivial_r = trivial_right_action(out.action.X());
  auto right = std::make_shared<FellRightAction>(
      trivial_fell_right_action(out.B, trivial_r));
  out.assumptions = certify_fell_assumptions(out.B, left, right);
  return out;
}

StarCommutingSystem z6_system() {
  StarCommutingSystem sys;
  sys.n = 6;
  sys.S.resize(6);
  sys.T.resize(6);
  for (int i = 0; i < 6; ++i) {
    sys.S[i] = (i + 2) % 6;
    sys.T[i] = (i + 3) % 6;
  }
  return sys;
}

}  // namespace gpdkit::fixtures
