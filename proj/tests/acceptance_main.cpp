// Acceptance suite: runs each shipped criterion end to end and prints one
// pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gpdkit/algebra.hpp"
#include "gpdkit/fixtures.hpp"
#include "gpdkit/registry.hpp"

using namespace gpdkit;

namespace {

struct Criterion {
  std::string name;
  double time_limit_s;  // <= 0: untimed
  std::function<bool(std::string&)> run;
};

bool expect(bool cond, std::string& log, const std::string& msg) {
  if (!cond) log += (log.empty() ? "" : "; ") + msg;
  return cond;
}

// ---- 1: the S4 = C3 |><| D4 decomposition tables --------------------------

bool criterion_s4_tables(std::string& log) {
  const auto& fix = fixtures::s4_fixture();
  const auto& s4 = *fix.S4;

  const char* hs[] = {"e", "r", "r2", "r3", "f", "rf", "r2f", "r3f"};
  const char* ts[] = {"e", "a", "a2"};
  // Frozen action table h.t (rows h, columns t) and restriction table h|t.
  const char* act[8][3] = {
      {"e", "a", "a2"}, {"e", "a2", "a"}, {"e", "a", "a2"}, {"e", "a2", "a"},
      {"e", "a2", "a"}, {"e", "a", "a2"}, {"e", "a2", "a"}, {"e", "a", "a2"}};
  const char* restr[8][3] = {
      {"e", "e", "e"},     {"r", "r2f", "r3"},  {"r2", "rf", "r3f"},
      {"r3", "r", "r2f"},  {"f", "f", "f"},     {"rf", "r3f", "r2"},
      {"r2f", "r3", "r"},  {"r3f", "r2", "rf"}};

  bool ok = true;
  int cells = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 3; ++j) {
      ElemId h = *s4.find_label(hs[i] == std::string("e") ? "e" : hs[i]);
      ElemId t = *s4.find_label(ts[j] == std::string("e") ? "e" : ts[j]);
      ElemId got_act = fix.zs.act_of(h, t);
      ElemId got_restr = fix.zs.restr_of(h, t);
      ok &= expect(s4.label(got_act) == act[i][j], log,
                   std::string("action cell (") + hs[i] + "," + ts[j] +
                       ") = " + s4.label(got_act) + ", want " + act[i][j]);
      ok &= expect(s4.label(got_restr) == restr[i][j], log,
                   std::string("restriction cell (") + hs[i] + "," + ts[j] +
                       ") = " + s4.label(got_restr) + ", want " + restr[i][j]);
      cells += 2;
    }
  ok &= expect(cells == 48, log, "expected 48 cells");
  return ok;
}

// ---- 2: S4 orbit count and the C3 |x C3 isomorphism -----------------------

bool criterion_s4_orbits(std::string& log) {
  const auto& fix = fixtures::s4_fixture();
  auto orbit = orbit_groupoid_left(fix.action);
  bool ok = expect(orbit.base->size() == 9, log,
                   "orbit groupoid has " + std::to_string(orbit.base->size()) +
                       " elements, want 9");
  ok &= expect(validate_groupoid(*orbit.base).ok(), log, "orbit laws fail");
  ok &= expect(iso_check(orbit.base, fixtures::c3_on_c3()).has_value(), log,
               "orbit groupoid is not isomorphic to C3 |x C3");
  return ok;
}

// ---- 3: the Morita pair M24 ~ M3 ------------------------------------------

bool criterion_morita_pair(std::string& log) {
  auto sum_big = algebra_summary(*fixtures::s4_on_s4());
  auto sum_small = algebra_summary(*fixtures::c3_on_c3());
  bool ok = expect(sum_big.principal && sum_big.block_dims ==
                                            std::vector<int>{24},
                   log, "S4 |x S4 must be principal with one block of dim 24");
  ok &= expect(sum_small.principal && sum_small.block_dims ==
                                          std::vector<int>{3},
               log, "C3 |x C3 must be principal with one block of dim 3");
  if (ok)
    ok &= expect(morita_compatible(sum_big, sum_small), log,
                 "block counts must agree");
  // the product groupoid of the fixture is the S4 |x S4 model
  auto prod = zs_product_left(fixtures::s4_fixture().action);
  auto sum_prod = algebra_summary(*prod.base);
  ok &= expect(sum_prod.principal && sum_prod.block_dims ==
                                         std::vector<int>{24},
               log, "(C3 |x S4) |><| D4 must have a single 24-block");
  return ok;
}

// ---- 4: trivial isomorphisms over the corpus -------------------------------

bool criterion_trivial_isos(std::string& log) {
  bool ok = true;
  for (const auto& x : fixtures::groupoid_corpus()) {
    if (x->size() > 50) continue;
    {
      auto prod = zs_product_left(unit_groupoid_action(x));
      std::vector<ElemId> map(prod.base->size());
      for (ElemId e = 0; e < prod.base->size(); ++e)
        map[e] = prod.pair_of(e).first;
      Isomorphism iso{prod.base, x, map};
      ok &= expect(iso.is_isomorphism(), log,
                   "X |><| X0 != X for a corpus fixture");
    }
    {
      auto prod = zs_product_left(trivial_left_group_action(x));
      std::vector<ElemId> map(prod.base->size());
      for (ElemId e = 0; e < prod.base->size(); ++e)
        map[e] = prod.pair_of(e).first;
      Isomorphism iso{prod.base, x, map};
      ok &= expect(iso.is_isomorphism(), log,
                   "X |><| {e} != X for a corpus fixture");
    }
  }
  return ok;
}

// ---- 5: metatheorem suite ---------------------------------------------------

bool criterion_metatheorems(std::string& log) {
  auto corpus = fixtures::left_action_corpus();
  bool ok = expect(corpus.size() >= 20, log,
                   "need at least 20 corpus actions, have " +
                       std::to_string(corpus.size()));
  for (const auto& a : corpus) {
    ok &= expect(check_left_axioms(a).ok(), log, "corpus action fails L1-L6");
    ok &= expect(verify_derived_left_laws(a).ok(), log,
                 "derived laws L7-L10 violated");
    ok &= expect(counting_haar_invariance(a).ok(), log,
                 "counting-measure invariance violated");
    if (is_free(a).free) {
      // the orbit construction re-checks representative independence
      try {
        orbit_groupoid_left(a);
      } catch (const StructureError& e) {
        ok &= expect(false, log, std::string("orbit construction: ") + e.what());
      }
    }
  }
  for (const auto& r : fixtures::right_action_corpus()) {
    ok &= expect(check_right_axioms(r).ok(), log, "corpus action fails R1-R6");
    ok &= expect(verify_derived_right_laws(r).ok(), log,
                 "derived laws R7-R10 violated");
  }
  // counting-measure invariance survives quotients
  auto two = fixtures::semidirect_two_sided_fixture();
  auto xg = orbit_groupoid_right(two.right);
  ok &= expect(counting_haar_invariance(quotient_left_action(two, xg)).ok(),
               log, "quotient counting-measure invariance violated");
  return ok;
}

// ---- 6: the equivalence-theorem verifier ------------------------------------

bool criterion_equivalence(std::string& log) {
  bool ok = true;
  for (const auto& a : fixtures::left_action_corpus()) {
    if (!is_free(a).free) continue;
    auto w = one_sided_equivalence(a);
    ok &= expect(verify_equivalence(w).ok(), log,
                 "one-sided witness fails verification");
  }
  {
    auto w = one_sided_equivalence(fixtures::s4_fixture().action);
    ok &= expect(verify_equivalence(w).ok(), log, "S4 witness fails");
  }
  {
    auto p = fixtures::semidirect_two_sided_fixture();
    ok &= expect(p.certified, log, "semidirect fixture fails certification");
    auto w = build_equivalence(p);
    ok &= expect(verify_equivalence(w).ok(), log,
                 "semidirect two-sided witness fails");
  }
  return ok;
}

// ---- 7: the skew-product example --------------------------------------------

bool criterion_skew(std::string& log) {
  auto a = skew_ss_action(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1});
  auto w = one_sided_equivalence(a);
  bool ok = expect(verify_equivalence(w).ok(), log, "skew witness fails");
  auto orbit = orbit_groupoid_left(a);
  ok &= expect(iso_check(orbit.base, cyclic_group(4)).has_value(), log,
               "H\\G(c) is not isomorphic to Z/4");
  return ok;
}

// ---- 8: the imprimitivity theorem at desk scale -----------------------------

bool criterion_fell(std::string& log) {
  bool ok = true;
  {
    auto assm = fixtures::s4_line_bundle_assumptions();
    ok &= expect(assm.certified, log, "S4 line-bundle assumptions fail");
    if (assm.certified) {
      auto w = build_bimodule(assm);
      ok &= expect(verify_bimodule(w).ok(), log,
                   "S4 line-bundle bimodule fails FE1-FE3");
    }
  }
  {
    auto fix = fixtures::crossed_product_fixture();
    ok &= expect(fix.assumptions.certified, log,
                 "crossed-product assumptions fail");
    if (fix.assumptions.certified) {
      auto w = build_bimodule(fix.assumptions);
      ok &= expect(verify_bimodule(w).ok(), log,
                   "crossed-product bimodule fails FE1-FE3");
      // structure-constant identity B(A,X,a|) |><| H = B(A,X |><| H,a)
      auto pb = product_bundle_left(fix.assumptions.left, fix.prod);
      const auto& P = *fix.prod.base;
      for (ElemId e1 = 0; e1 < P.size() && ok; ++e1)
        for (ElemId e2 : P.arrows_into(P.src(e1))) {
          if (!P.mul(e1, e2)) continue;
          auto tl = structure_constants(pb, e1, e2);
          auto tr = structure_constants(*fix.big, e1, e2);
          for (size_t i = 0; i < tl.size() && ok; ++i)
            for (size_t j = 0; j < tl[i].size(); ++j) {
              double scale = std::max(tr[i][j].norm(), 1.0);
              if ((tl[i][j] - tr[i][j]).norm() > 1e-9 * scale) {
                ok &= expect(false, log, "structure constants differ");
                break;
              }
            }
          if (!ok) break;
        }
    }
  }
  return ok;
}

// ---- 9: mutation sensitivity -------------------------------------------------

bool criterion_mutations(std::string& log) {
  bool ok = true;
  auto detected = [&](const std::string& family, const ValidationReport& rep,
                      const std::string& check) {
    const auto* f = rep.find(check);
    bool hit = f && f->status == CheckStatus::fail && !f->witness.empty();
    ok &= expect(hit, log, family + " mutation not detected at " + check);
  };

  // groupoid law: Z/2 with mul(g,g) = g
  {
    GroupoidBuilder b(2);
    b.label(0, "e").label(1, "g").self_unit(0).mul(0, 0, 0);
    b.src(1, 0).rng(1, 0).inv(1, 1);
    b.mul(0, 1, 1).mul(1, 0, 1).mul(1, 1, 1);
    auto rep = validate_groupoid(*b.build());
    bool hit = false;
    for (const auto& c : rep.checks())
      if (c.status == CheckStatus::fail && !c.witness.empty()) hit = true;
    ok &= expect(hit && !rep.ok(), log, "groupoid-law mutation not detected");
  }

  // L family: perturbed left restriction
  {
    auto h = cyclic_group(2);
    auto x = cyclic_group(4);
    std::vector<ElemId> rho0(x->size(), 0);
    LeftSelfSimilarAction a(h, x, rho0);
    for (ElemId k = 0; k < 2; ++k)
      for (ElemId e = 0; e < 4; ++e) {
        a.set_act(k, e, k == 0 ? e : (4 - e) % 4);
        a.set_restr(k, e, k);
      }
    a.set_restr(1, 1, 0);
    detected("L", check_left_axioms(a), "L6");
  }

  // R family: perturbed right restriction
  {
    auto r = fixtures::mirror_action(
        skew_ss_action(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1}));
    r.set_restr(2, 1, 0);
    auto rep = check_right_axioms(r);
    bool hit = false;
    for (const auto& c : rep.checks())
      if (c.check.front() == 'R' && c.status == CheckStatus::fail &&
          !c.witness.empty())
        hit = true;
    ok &= expect(hit, log, "R mutation not detected");
  }

  // C family: in-tune violation
  {
    auto two = fixtures::semidirect_two_sided_fixture();
    auto p = certify_para_equivalence(unit_groupoid_action(two.right.X()),
                                      two.right);
    const auto* c0 = p.report.find("C0");
    ok &= expect(!p.certified && c0 && c0->status == CheckStatus::fail &&
                     !c0->witness.empty(),
                 log, "C mutation not detected at C0");
  }

  // B family: perturbed bundle action image
  {
    auto fix = fixtures::crossed_product_fixture();
    FellLeftAction mutated = *fix.assumptions.left;
    auto imgs = mutated.images_of(1, 4);
    for (auto& m : imgs) m *= std::complex<double>(0.0, 1.0);
    mutated.set_images(1, 4, imgs);
    detected("B", check_fell_left_action(mutated), "B4");
  }

  // BC family: left phases that break only the interplay
  {
    auto para = fixtures::semidirect_two_sided_fixture();
    (void)para;
    // built inline: pair groupoid over Z2 x Z2 with i-phases (see test_fell)
    GpdPtr X = pair_groupoid(4);
    GpdPtr Z2 = cyclic_group(2);
    auto shift1 = [](ElemId k, int p) { return k ? p ^ 2 : p; };
    auto shift2 = [](ElemId k, int p) { return k ? p ^ 1 : p; };
    std::vector<ElemId> rho0(X->size(), 0);
    LeftSelfSimilarAction L(Z2, X, rho0);
    for (ElemId h = 0; h < 2; ++h)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
          L.set_act(h, p * 4 + q, shift1(h, p) * 4 + shift1(h, q));
          L.set_restr(h, p * 4 + q, h);
        }
    std::vector<ElemId> sigma0(X->size(), 0);
    RightSelfSimilarAction R(Z2, X, sigma0);
    for (ElemId t = 0; t < 2; ++t)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
          R.set_act(p * 4 + q, t, shift2(t, p) * 4 + shift2(t, q));
          R.set_restr(p * 4 + q, t, t);
        }
    auto B = std::make_shared<FellBundle>(line_bundle(X));
    std::vector<std::complex<double>> nu{1.0, {0.0, 1.0}, 1.0, {0.0, -1.0}};
    auto left = std::make_shared<FellLeftAction>();
    left->H = L.H();
    left->B = B;
    left->underlying = L;
    for (ElemId h = 0; h < 2; ++h)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
          std::complex<double> lam = h == 0 ? 1.0 : nu[p] * std::conj(nu[q]);
          left->set_images(h, p * 4 + q, {lam * MatC::Identity(1, 1)});
        }
    auto right = std::make_shared<FellRightAction>();
    right->G = R.G();
    right->B = B;
    right->underlying = R;
    for (ElemId t = 0; t < 2; ++t)
      for (int x = 0; x < 16; ++x)
        right->set_images(x, t, {MatC::Identity(1, 1)});
    auto assm = certify_fell_assumptions(B, left, right);
    detected("BC", assm.report, "BC1");
  }

  // F family: broken fiber closure
  {
    auto fix = fixtures::crossed_product_fixture();
    FellBundle bad = *fix.B;
    for (ElemId x = 0; x < bad.base->size(); ++x) {
      if (bad.base->is_unit(x)) continue;
      bad.fibers[x] = {bad.fibers[x][0]};
      break;
    }
    detected("F", validate_fell(bad), "F1");
  }

  // FE family: corrupted left inner product
  {
    auto fix = fixtures::crossed_product_fixture();
    auto w = build_bimodule(fix.assumptions);
    const auto& X = *fix.B->base;
    for (ElemId x = 0; x < X.size() && !w.lip_override.active; ++x)
      for (ElemId y = 0; y < X.size(); ++y) {
        if (w.gpd.frak_s[x] != w.gpd.frak_s[y]) continue;
        auto [arr, mat] =
            w.lip(x, fix.B->fibers[x][0], y, fix.B->fibers[y][0]);
        w.lip_override = {true, x, y, MatC(2.0 * mat)};
        break;
      }
    detected("FE", verify_bimodule(w), "FE2.d");
  }

  // counting-measure family: non-injective fake act table
  {
    auto h = cyclic_group(2);
    auto x = cyclic_group(4);
    std::vector<ElemId> rho0(x->size(), 0);
    LeftSelfSimilarAction a(h, x, rho0);
    for (ElemId k = 0; k < 2; ++k)
      for (ElemId e = 0; e < 4; ++e) {
        a.set_act(k, e, k == 0 ? e : (4 - e) % 4);
        a.set_restr(k, e, k);
      }
    a.set_act(1, 1, 2);
    detected("counting-haar", counting_haar_invariance(a), "counting-haar");
  }

  // DR family: forged non-commuting tables
  {
    StarCommutingSystem sys{3, {1, 0, 2}, {0, 2, 1}};
    auto rep = check_star_commuting(sys);
    const auto* f = rep.find("commute");
    ok &= expect(f && f->status == CheckStatus::fail && !f->witness.empty(),
                 log, "DR mutation not detected");
  }

  return ok;
}

// ---- 10: Deaconu-Renault ----------------------------------------------------

bool criterion_dr(std::string& log) {
  auto sys = fixtures::z6_system();
  bool ok = expect(check_star_commuting(sys).ok(), log,
                   "Z/6 (+2,+3) star-commuting check fails");
  auto fr = dr_freeness(sys, 2);
  ok &= expect(!fr.free, log, "finite T must be periodic");
  // lcm oracle, computed independently
  long long lcm = 1;
  for (int len : perm::cycle_type(sys.T)) lcm = std::lcm(lcm, (long long)len);
  ok &= expect(fr.period == lcm, log,
               "period " + std::to_string(fr.period) + " != lcm " +
                   std::to_string(lcm));
  ok &= expect(fr.report.ok(), log, "freeness witness fails validation");
  // the witness fixes a unit through the action
  auto act = dr_ss_action(sys, 2);
  ElemId h = act.H.id_of(fr.point, static_cast<int>(fr.period));
  ElemId u = act.X.id_of(fr.point, 0);
  ok &= expect(!act.H.base->is_unit(h) && act.action.act(h, u) == u, log,
               "periodicity witness does not certify non-freeness");
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 S4 decomposition tables (48 cells)", 1.0, criterion_s4_tables},
      {"2 S4 orbit groupoid: 9 elements, C3 |x C3", 5.0, criterion_s4_orbits},
      {"3 Morita pair M24 ~ M3", 0.0, criterion_morita_pair},
      {"4 trivial isomorphisms over the corpus", 0.0, criterion_trivial_isos},
      {"5 metatheorem suite (>= 20 actions)", 60.0, criterion_metatheorems},
      {"6 equivalence-theorem verifier", 30.0, criterion_equivalence},
      {"7 skew product equivalence", 0.0, criterion_skew},
      {"8 Fell bimodules at 1e-9", 60.0, criterion_fell},
      {"9 mutation sensitivity (10 families)", 0.0, criterion_mutations},
      {"10 Deaconu-Renault periodicity witness", 0.0, criterion_dr},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string log;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log += std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      ok = false;
      log += (log.empty() ? "" : "; ") + std::string("time limit ") +
             std::to_string(c.time_limit_s) + "s exceeded";
    }
    std::printf("[%s] %-45s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL",
                c.name.c_str(), secs, log.empty() ? "" : " -- ",
                log.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
