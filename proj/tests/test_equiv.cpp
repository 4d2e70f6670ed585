#include <doctest.h>

#include "gpdkit/algebra.hpp"
#include "gpdkit/fixtures.hpp"

using namespace gpdkit;

TEST_CASE("one-sided equivalence for the trivial action") {
  auto w = one_sided_equivalence(trivial_left_group_action(pair_groupoid(3)));
  CHECK(verify_equivalence(w).ok());
}

TEST_CASE("skew fixture: G(c) bowtie H is equivalent to H\\G(c), which is Z/4") {
  auto a = skew_ss_action(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1});
  auto w = one_sided_equivalence(a);
  CHECK(verify_equivalence(w).ok());
  auto orbit = orbit_groupoid_left(a);
  CHECK(iso_check(orbit.base, cyclic_group(4)).has_value());
}

TEST_CASE("S4 fixture: one-sided witness verifies") {
  auto w = one_sided_equivalence(fixtures::s4_fixture().action);
  auto rep = verify_equivalence(w);
  CHECK(rep.ok());
  // the two linked groupoids have principal Morita-compatible algebras
  auto sa = algebra_summary(*w.A.base);
  auto sc = algebra_summary(*w.C.base);
  REQUIRE(sa.principal);
  REQUIRE(sc.principal);
  CHECK(morita_compatible(sa, sc));
}

TEST_CASE("semidirect two-sided fixture verifies all four check groups") {
  auto p = fixtures::semidirect_two_sided_fixture();
  REQUIRE(p.certified);
  auto w = build_equivalence(p);
  auto rep = verify_equivalence(w);
  CHECK(rep.ok());
  CHECK(rep.find("left-action-laws") != nullptr);
  CHECK(rep.find("actions-free") != nullptr);
  CHECK(rep.find("actions-commute") != nullptr);
  CHECK(rep.find("principality-r") != nullptr);
  CHECK(rep.find("principality-s") != nullptr);

  // oracle: with trivial restrictions, A is the semidirect product of the
  // quotient with H, built here directly from the quotient action
  const auto& Q = *w.x_mod_g.base;
  const auto& H = *p.left.H();
  int m = H.size();
  GroupoidBuilder b(Q.size() * m);
  auto id = [m](ElemId q, ElemId h) { return q * m + h; };
  for (ElemId q = 0; q < Q.size(); ++q)
    for (ElemId h = 0; h < m; ++h) {
      ElemId e = id(q, h);
      if (Q.is_unit(q) && H.is_unit(h)) b.unit(e);
      b.rng(e, id(Q.rng(q), 0));
      b.src(e, id(w.qleft.act(H.inv(h), Q.src(q)), 0));
      b.inv(e, id(w.qleft.act(H.inv(h), Q.inv(q)), H.inv(h)));
    }
  for (ElemId q1 = 0; q1 < Q.size(); ++q1)
    for (ElemId h1 = 0; h1 < m; ++h1)
      for (ElemId q2 = 0; q2 < Q.size(); ++q2)
        for (ElemId h2 = 0; h2 < m; ++h2) {
          ElemId hq2 = w.qleft.act(h1, q2);
          if (Q.src(q1) != Q.rng(hq2)) continue;
          b.mul(id(q1, h1), id(q2, h2),
                id(Q.mul_req(q1, hq2), H.mul_req(h1, h2)));
        }
  auto direct = b.build();
  REQUIRE(validate_groupoid(*direct).ok());
  CHECK(iso_check(w.A.base, direct).has_value());
}

TEST_CASE("corpus: every free one-sided fixture verifies") {
  for (const auto& a : fixtures::left_action_corpus()) {
    if (!is_free(a).free) continue;
    auto w = one_sided_equivalence(a);
    CHECK(verify_equivalence(w).ok());
  }
}

TEST_CASE("a corrupted right action table is detected by the verifier") {
  auto p = fixtures::semidirect_two_sided_fixture();
  auto w = build_equivalence(p);
  REQUIRE(verify_equivalence(w).ok());

  // corrupt one cell of the witness's right action through the override:
  // send (y, gamma) to a wrong element with the same frak-typing
  const auto& X = *p.left.X();
  bool corrupted = false;
  for (ElemId y = 0; y < X.size() && !corrupted; ++y)
    for (ElemId g = 0; g < w.C.base->size() && !corrupted; ++g) {
      if (w.C.base->is_unit(g)) continue;
      auto yg = w.right_act(y, g);
      if (!yg) continue;
      for (ElemId z = 0; z < X.size(); ++z) {
        if (z == *yg) continue;
        if (w.frak_s[z] != w.frak_s[*yg] || w.frak_r[z] != w.frak_r[*yg])
          continue;
        w.right_act_override[static_cast<int64_t>(y) * w.C.base->size() + g] = z;
        corrupted = true;
        break;
      }
    }
  REQUIRE(corrupted);
  auto rep = verify_equivalence(w);
  CHECK_FALSE(rep.ok());
  const auto* f = rep.first_failure();
  REQUIRE(f != nullptr);
  CHECK_FALSE(f->witness.empty());
  // the commutation sweep sees the corruption
  bool commute_failed = false;
  for (const auto& c : rep.checks())
    if (c.check == "actions-commute" && c.status == CheckStatus::fail)
      commute_failed = true;
  CHECK(commute_failed);
}
