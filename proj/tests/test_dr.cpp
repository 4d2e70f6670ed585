#include <doctest.h>

#include <numeric>

#include "gpdkit/fixtures.hpp"

using namespace gpdkit;

TEST_CASE("star-commuting checks") {
  SUBCASE("the identity system passes") {
    StarCommutingSystem sys{3, {0, 1, 2}, {0, 1, 2}};
    CHECK(check_star_commuting(sys).ok());
  }
  SUBCASE("the Z/6 (+2,+3) system passes") {
    CHECK(check_star_commuting(fixtures::z6_system()).ok());
  }
  SUBCASE("a forged non-commuting table fails with a witness") {
    // S = swap on two points, T = swap forged into a non-commuting table by
    // extending to three points where they genuinely fail to commute
    StarCommutingSystem sys{3, {1, 0, 2}, {0, 2, 1}};
    auto rep = check_star_commuting(sys);
    CHECK_FALSE(rep.ok());
    const auto* f = rep.first_failure();
    REQUIRE(f != nullptr);
    CHECK(f->check == "commute");
  }
  SUBCASE("non-surjective maps are rejected") {
    StarCommutingSystem sys{2, {0, 0}, {0, 1}};
    CHECK_FALSE(check_star_commuting(sys).ok());
  }
}

TEST_CASE("dr groupoid construction") {
  SUBCASE("identity map with window 0 is the trivial groupoid on Y") {
    auto g = dr_groupoid(std::vector<int>{0, 1, 2}, 3, 0);
    CHECK(g.base->size() == 3);
    CHECK(g.excluded.empty());
    CHECK(g.report.ok());
    CHECK(iso_check(g.base, trivial_groupoid(3)).has_value());
  }
  SUBCASE("Z/6 shift +2 with window 2 declares its exclusions") {
    auto sys = fixtures::z6_system();
    auto g = dr_groupoid(sys, 2);
    CHECK(g.base->size() == 6 * 5);
    CHECK_FALSE(g.excluded.empty());
    // laws hold wherever defined
    CHECK(validate_groupoid_partial(*g.base, g.excluded).ok());
    const auto* wc = g.report.find("window-closed");
    REQUIRE(wc != nullptr);
    CHECK(wc->status == CheckStatus::skipped);
  }
  SUBCASE("a single bijection with window 1 validates modulo exclusions") {
    auto g = dr_groupoid(std::vector<int>{1, 2, 0}, 3, 1);
    CHECK(validate_groupoid_partial(*g.base, g.excluded).ok());
  }
}

TEST_CASE("dr self-similar action") {
  SUBCASE("identity system: the action is trivial") {
    StarCommutingSystem sys{2, {0, 1}, {0, 1}};
    auto act = dr_ss_action(sys, 1);
    CHECK(act.report.ok());
    CHECK(check_left_axioms(act.action).ok());
  }
  SUBCASE("Z/6 shifts") {
    auto act = dr_ss_action(fixtures::z6_system(), 2);
    CHECK(act.report.ok());
    CHECK(check_left_axioms(act.action).ok());
    CHECK(verify_derived_left_laws(act.action).ok());
  }
  SUBCASE("S nontrivial, T identity: the fill-in is solved directly") {
    StarCommutingSystem sys{4, {1, 2, 3, 0}, {0, 1, 2, 3}};
    auto act = dr_ss_action(sys, 1);
    CHECK(act.report.ok());
    CHECK(check_left_axioms(act.action).ok());
  }
  SUBCASE("the fill-in map is a bijection onto its domain") {
    auto sys = fixtures::z6_system();
    // pairs (x,y) with Sx = Ty biject with fill-ins z
    std::vector<int> hits(sys.n, 0);
    int pairs = 0;
    for (int x = 0; x < sys.n; ++x)
      for (int y = 0; y < sys.n; ++y) {
        if (sys.S[x] != sys.T[y]) continue;
        ++pairs;
        int found = -1;
        for (int z = 0; z < sys.n; ++z)
          if (sys.T[z] == x && sys.S[z] == y) {
            REQUIRE(found == -1);
            found = z;
          }
        REQUIRE(found >= 0);
        hits[found] += 1;
      }
    CHECK(pairs == sys.n);  // one partner y per x for bijections
    for (int z = 0; z < sys.n; ++z) CHECK(hits[z] == 1);
  }
}

TEST_CASE("dr freeness: periodic witnesses with the lcm oracle") {
  auto lcm_oracle = [](const std::vector<int>& t) {
    long long l = 1;
    for (int len : perm::cycle_type(t)) l = std::lcm(l, (long long)len);
    return l;
  };
  SUBCASE("identity: k = 1") {
    StarCommutingSystem sys{3, {0, 1, 2}, {0, 1, 2}};
    auto fr = dr_freeness(sys, 2);
    CHECK_FALSE(fr.free);
    CHECK(fr.period == 1);
    CHECK(fr.period == lcm_oracle(sys.T));
    CHECK(fr.report.ok());
  }
  SUBCASE("a 3-cycle: k = 3") {
    StarCommutingSystem sys{4, {0, 1, 2, 3}, {1, 2, 0, 3}};
    auto fr = dr_freeness(sys, 3);
    CHECK(fr.period == 3);
    CHECK(fr.period == lcm_oracle(sys.T));
    CHECK(fr.witness_in_window);
  }
  SUBCASE("a 2-cycle times a 3-cycle: k = 6") {
    StarCommutingSystem sys{5, {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}};
    auto fr = dr_freeness(sys, 2);
    CHECK(fr.period == 6);
    CHECK(fr.period == lcm_oracle(sys.T));
    CHECK_FALSE(fr.witness_in_window);  // 6 > window 2
  }
  SUBCASE("the witness is a valid non-freeness certificate") {
    auto sys = fixtures::z6_system();
    auto fr = dr_freeness(sys, 2);
    CHECK(fr.period == 2);  // +3 on Z/6 has order 2
    REQUIRE(fr.witness_in_window);
    // (x, k, x) is a non-unit of H fixing the unit (x, 0, x)
    auto act = dr_ss_action(sys, 2);
    ElemId h = act.H.id_of(fr.point, static_cast<int>(fr.period));
    ElemId u = act.X.id_of(fr.point, 0);
    CHECK_FALSE(act.H.base->is_unit(h));
    CHECK(act.action.act(h, u) == u);
  }
}
