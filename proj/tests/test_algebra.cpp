#include <doctest.h>

#include "gpdkit/algebra.hpp"
#include "gpdkit/fixtures.hpp"

using namespace gpdkit;

TEST_CASE("algebra summaries of the worked examples") {
  SUBCASE("S4 |x S4 is principal with a single block of dimension 24") {
    auto sum = algebra_summary(*fixtures::s4_on_s4());
    REQUIRE(sum.principal);
    REQUIRE(sum.block_dims.size() == 1);
    CHECK(sum.block_dims[0] == 24);
  }
  SUBCASE("C3 |x C3 is principal with a single block of dimension 3") {
    auto sum = algebra_summary(*fixtures::c3_on_c3());
    REQUIRE(sum.principal);
    REQUIRE(sum.block_dims.size() == 1);
    CHECK(sum.block_dims[0] == 3);
  }
  SUBCASE("a one-object group is not principal and carries a witness") {
    auto sum = algebra_summary(*cyclic_group(2));
    CHECK_FALSE(sum.principal);
    REQUIRE(sum.isotropy_witness.size() == 1);
    CHECK(sum.isotropy_witness[0] == 1);
  }
}

TEST_CASE("morita compatibility is block-count equality") {
  auto m24 = algebra_summary(*fixtures::s4_on_s4());
  auto m3 = algebra_summary(*fixtures::c3_on_c3());
  CHECK(morita_compatible(m24, m3));

  auto one_block = algebra_summary(*pair_groupoid(2));
  auto two_blocks = algebra_summary(*trivial_groupoid(2));
  CHECK_FALSE(morita_compatible(one_block, two_blocks));

  // M2 versus M2 + M2
  auto m2 = algebra_summary(*pair_groupoid(2));
  auto m2m2 = algebra_summary(
      *skew_product_groupoid(pair_groupoid(2), cyclic_group(2), {0, 0, 0, 0}));
  REQUIRE(m2m2.block_dims.size() == 2);
  CHECK_FALSE(morita_compatible(m2, m2m2));

  CHECK_THROWS_AS(morita_compatible(algebra_summary(*cyclic_group(2)), m3),
                  StructureError);
}

TEST_CASE("convolution products and matrix units") {
  SUBCASE("pair groupoid on two points realizes M2 matrix units") {
    CHECK(verify_matrix_units(*pair_groupoid(2)).ok());
  }
  SUBCASE("trivial groupoid convolution is the pointwise product") {
    auto g = trivial_groupoid(3);
    std::vector<long long> f1{2, 3, 5}, f2{7, 11, 13};
    auto prod = convolution_product(*g, f1, f2);
    for (int i = 0; i < 3; ++i) CHECK(prod[i] == f1[i] * f2[i]);
  }
  SUBCASE("S4 |x S4 passes a deterministic sample of matrix-unit triples") {
    CHECK(verify_matrix_units(*fixtures::s4_on_s4()).ok());
  }
  SUBCASE("matrix-unit relations hold exactly on all principal fixtures") {
    for (const auto& g : fixtures::groupoid_corpus()) {
      auto sum = algebra_summary(*g);
      if (!sum.principal) continue;
      CHECK(verify_matrix_units(*g).ok());
    }
  }
}
