#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ladder/finite_builder.hpp"

using namespace ladder;
using namespace testutil;

TEST_CASE("one-point base gives a plain chain") {
  auto b = build_quasi_product_finite(chain(1), 4);
  CHECK(b.candidate.order.size() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(b.candidate.order.leq(i, j) == (i <= j));
  CHECK(check_restriction_coherence(b).ok);
}

TEST_CASE("two-chain base at length three is the six-element quasi-product") {
  auto b = build_quasi_product_finite(chain(2), 3);
  CHECK(b.candidate.order.size() == 6);
  CHECK(check_quasi_product(b.candidate).ok);
  CHECK(check_restriction_coherence(b).ok);
  // the projection to the base preserves joins (q2), checked directly
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      int j = b.candidate.order.join(x, y);
      CHECK(j / 3 == b.candidate.x.join(x / 3, y / 3));
    }
}

TEST_CASE("boolean-square base is free at one past its own index") {
  auto base = boolean_cube(2);
  REQUIRE(least_freeness_index(base) == 3);
  auto b = build_quasi_product_finite(base, 3);
  CHECK(check_quasi_product(b.candidate).ok);
  CHECK(check_restriction_coherence(b).ok);
  CHECK(is_mj_free(b.candidate.order, 4));
  CHECK(is_well_founded(b.candidate));
}

TEST_CASE("the three-atom diamond builds and stays free") {
  auto base = m3();
  auto b = build_quasi_product_finite(base, 2);
  CHECK(check_quasi_product(b.candidate).ok);
  CHECK(check_restriction_coherence(b).ok);
  CHECK(is_mj_free(b.candidate.order, least_freeness_index(base) + 1));
}

TEST_CASE("every small base builds cleanly at both lengths") {
  for (const auto& base : {chain(2), chain(3), vee_top(), m3(), boolean_cube(2), make_mj(3)}) {
    for (int len : {2, 3}) {
      auto b = build_quasi_product_finite(base, len);
      CHECK(check_quasi_product(b.candidate).ok);
      CHECK(check_restriction_coherence(b).ok);
      CHECK(is_mj_free(b.candidate.order, least_freeness_index(base) + 1));
      for (int xi = 0; xi < base.size(); ++xi) CHECK(check_fx_join_embedding(b.candidate, xi));
    }
  }
}

TEST_CASE("coverings recorded in the trace match the least coverings") {
  auto base = m3();
  auto b = build_quasi_product_finite(base, 2);
  REQUIRE(b.coverings.count(4));
  CHECK(b.coverings.at(4).size() == 3);  // the three atom ideals under the top
  CHECK(b.processing_order.front() == 0);
  CHECK(b.processing_order.back() == 4);
}
