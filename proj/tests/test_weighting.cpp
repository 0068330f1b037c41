#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pennant/error.hpp"
#include "pennant/weighting.hpp"

using namespace pennant;

// Frozen with an independent calculator (Python math.log10).
constexpr double kLog10Of50Plus1 = 2.6989700043360187;
constexpr double kLog10Of2 = 0.3010299956639812;

TEST_SUITE("weighting") {
  TEST_CASE("tf weight values") {
    CHECK(tf_weight(1, 10) == 1.0);
    CHECK(tf_weight(10, 10) == 2.0);
    CHECK(std::fabs(tf_weight(50, 10) - kLog10Of50Plus1) < 1e-12);
    CHECK(std::fabs(tf_weight(50, 10) - 2.69897) < 1e-5);
    CHECK(std::fabs(tf_weight(8, 2) - 4.0) < 1e-12);
    CHECK(std::fabs(tf_weight(1, std::numbers::e) - 1.0) < 1e-12);
  }

  TEST_CASE("idf weight values") {
    CHECK(idf_weight(6, 6, 10) == 0.0);
    CHECK(std::fabs(idf_weight(3, 6, 10) - kLog10Of2) < 1e-12);
    CHECK(std::fabs(idf_weight(3, 6, 10) - 0.30103) < 1e-5);
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(tf_weight(0, 10), DomainError);
    CHECK_THROWS_AS(idf_weight(0, 6, 10), DomainError);
    CHECK_THROWS_AS(idf_weight(7, 6, 10), InvalidNError);
    CHECK_THROWS_AS(tf_weight(5, 1.0), DomainError);
    CHECK_THROWS_AS(tf_weight(5, 0.5), DomainError);
    CHECK_THROWS_AS(idf_weight(1, 2, std::nan("")), DomainError);
  }

  TEST_CASE("effective N prefers the override and must cover every df") {
    WeightParams p{10, 6, std::nullopt};
    CHECK(p.effective_n() == 6);
    CHECK_NOTHROW(validate(p, 6));
    CHECK_THROWS_AS(validate(p, 7), InvalidNError);
    p.n_override = 1000;
    CHECK(p.effective_n() == 1000);
    CHECK_NOTHROW(validate(p, 7));
    p.n_override = 3;
    CHECK_THROWS_AS(validate(p, 4), InvalidNError);
  }

  TEST_CASE("property: monotone and bounded") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000);
    for (int i = 0; i < 2000; ++i) {
      std::uint64_t a = dist(rng), b = dist(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const std::uint64_t n = 1'000'000;
      for (double base : {2.0, std::numbers::e, 10.0, 1.5}) {
        REQUIRE(tf_weight(a, base) < tf_weight(b, base));
        REQUIRE(idf_weight(a, n, base) > idf_weight(b, n, base));
        REQUIRE(tf_weight(a, base) >= 1.0);
        REQUIRE(idf_weight(b, n, base) >= 0.0);
      }
    }
  }

  TEST_CASE("property: changing base rescales tf-1 and idf by one positive constant") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::uint64_t> dist(1, 5000);
    const double k = std::log(10.0) / std::log(2.0);  // log2(v) = k * log10(v)
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t c = dist(rng);
      const std::uint64_t n = 5000;
      REQUIRE(std::fabs((tf_weight(c, 2) - 1) - k * (tf_weight(c, 10) - 1)) < 1e-9);
      REQUIRE(std::fabs(idf_weight(c, n, 2) - k * idf_weight(c, n, 10)) < 1e-9);
    }
  }
}
