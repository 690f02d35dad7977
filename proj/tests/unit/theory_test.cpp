#include <cmath>

#include "doctest.h"
#include "grouptest/fault.hpp"
#include "grouptest/theory.hpp"

namespace th = gt::theory;

TEST_CASE("binary entropy") {
  CHECK(th::binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(th::binary_entropy(0.0) == 0.0);
  CHECK(th::binary_entropy(1.0) == 0.0);
  CHECK(th::binary_entropy(0.1) == doctest::Approx(0.4689955935892812).epsilon(1e-15));
  CHECK(th::binary_entropy(0.3) == doctest::Approx(0.8812908992306926).epsilon(1e-15));
  for (int i = 1; i < 50; ++i) {
    const double p = i / 100.0;
    CHECK(th::binary_entropy(p) == doctest::Approx(th::binary_entropy(1.0 - p)).epsilon(1e-13));
    CHECK(th::binary_entropy(p) < 1.0);
  }
  CHECK_THROWS_AS(th::binary_entropy(-0.1), gt::Fault);
  CHECK_THROWS_AS(th::binary_entropy(1.1), gt::Fault);
}

TEST_CASE("combinatorial entropy") {
  CHECK(th::combinatorial_entropy(4, 2) == doctest::Approx(2.584962500721156).epsilon(1e-12));
  CHECK(th::combinatorial_entropy(1000, 100) ==
        doctest::Approx(464.42270337623427).epsilon(1e-9));
  CHECK(th::combinatorial_entropy(5, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(th::combinatorial_entropy(5, 5) == doctest::Approx(0.0).epsilon(1e-12));

  // Independent route: log2 C(n,k) as a sum of log2 factors.
  const int n = 1000, k = 100;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += std::log2(double(n - i)) - std::log2(double(i + 1));
  CHECK(th::combinatorial_entropy(n, k) == doctest::Approx(sum).epsilon(1e-9));

  // Squeezed by the entropy approximation: nH(k/n) - log2(n+1) <= log2 C(n,k) <= nH(k/n).
  const double nh = 1000 * th::binary_entropy(0.1);
  CHECK(th::combinatorial_entropy(n, k) <= nh);
  CHECK(th::combinatorial_entropy(n, k) >= nh - std::log2(1001.0));

  CHECK_THROWS_AS(th::combinatorial_entropy(3, 5), gt::Fault);
  CHECK_THROWS_AS(th::combinatorial_entropy(3, -1), gt::Fault);
}

TEST_CASE("floor_pow2") {
  CHECK(th::floor_pow2(1.0) == 1);
  CHECK(th::floor_pow2(2.0) == 2);
  CHECK(th::floor_pow2(5.7) == 4);
  CHECK(th::floor_pow2(99.0) == 64);
  CHECK(th::floor_pow2(3.9999999) == 2);
  // Values a hair under an exact power (from downward rounding) count as it.
  CHECK(th::floor_pow2(4.0 * (1.0 - 1e-16)) == 4);
  CHECK_THROWS_AS(th::floor_pow2(0.9), gt::Fault);
}

TEST_CASE("zero-error aspect ratio") {
  CHECK(th::zero_error_aspect(0.01, 64) == doctest::Approx(0.08546875).epsilon(1e-15));
  CHECK(th::zero_error_aspect(1.0 / 3.0, 2) == doctest::Approx(1.0).epsilon(1e-15));
  for (double p : {0.1, 0.25, 0.7})
    CHECK(th::zero_error_aspect(p, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(th::zero_error_aspect(0.1, 6), gt::Fault);   // not a power of 2
  CHECK_THROWS_AS(th::zero_error_aspect(0.0, 4), gt::Fault);
  CHECK_THROWS_AS(th::zero_error_aspect(1.0, 4), gt::Fault);
}

TEST_CASE("zero-error optimal block size") {
  CHECK(th::zero_error_optimal_m(0.01) == 64);
  CHECK(th::zero_error_optimal_m(0.005) == 128);
  CHECK(th::zero_error_optimal_m(0.4) == 1);
  CHECK(th::zero_error_optimal_m(0.25) == 2);
  CHECK(th::zero_error_optimal_m(1.0 / 3.0) == 2);
  // 1/0.2 - 1 lands a hair below 4 in doubles; the boundary nudge keeps m=4
  // (an exact tie in the aspect ratio, so the choice costs nothing).
  CHECK(th::zero_error_optimal_m(0.2) == 4);
  CHECK(th::zero_error_aspect(0.2, 4) == doctest::Approx(th::zero_error_aspect(0.2, 2)).epsilon(1e-15));
}

TEST_CASE("per-pass expectations") {
  CHECK(th::pass_expected_tests(0.1, 4) == doctest::Approx(1.6878).epsilon(1e-12));
  CHECK(th::pass_expected_items(0.1, 4) == doctest::Approx(3.439).epsilon(1e-12));
  CHECK(th::pass_expected_tests(0.1, 7) == doctest::Approx(2.4651093).epsilon(1e-12));
  CHECK(th::pass_expected_items(0.1, 7) == doctest::Approx(5.2170310).epsilon(1e-12));
  for (double p : {0.05, 0.3, 0.9}) {
    CHECK(th::pass_expected_tests(p, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(th::pass_expected_items(p, 1) == doctest::Approx(1.0).epsilon(1e-15));
  }
  // As p -> 0 a pass usually clears the whole block with one test. Both
  // expectations approach their limits linearly in p (items at slope
  // m(m-1)/2 = 10, tests at slope 12 for m = 5), so the tolerances sit one
  // order above those first-order terms.
  CHECK(th::pass_expected_items(1e-6, 5) == doctest::Approx(5.0).epsilon(1e-5));
  CHECK(th::pass_expected_tests(1e-6, 5) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(th::pass_expected_tests(0.0, 4), gt::Fault);
  CHECK_THROWS_AS(th::pass_expected_items(0.5, 0), gt::Fault);
}

TEST_CASE("small-error aspect ratio") {
  CHECK(th::avg_aspect(0.1, 4) == doctest::Approx(0.49078220412910734).epsilon(1e-12));
  CHECK(th::avg_aspect(0.1, 7) == doctest::Approx(0.47251191338521853).epsilon(1e-12));
  for (double p : {0.05, 0.3, 0.9})
    CHECK(th::avg_aspect(p, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("small-error optimal block size") {
  CHECK(th::small_error_optimal_m(0.1) == 7);
  CHECK(th::small_error_optimal_m(0.05) == 14);
  CHECK(th::small_error_optimal_m(0.01) == 69);
  CHECK(th::small_error_optimal_m(0.005) == 138);
  CHECK(th::small_error_optimal_m(0.2) == 3);
  CHECK(th::small_error_optimal_m(0.3) == 2);
  CHECK(th::small_error_optimal_m(0.5) == 1);
  CHECK(th::small_error_optimal_m(0.9) == 1);
  CHECK(th::optimal_avg_aspect(0.1) == th::avg_aspect(0.1, 7));
}

TEST_CASE("aspect ratios respect the counting bound and dominance on the grid") {
  for (int i = 1; i <= 100; ++i) {
    const double p = i / 200.0;
    CAPTURE(p);
    const double h = th::binary_entropy(p);
    const double zero = th::zero_error_aspect(p, th::zero_error_optimal_m(p));
    const double avg = th::avg_aspect(p, th::small_error_optimal_m(p));
    REQUIRE(zero >= h - th::kBoundaryNudge);
    REQUIRE(avg >= h - th::kBoundaryNudge);
    REQUIRE(avg <= zero + th::kBoundaryNudge);
  }
}

TEST_CASE("concentration bound") {
  CHECK(th::mcdiarmid_bound(1000, 7, 0.05, 0.1) ==
        doctest::Approx(0.9944045685070926).epsilon(1e-12));
  CHECK(th::mcdiarmid_bound(100000, 7, 0.05, 0.1) ==
        doctest::Approx(0.5705728309940867).epsilon(1e-12));
  // Doubling n squares the bound.
  const double b1 = th::mcdiarmid_bound(50000, 7, 0.05, 0.1);
  const double b2 = th::mcdiarmid_bound(100000, 7, 0.05, 0.1);
  CHECK(b2 == doctest::Approx(b1 * b1).epsilon(1e-12));
  CHECK(th::mcdiarmid_bound(10, 7, 1e-9, 0.1) <= 1.0);
  CHECK(th::mcdiarmid_bound(10, 7, 1e-9, 0.1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(th::mcdiarmid_bound(0, 7, 0.05, 0.1), gt::Fault);
  CHECK_THROWS_AS(th::mcdiarmid_bound(10, 0, 0.05, 0.1), gt::Fault);
  CHECK_THROWS_AS(th::mcdiarmid_bound(10, 7, 0.0, 0.1), gt::Fault);
  CHECK_THROWS_AS(th::mcdiarmid_bound(10, 7, 0.05, 0.0), gt::Fault);
}

TEST_CASE("golden-ratio crossing for pairwise testing") {
  const double p_star = (3.0 - std::sqrt(5.0)) / 2.0;
  CHECK(p_star == doctest::Approx(0.38196601125010515).epsilon(1e-15));
  CHECK(th::avg_aspect(p_star, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(th::avg_aspect(p_star - 1e-9, 2) < 1.0);
  CHECK(th::avg_aspect(p_star + 1e-9, 2) > 1.0);
  CHECK(th::small_error_optimal_m(0.38) == 2);
  CHECK(th::small_error_optimal_m(0.385) == 1);
  CHECK(th::small_error_optimal_m(p_star) == 1);
}

TEST_CASE("m = 2 closed forms") {
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    CAPTURE(p);
    REQUIRE(th::zero_error_aspect(p, 2) ==
            doctest::Approx(0.5 + 1.5 * p).epsilon(1e-12));
    REQUIRE(th::avg_aspect(p, 2) ==
            doctest::Approx((1.0 + 2.0 * p - p * p) / (2.0 - p)).epsilon(1e-12));
  }
}

TEST_CASE("selectors never fault on a fine grid") {
  for (int j = 1; j <= 999; ++j) {
    const double p = j / 1000.0;
    CHECK_NOTHROW(th::zero_error_optimal_m(p));
    CHECK_NOTHROW(th::small_error_optimal_m(p));
  }
}
