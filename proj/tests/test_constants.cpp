#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracle_values.hpp"
#include "walklab/constants.hpp"

using namespace walklab;

TEST_CASE("scaled Bessel helper against frozen spot values") {
  CHECK(detail::i0_scaled(0.5) == doctest::Approx(oracle::kI0e05).epsilon(1e-13));
  CHECK(detail::i0_scaled(10.0) == doctest::Approx(oracle::kI0e10).epsilon(1e-13));
  CHECK(detail::i0_scaled(15.5) == doctest::Approx(oracle::kI0e155).epsilon(1e-13));
  CHECK(detail::i0_scaled(100.0) == doctest::Approx(oracle::kI0e100).epsilon(1e-12));
  CHECK(detail::i0_scaled(1000.0) == doctest::Approx(oracle::kI0e1000).epsilon(1e-12));
  CHECK(detail::i0_scaled(0.0) == doctest::Approx(1.0));
}

TEST_CASE("gamma from quadrature matches the closed-form oracle") {
  CHECK(green_function_origin(3) == doctest::Approx(oracle::kG0_3).epsilon(1e-12));
  const double g3 = compute_gamma(3, 1e-10);
  CHECK(std::fabs(g3 - oracle::kGamma3) <= 1e-10);
  CHECK(std::fabs(g3 - 0.659463) <= 1e-6);
  CHECK(std::fabs(compute_gamma(4) - oracle::kGamma4) <= 1e-10);
  CHECK(std::fabs(compute_gamma(5) - oracle::kGamma5) <= 1e-10);
}

TEST_CASE("gamma is monotone increasing in dimension") {
  double prev = 0.0;
  for (int d = 3; d <= 8; ++d) {
    const double g = compute_gamma(d);
    CHECK(g > prev);
    CHECK(g < 1.0);
    prev = g;
  }
}

TEST_CASE("input contracts") {
  CHECK_THROWS_AS(compute_gamma(2), std::invalid_argument);
  CHECK_THROWS_AS(green_function_origin(1), std::invalid_argument);
  CHECK_THROWS_AS(compute_gamma(3, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(derive_all(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_all(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_all(2, 0.5), std::invalid_argument);
}

TEST_CASE("derived constants match the frozen oracle set") {
  const DimensionConstants c = derive_all(3, compute_gamma(3, 1e-10));
  CHECK(c.alpha == doctest::Approx(oracle::kAlpha3).epsilon(1e-12));
  CHECK(c.lambda == doctest::Approx(oracle::kLambda3).epsilon(1e-12));
  CHECK(c.p == doctest::Approx(oracle::kP3).epsilon(1e-12));
  CHECK(c.kappa == doctest::Approx(oracle::kKappa3).epsilon(1e-12));
  CHECK(c.x0_b == doctest::Approx(oracle::kX0B3).epsilon(1e-12));
  CHECK(c.sum_max == doctest::Approx(oracle::kSumMax3).epsilon(1e-12));
  CHECK(c.diff_max == doctest::Approx(oracle::kDiffMax3).epsilon(1e-12));
  CHECK(c.weight_c == doctest::Approx(oracle::kWeightC3).epsilon(1e-12));
  CHECK(c.weight_a == doctest::Approx(oracle::kWeightA3).epsilon(1e-12));
}

TEST_CASE("identities hold to 1e-12 for any admissible gamma") {
  for (int d = 3; d <= 6; ++d) {
    const DimensionConstants c = dimension_constants(d);
    // p = 1 - 1/(2d(1-gamma))
    CHECK(std::fabs(c.p - (1.0 - 1.0 / (2.0 * d * (1.0 - c.gamma)))) <= 1e-12);
    // lambda/(1-p) = 2 d lambda (1-gamma)
    CHECK(std::fabs(c.lambda / (1.0 - c.p) - 2.0 * d * c.lambda * (1.0 - c.gamma)) <= 1e-12);
    // 1 - alpha = 1/(2-gamma)
    CHECK(std::fabs((1.0 - c.alpha) - 1.0 / (2.0 - c.gamma)) <= 1e-12);
    CHECK(c.kappa > c.lambda);
    CHECK(c.alpha > 0.0);
    CHECK(c.alpha < 0.5);
  }
}

TEST_CASE("gamma profile: exact small horizons and envelope" * doctest::timeout(600)) {
  CHECK_THROWS_AS(gamma_n_profile(3, {10}, 100), std::invalid_argument);

  const std::int64_t reps = 200'000;
  const auto pts = gamma_n_profile(3, {1, 2, 100, 1000, 10000}, reps, 31415, 0);
  REQUIRE(pts.size() == 5);

  // no return is possible within one step
  CHECK(pts[0].n == 1);
  CHECK(pts[0].estimate == 1.0);

  // returning at step 2 means reversing the first step: probability 1/(2d)
  CHECK(std::fabs(pts[1].estimate - 5.0 / 6.0) <= 4.0 * pts[1].std_error + 1e-12);

  // pointwise monotone: the surviving set only shrinks with n
  for (std::size_t i = 1; i < pts.size(); ++i)
    CHECK(pts[i].estimate <= pts[i - 1].estimate);

  // estimates approach gamma from above, inside the O(n^{1-d/2}) envelope
  for (const auto& pt : pts) {
    CHECK(pt.estimate >= oracle::kGamma3 - 3.0 * pt.std_error);
    if (pt.n >= 100) {
      const double envelope =
          (pt.estimate - oracle::kGamma3) * std::sqrt(static_cast<double>(pt.n));
      CHECK(envelope <= 1.0);  // generous bound for the scaled excess
      CHECK(envelope >= -3.0 * pt.std_error * std::sqrt(static_cast<double>(pt.n)));
    }
  }
}
