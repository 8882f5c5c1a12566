#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracle_values.hpp"
#include "walklab/distributions.hpp"
#include "walklab/rng.hpp"
#include "walklab/walk.hpp"

using namespace walklab;

namespace {

DimensionConstants consts3() {
  static const DimensionConstants c = dimension_constants(3);
  return c;
}

}  // namespace

TEST_CASE("geometric site law") {
  const auto c = consts3();
  CHECK(geometric_site_pmf(c, 0) == doctest::Approx(oracle::kGamma3).epsilon(1e-12));
  CHECK_THROWS_AS(geometric_site_pmf(c, -1), std::invalid_argument);

  // normalization via truncated sum plus the exact geometric tail
  double total = 0.0;
  const int cut = 200;
  for (int k = 0; k < cut; ++k) total += geometric_site_pmf(c, k);
  const double tail = std::pow(1.0 - c.gamma, cut);
  CHECK(std::fabs(total + tail - 1.0) <= 1e-10);

  // mean of the geometric law
  double mean = 0.0;
  for (int k = 0; k < 400; ++k) mean += k * geometric_site_pmf(c, k);
  CHECK(mean == doctest::Approx(oracle::kGeoMean3).epsilon(1e-10));
  CHECK(mean == doctest::Approx((1.0 - c.gamma) / c.gamma).epsilon(1e-12));
}

TEST_CASE("joint two-point law") {
  const auto c = consts3();
  CHECK(joint_two_point_pmf(c, 0, 0) ==
        doctest::Approx(oracle::kOneMinusTwoAlpha3).epsilon(1e-12));
  CHECK(joint_two_point_pmf(c, 0, 0) ==
        doctest::Approx(c.gamma / (2.0 - c.gamma)).epsilon(1e-12));
  CHECK_THROWS_AS(joint_two_point_pmf(c, -1, 0), std::invalid_argument);

  // symmetry
  CounterRng rng(2, 0);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t k = rng.next_below(60);
    const std::int64_t l = rng.next_below(60);
    CHECK(joint_two_point_pmf(c, k, l) == joint_two_point_pmf(c, l, k));
  }

  // marginals reproduce the geometric site law (independent summation; the
  // negative-binomial tail vanishes to double precision at this cut)
  for (std::int64_t k = 0; k <= 20; ++k) {
    double marginal = 0.0;
    for (std::int64_t l = 0; l <= 900; ++l) marginal += joint_two_point_pmf(c, k, l);
    CHECK(std::fabs(marginal - geometric_site_pmf(c, k)) <= 1e-12);
  }

  // normalization: sum over k+l = m is (1-2a)(2a)^m, geometric in m
  double total = 0.0;
  for (std::int64_t m = 0; m <= 120; ++m)
    for (std::int64_t k = 0; k <= m; ++k) total += joint_two_point_pmf(c, k, m - k);
  const double tail = std::pow(2.0 * c.alpha, 121.0);
  CHECK(std::fabs(total + tail - 1.0) <= 1e-10);

  // log-space path agrees with direct evaluation across the switch
  for (std::int64_t m : {38, 39, 40, 41, 42, 60}) {
    const double direct = (1.0 - 2.0 * c.alpha) *
                          std::exp(log_binomial(m, m / 2) + m * std::log(c.alpha));
    CHECK(joint_two_point_pmf(c, m / 2, m - m / 2) ==
          doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("ball occupation law") {
  const auto c = consts3();
  CHECK(ball_occupation_pmf(c, 1) == doctest::Approx(oracle::kBallNewDensity3).epsilon(1e-12));
  CHECK_THROWS_AS(ball_occupation_pmf(c, 0), std::invalid_argument);

  double total = 0.0, mean = 0.0;
  for (std::int64_t j = 1; j <= 400; ++j) {
    const double p = ball_occupation_pmf(c, j);
    total += p;
    mean += j * p;
  }
  const double tail_mass = std::pow(c.p + 1.0 / 6.0, 400.0);
  CHECK(std::fabs(total + tail_mass - 1.0) <= 1e-10);
  CHECK(mean == doctest::Approx(oracle::kBallMean3).epsilon(1e-9));
}

TEST_CASE("joint point-ball law") {
  const auto c = consts3();
  CHECK(joint_point_ball_pmf(c, 0, 0) ==
        doctest::Approx(oracle::kBallNewDensity3).epsilon(1e-12));
  CHECK(joint_point_ball_pmf(c, 1, 2) == doctest::Approx(oracle::kPointBall12).epsilon(1e-12));
  CHECK_THROWS_AS(joint_point_ball_pmf(c, 3, 2), std::invalid_argument);

  // row sums reproduce the ball occupation law (binomial theorem)
  for (std::int64_t l = 0; l <= 30; ++l) {
    double row = 0.0;
    for (std::int64_t k = 0; k <= l; ++k) row += joint_point_ball_pmf(c, k, l);
    CHECK(std::fabs(row - ball_occupation_pmf(c, l + 1)) <= 1e-12);
  }

  // normalization through the row identity and the geometric tail
  double total = 0.0;
  for (std::int64_t l = 0; l <= 400; ++l)
    total += ball_occupation_pmf(c, l + 1);
  CHECK(std::fabs(total + std::pow(c.p + 1.0 / 6.0, 401.0) - 1.0) <= 1e-10);
}

TEST_CASE("truncated upper bounds are the laws without their prefactors") {
  const auto c = consts3();
  for (std::int64_t k = 0; k <= 10; ++k)
    for (std::int64_t l = 0; l <= 10; ++l) {
      const TruncatedBounds b = truncated_upper_bounds(c, k, l);
      CHECK(b.two_point ==
            doctest::Approx(joint_two_point_pmf(c, k, l) / (1.0 - 2.0 * c.alpha))
                .epsilon(1e-12));
      if (k <= l)
        CHECK(b.point_ball ==
              doctest::Approx(joint_point_ball_pmf(c, k, l) /
                              (1.0 - c.p - 1.0 / 6.0))
                  .epsilon(1e-12));
      else
        CHECK(b.point_ball == 0.0);
    }
}

TEST_CASE("MC joint frequencies stay under the finite-n bounds" * doctest::timeout(600)) {
  const auto c = consts3();
  const std::int64_t n = 10'000;
  const std::int64_t reps = 20'000;
  // empirical P(xi(0,n)=k, xi(e1,n)=l) for k+l <= 10
  std::array<std::array<std::int64_t, 11>, 11> hits{};
  for (std::int64_t r = 0; r < reps; ++r) {
    Walk walk(WalkConfig{3, n, 505, static_cast<std::uint64_t>(r)});
    std::int64_t k = 0, l = 0;
    while (!walk.done()) {
      walk.advance();
      if (walk.l1_norm() == 0)
        ++k;
      else if (walk.l1_norm() == 1 && walk.position()[0] == 1)
        ++l;
    }
    if (k <= 10 && l <= 10) ++hits[std::size_t(k)][std::size_t(l)];
  }
  for (std::int64_t k = 0; k <= 10; ++k)
    for (std::int64_t l = 0; k + l <= 10; ++l) {
      if (k + l == 0) continue;  // the bound covers k+l > 0
      const double freq = hits[std::size_t(k)][std::size_t(l)] / static_cast<double>(reps);
      const double bound = truncated_upper_bounds(c, k, l).two_point;
      const double sigma = std::sqrt(bound * (1.0 - std::min(bound, 1.0)) / reps);
      CHECK(freq <= bound + 3.0 * sigma + 1e-9);
    }
}

TEST_CASE("hitting order probabilities are symmetric at alpha" * doctest::timeout(600)) {
  const auto c = consts3();
  const std::int64_t cap = 10'000;
  const std::int64_t reps = 30'000;
  std::int64_t zero_first = 0, e1_first = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    Walk walk(WalkConfig{3, cap, 606, static_cast<std::uint64_t>(r)});
    while (!walk.done()) {
      walk.advance();
      if (walk.l1_norm() == 0) {
        ++zero_first;
        break;
      }
      if (walk.l1_norm() == 1 && walk.position()[0] == 1) {
        ++e1_first;
        break;
      }
    }
  }
  const double f0 = zero_first / static_cast<double>(reps);
  const double f1 = e1_first / static_cast<double>(reps);
  const double se = std::sqrt(c.alpha * (1.0 - c.alpha) / reps);
  const double bias = std::pow(static_cast<double>(cap), -0.5);
  CHECK(std::fabs(f0 - c.alpha) <= 3.0 * se + bias);
  CHECK(std::fabs(f1 - c.alpha) <= 3.0 * se + bias);
  CHECK(std::fabs(f0 - f1) <= 3.0 * std::sqrt(2.0) * se);
}

TEST_CASE("truncated hitting probabilities increase to their limits" * doctest::timeout(600)) {
  const auto c = consts3();
  const std::int64_t cap = 10'000;
  const std::int64_t reps = 20'000;
  const std::vector<std::int64_t> grid{100, 1000, 10'000};
  // q_z(n) = P(T < min(n, T_z)) and s_z(n) = P(T_z < min(n, T)) for z = e1;
  // p(n) = P_{e1}(T_{S(1)} < min(n, T)) via the translated walk e1 + S
  std::array<std::int64_t, 3> q_hits{}, s_hits{}, p_hits{};
  for (std::int64_t r = 0; r < reps; ++r) {
    Walk walk(WalkConfig{3, cap, 707, static_cast<std::uint64_t>(r)});
    std::int64_t t_zero = cap + 1, t_e1 = cap + 1, t_sphere_from_e1 = cap + 1, t_zero_from_e1 = cap + 1;
    while (!walk.done()) {
      walk.advance();
      const auto& pos = walk.position();
      if (t_zero > cap && walk.l1_norm() == 0) t_zero = walk.time();
      if (t_e1 > cap && walk.l1_norm() == 1 && pos[0] == 1) t_e1 = walk.time();
      // translated start: position' = e1 + S
      const std::int64_t a = std::llabs(pos[0] + 1), b = std::llabs(pos[1]), cc = std::llabs(pos[2]);
      if (t_sphere_from_e1 > cap && a + b + cc == 1) t_sphere_from_e1 = walk.time();
      if (t_zero_from_e1 > cap && a + b + cc == 0) t_zero_from_e1 = walk.time();
      if (t_zero <= cap && t_e1 <= cap && t_sphere_from_e1 <= cap && t_zero_from_e1 <= cap) break;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      q_hits[i] += t_zero < std::min(grid[i], t_e1) ? 1 : 0;
      s_hits[i] += t_e1 < std::min(grid[i], t_zero) ? 1 : 0;
      p_hits[i] += t_sphere_from_e1 < std::min(grid[i], t_zero_from_e1) ? 1 : 0;
    }
  }
  double prev_q = -1, prev_s = -1, prev_p = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = q_hits[i] / static_cast<double>(reps);
    const double s = s_hits[i] / static_cast<double>(reps);
    const double p = p_hits[i] / static_cast<double>(reps);
    CHECK(q >= prev_q);
    CHECK(s >= prev_s);
    CHECK(p >= prev_p);
    prev_q = q;
    prev_s = s;
    prev_p = p;
    const double se = 3.0 / std::sqrt(static_cast<double>(reps));
    CHECK(q <= c.alpha + se);
    CHECK(s <= c.alpha + se);
    CHECK(p <= c.p + se);
  }
}
