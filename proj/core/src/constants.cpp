#include "walklab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "walklab/walk.hpp"

namespace walklab {

namespace detail {

double i0_scaled(double x) {
  if (x < 0) x = -x;
  if (x <= 20.0) {
    // power series of I0, all terms positive
    const double q = x * x / 4.0;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 120; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * 1e-18) break;
    }
    return sum * std::exp(-x);
  }
  // asymptotic series, truncated where terms reach ~1e-13 relative at x = 20
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 14; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * x);
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace detail

namespace {

double integrand_pow(double t, int d) {
  const double v = detail::i0_scaled(t / d);
  double r = v;
  for (int i = 1; i < d; ++i) r *= v;
  return r;
}

}  // namespace

double green_function_origin(int d, double tolerance) {
  if (d < 3)
    throw std::invalid_argument("green_function_origin: the integral diverges for d < 3");
  if (!(tolerance > 0))
    throw std::invalid_argument("green_function_origin: tolerance must be positive");
  using quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double split = 60.0;
  double err_head = 0, err_tail = 0;
  const double head = quad::integrate([d](double t) { return integrand_pow(t, d); },
                                      0.0, split, 15, tolerance / 8, &err_head);
  // integrand decays like (d/(2 pi t))^{d/2}; u = t^{-1/2} makes the tail
  // integrand u^{d-3}-smooth on (0, split^{-1/2}]
  const double tail = quad::integrate(
      [d](double u) { return integrand_pow(1.0 / (u * u), d) * 2.0 / (u * u * u); },
      0.0, 1.0 / std::sqrt(split), 15, tolerance / 8, &err_tail);
  (void)err_head;
  (void)err_tail;
  return head + tail;
}

double compute_gamma(int d, double tolerance) {
  if (d < 3) throw std::invalid_argument("compute_gamma: requires d >= 3");
  if (tolerance < 1e-10)
    throw std::invalid_argument("compute_gamma: tolerance below the certifiable 1e-10");
  const double g0 = green_function_origin(d, tolerance / 4);
  return 1.0 / g0;  // |d gamma| = |d G| / G^2 <= |d G| since G >= 1
}

DimensionConstants derive_all(int d, double gamma, double gamma_error) {
  if (d < 3) throw std::invalid_argument("derive_all: requires d >= 3");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("derive_all: gamma must lie in (0, 1)");
  DimensionConstants c;
  c.d = d;
  c.gamma = gamma;
  c.gamma_error = gamma_error;
  c.alpha = (1.0 - gamma) / (2.0 - gamma);
  c.lambda = -1.0 / std::log1p(-gamma);
  c.p = 1.0 - 1.0 / (2.0 * d * (1.0 - gamma));
  c.kappa = -1.0 / std::log(c.p + 1.0 / (2.0 * d));
  c.x0_b = 1.0 / std::log(1.0 / c.alpha);
  c.sum_max = 1.0 / std::log(1.0 / (2.0 * c.alpha));
  const double s = std::sqrt(1.0 - 4.0 * c.alpha * c.alpha);
  c.diff_max = 1.0 / std::log((1.0 + s) / (2.0 * c.alpha));
  c.weight_c = -1.0 / std::log(c.p / 2.0 + std::sqrt(c.p * c.p / 4.0 + 1.0 / (2.0 * d)));
  const double dp2 = d * c.p * c.p;
  c.weight_a = dp2 + std::sqrt(dp2 * dp2 + 2.0 * dp2);
  return c;
}

DimensionConstants dimension_constants(int d, double tolerance) {
  return derive_all(d, compute_gamma(d, tolerance), tolerance);
}

std::vector<GammaProfilePoint> gamma_n_profile(int d,
                                               const std::vector<std::int64_t>& n_grid,
                                               std::int64_t replications,
                                               std::uint64_t seed,
                                               int threads) {
  if (replications < 1000)
    throw std::invalid_argument("gamma_n_profile: needs at least 1e3 replications");
  if (n_grid.empty()) return {};
  for (std::int64_t n : n_grid)
    if (n < 1) throw std::invalid_argument("gamma_n_profile: horizons must be >= 1");

  std::vector<std::int64_t> grid = n_grid;
  std::sort(grid.begin(), grid.end());
  const std::int64_t n_max = grid.back();

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::int64_t>(replications, 64))));

  // Count walks surviving (no return) past each grid horizon; exact integer
  // partials make the reduction order-independent.
  std::vector<std::vector<std::int64_t>> partial(
      static_cast<std::size_t>(workers), std::vector<std::int64_t>(grid.size(), 0));
  auto body = [&](int w) {
    std::vector<std::int64_t>& mine = partial[static_cast<std::size_t>(w)];
    for (std::int64_t r = w; r < replications; r += workers) {
      WalkConfig cfg{d, n_max, seed, static_cast<std::uint64_t>(r)};
      Walk walk(cfg);
      std::int64_t return_time = n_max + 1;  // "no return within n_max"
      while (walk.time() < n_max) {
        walk.advance();
        if (walk.l1_norm() == 0) {
          return_time = walk.time();
          break;
        }
      }
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (return_time > grid[i]) ++mine[i];
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (std::thread& t : pool) t.join();
  }

  std::vector<GammaProfilePoint> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::int64_t survive = 0;
    for (int w = 0; w < workers; ++w) survive += partial[static_cast<std::size_t>(w)][i];
    const double est = static_cast<double>(survive) / static_cast<double>(replications);
    out[i] = {grid[i], est,
              std::sqrt(std::max(est * (1.0 - est), 0.0) / static_cast<double>(replications))};
  }
  return out;
}

}  // namespace walklab
