#pragma once

#include <cstdint>
#include <vector>

namespace walklab {

/// Every scalar constant of the problem for a fixed dimension d >= 3, all
/// derived from the single root quantity gamma (the escape probability).
struct DimensionConstants {
  int d = 0;
  double gamma = 0;     // P(the walk never returns to its start) = 1/G(0)
  double alpha = 0;     // (1-gamma)/(2-gamma): reach a fixed neighbor first
  double lambda = 0;    // -1/log(1-gamma): max local time in units of log n
  double p = 0;         // sphere-to-sphere return probability avoiding the center
  double kappa = 0;     // -1/log(p+1/(2d)): max sphere occupation per log n
  double x0_b = 0;      // 1/log(1/alpha): two-solution threshold of set B
  double sum_max = 0;   // 1/log(1/(2 alpha)): max of x+y on the B boundary
  double diff_max = 0;  // 1/log((1+sqrt(1-4a^2))/(2a)): max of x-y on B
  double weight_c = 0;  // -1/log(p/2 + sqrt(p^2/4 + 1/(2d))): max ball weight
  double weight_a = 0;  // d p^2 + sqrt(d^2 p^4 + 2 d p^2)
  double gamma_error = 0;  // absolute error budget carried by gamma
};

/// Lattice Green's function at the origin, G(0) = sum_n P(S_n = 0), d >= 3.
/// The d-dimensional momentum integral of 1/(1 - (1/d) sum cos theta_i) is
/// evaluated through its separable Laplace form, a one-dimensional integral
/// of [e^{-t/d} I0(t/d)]^d; the algebraic t^{-d/2} tail is folded in by the
/// substitution u = t^{-1/2}. Deterministic, absolute error <= tolerance.
double green_function_origin(int d, double tolerance = 1e-12);

/// Escape probability gamma = 1/G(0). Monotone increasing in d.
/// tolerance is the absolute error contract (>= 1e-10 is certifiable).
double compute_gamma(int d, double tolerance = 1e-10);

/// All closed-form constants from a given gamma in (0,1).
DimensionConstants derive_all(int d, double gamma, double gamma_error = 0.0);

/// compute_gamma + derive_all in one call.
DimensionConstants dimension_constants(int d, double tolerance = 1e-10);

struct GammaProfilePoint {
  std::int64_t n = 0;
  double estimate = 0;   // fraction of walks with no return during steps 1..n
  double std_error = 0;  // binomial standard error
};

/// Monte Carlo profile of gamma(n) = P(no return to the origin within n
/// steps) on a grid of horizons, one seeded stream per replication.
/// Estimates are pointwise nonincreasing in n and approach gamma from above.
std::vector<GammaProfilePoint> gamma_n_profile(int d,
                                               const std::vector<std::int64_t>& n_grid,
                                               std::int64_t replications,
                                               std::uint64_t seed = 0,
                                               int threads = 0);

namespace detail {
/// Exponentially scaled modified Bessel function: e^{-x} I0(x), x >= 0.
double i0_scaled(double x);
}  // namespace detail

}  // namespace walklab
