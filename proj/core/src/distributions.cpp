#include "walklab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace walklab {

namespace {

// Exact in double for the small orders used below (values < 2^53).
double binomial_direct(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (std::int64_t i = 1; i <= k; ++i)
    b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  return b;
}

// alpha^{k+l} underflows near the boundary scale of the rate sets, so large
// orders are evaluated in log space.
constexpr std::int64_t kLogSpaceThreshold = 40;

void require_constants(const DimensionConstants& c) {
  if (c.d < 3 || !(c.gamma > 0.0 && c.gamma < 1.0))
    throw std::invalid_argument("pmf: constants are not initialized");
}

}  // namespace

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double geometric_site_pmf(const DimensionConstants& c, std::int64_t k) {
  require_constants(c);
  if (k < 0) throw std::invalid_argument("geometric_site_pmf: k must be >= 0");
  if (k <= kLogSpaceThreshold)
    return c.gamma * std::pow(1.0 - c.gamma, static_cast<double>(k));
  return c.gamma * std::exp(static_cast<double>(k) * std::log1p(-c.gamma));
}

double joint_two_point_pmf(const DimensionConstants& c, std::int64_t k, std::int64_t l) {
  require_constants(c);
  if (k < 0 || l < 0) throw std::invalid_argument("joint_two_point_pmf: k, l must be >= 0");
  const double pref = 1.0 - 2.0 * c.alpha;  // = gamma / (2 - gamma)
  const std::int64_t lo = std::min(k, l);   // bit-exact symmetry in (k, l)
  if (k + l <= kLogSpaceThreshold)
    return pref * binomial_direct(k + l, lo) * std::pow(c.alpha, static_cast<double>(k + l));
  return pref * std::exp(log_binomial(k + l, lo) +
                         static_cast<double>(k + l) * std::log(c.alpha));
}

double ball_occupation_pmf(const DimensionConstants& c, std::int64_t j) {
  require_constants(c);
  if (j < 1)
    throw std::invalid_argument("ball_occupation_pmf: support starts at j = 1");
  const double q = c.p + 1.0 / (2.0 * c.d);
  if (j - 1 <= kLogSpaceThreshold) return (1.0 - q) * std::pow(q, static_cast<double>(j - 1));
  return (1.0 - q) * std::exp(static_cast<double>(j - 1) * std::log(q));
}

double joint_point_ball_pmf(const DimensionConstants& c, std::int64_t k, std::int64_t l) {
  require_constants(c);
  if (k < 0 || l < 0) throw std::invalid_argument("joint_point_ball_pmf: k, l must be >= 0");
  if (k > l)
    throw std::invalid_argument(
        "joint_point_ball_pmf: the center's local time cannot exceed the excursion count");
  const double pref = 1.0 - c.p - 1.0 / (2.0 * c.d);
  const double inv2d = 1.0 / (2.0 * c.d);
  if (l <= kLogSpaceThreshold)
    return pref * binomial_direct(l, k) * std::pow(c.p, static_cast<double>(l - k)) *
           std::pow(inv2d, static_cast<double>(k));
  return pref * std::exp(log_binomial(l, k) +
                         static_cast<double>(l - k) * std::log(c.p) +
                         static_cast<double>(k) * std::log(inv2d));
}

TruncatedBounds truncated_upper_bounds(const DimensionConstants& c, std::int64_t k,
                                       std::int64_t l) {
  require_constants(c);
  if (k < 0 || l < 0) throw std::invalid_argument("truncated_upper_bounds: k, l must be >= 0");
  TruncatedBounds b;
  b.two_point = joint_two_point_pmf(c, k, l) / (1.0 - 2.0 * c.alpha);
  b.point_ball =
      k > l ? 0.0 : joint_point_ball_pmf(c, k, l) / (1.0 - c.p - 1.0 / (2.0 * c.d));
  return b;
}

}  // namespace walklab
