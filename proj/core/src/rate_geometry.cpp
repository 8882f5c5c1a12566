#include "walklab/rate_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace walklab {

namespace {

// continuity convention at the axes: 0 log 0 = 0
double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

void require_constants(const DimensionConstants& c) {
  if (c.d < 3 || !(c.gamma > 0.0 && c.gamma < 1.0))
    throw std::invalid_argument("rate function: constants are not initialized");
}

}  // namespace

double rate_g(const DimensionConstants& c, double x, double y) {
  require_constants(c);
  if (x < 0.0 || y < 0.0) throw std::invalid_argument("rate_g: requires x, y >= 0");
  return -xlogx(x + y) + xlogx(x) + xlogx(y) - (x + y) * std::log(c.alpha);
}

double rate_f(const DimensionConstants& c, double x, double y) {
  require_constants(c);
  if (x < 0.0) throw std::invalid_argument("rate_f: requires x >= 0");
  if (y < x) throw std::invalid_argument("rate_f: requires y >= x");
  return -xlogx(y) + xlogx(x) + xlogx(y - x) + x * std::log(2.0 * c.d) +
         (y - x) * std::log(1.0 / c.p);
}

double rate_value(const RateSetDescriptor& desc, double x, double y) {
  return desc.which == RateSet::B ? rate_g(desc.constants, x, y)
                                  : rate_f(desc.constants, x, y);
}

namespace {

// Bisection on a monotone branch of y -> rate(x, y) - 1.
double bisect_branch(const RateSetDescriptor& desc, double x, double lo, double hi,
                     bool increasing) {
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool below = rate_value(desc, x, mid) < 1.0;
    if (below == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BoundaryPoint solve_boundary(const RateSetDescriptor& desc, double x, double tol) {
  const DimensionConstants& c = desc.constants;
  require_constants(c);
  if (!(tol > 0.0)) throw std::invalid_argument("solve_boundary: tol must be positive");
  if (x < 0.0) throw std::invalid_argument("solve_boundary: x must be >= 0");
  const double lam = c.lambda;
  if (x > lam * (1.0 + 1e-9))
    throw std::domain_error("solve_boundary: no solution, x exceeds lambda");
  const double xx = std::min(x, lam);

  const bool is_b = desc.which == RateSet::B;
  const double y_min = is_b ? xx * (1.0 - c.gamma) : xx / (1.0 - c.p);
  const double at_min = rate_value(desc, xx, y_min);  // equals x / lambda
  BoundaryPoint bp;
  bp.x = xx;
  if (at_min >= 1.0 - 1e-13) {  // x = lambda: the two branches meet
    bp.y_low = bp.y_high = y_min;
    return bp;
  }

  double hi = (is_b ? lam : c.kappa) + 1.0;  // strictly above the curve's max y
  while (rate_value(desc, xx, hi) <= 1.0) hi *= 2.0;
  bp.y_high = bisect_branch(desc, xx, y_min, hi, true);

  const double floor_y = is_b ? 0.0 : xx;
  if (rate_value(desc, xx, floor_y) <= 1.0) {
    bp.y_low = floor_y;  // the domain floor lies inside the set
  } else {
    bp.y_low = bisect_branch(desc, xx, floor_y, y_min, false);
    if (std::fabs(rate_value(desc, xx, bp.y_low) - 1.0) > tol)
      throw std::runtime_error("solve_boundary: lower branch did not converge");
  }
  if (std::fabs(rate_value(desc, xx, bp.y_high) - 1.0) > tol)
    throw std::runtime_error("solve_boundary: upper branch did not converge");
  return bp;
}

std::vector<LabeledPoint> extremal_points(const RateSetDescriptor& desc) {
  const DimensionConstants& c = desc.constants;
  require_constants(c);
  std::vector<LabeledPoint> pts;
  if (desc.which == RateSet::B) {
    const double h = 0.5 * c.sum_max;
    const double s = std::sqrt(1.0 - 4.0 * c.alpha * c.alpha);
    pts.push_back({"y_intercept", 0.0, c.x0_b});
    pts.push_back({"x_intercept", c.x0_b, 0.0});
    pts.push_back({"x_max", c.lambda, c.lambda * (1.0 - c.gamma)});
    pts.push_back({"y_max", c.lambda * (1.0 - c.gamma), c.lambda});
    pts.push_back({"sum_max_diagonal", h, h});
    pts.push_back({"diff_max", (1.0 + s) / (2.0 * s) * c.diff_max,
                   (1.0 - s) / (2.0 * s) * c.diff_max});
  } else {
    pts.push_back({"y_intercept", 0.0, 1.0 / std::log(1.0 / c.p)});
    pts.push_back({"diagonal", 1.0 / std::log(2.0 * c.d), 1.0 / std::log(2.0 * c.d)});
    pts.push_back({"y_max", c.kappa / (2.0 * c.d * c.p + 1.0), c.kappa});
    pts.push_back({"x_max", c.lambda, c.lambda / (1.0 - c.p)});
  }
  return pts;
}

bool scaled_lattice_membership(const RateSetDescriptor& desc, double scale,
                               std::int64_t k, std::int64_t l) {
  require_constants(desc.constants);
  if (!(scale > 0.0)) throw std::invalid_argument("scaled_lattice_membership: scale must be > 0");
  if (k < 0 || l < 0) return false;
  if (desc.which == RateSet::D && l < k) return false;
  const double x = static_cast<double>(k) / scale;
  const double y = static_cast<double>(l) / scale;
  return rate_value(desc, x, y) <= 1.0;
}

std::vector<std::pair<std::int64_t, std::int64_t>> enumerate_scaled_lattice(
    const RateSetDescriptor& desc, double scale) {
  require_constants(desc.constants);
  if (!(scale > 0.0 && scale <= 1e4))
    throw std::invalid_argument("enumerate_scaled_lattice: scale must be in (0, 1e4]");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const double lam = desc.constants.lambda;
  const std::int64_t k_max = static_cast<std::int64_t>(std::floor(scale * lam + 1e-9));
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const double x = std::min(static_cast<double>(k) / scale, lam);
    const BoundaryPoint bp = solve_boundary(desc, x);
    std::int64_t l_lo = static_cast<std::int64_t>(std::ceil(scale * bp.y_low - 1e-9)) - 1;
    std::int64_t l_hi = static_cast<std::int64_t>(std::floor(scale * bp.y_high + 1e-9)) + 1;
    l_lo = std::max<std::int64_t>(l_lo, desc.which == RateSet::D ? k : 0);
    for (std::int64_t l = l_lo; l <= l_hi; ++l)
      if (scaled_lattice_membership(desc, scale, k, l)) out.emplace_back(k, l);
  }
  return out;
}

SetArea set_area(const RateSetDescriptor& desc, int grid) {
  require_constants(desc.constants);
  if (grid < 2) throw std::invalid_argument("set_area: grid must be >= 2");
  const double lam = desc.constants.lambda;
  double area = 0.0;
  // midpoint rule over the abscissa; width at x is y_high - y_low
  for (int i = 0; i < grid; ++i) {
    const double x = lam * (i + 0.5) / grid;
    const BoundaryPoint bp = solve_boundary(desc, x);
    area += (bp.y_high - bp.y_low) * (lam / grid);
  }
  SetArea sa;
  sa.area = area;
  sa.bounding_area = desc.which == RateSet::B
                         ? lam * lam
                         : lam * desc.constants.kappa - 0.5 * lam * lam;
  sa.ratio = sa.area / sa.bounding_area;
  return sa;
}

}  // namespace walklab
