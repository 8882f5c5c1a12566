#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "walklab/constants.hpp"

namespace walklab {

/// B: unit sublevel set of g(x,y), the joint rate of two neighboring local
/// times (symmetric in x,y). D: unit sublevel set of f(x,y), the joint rate
/// of a center local time x and its sphere occupation y (domain y >= x >= 0).
enum class RateSet { B, D };

struct RateSetDescriptor {
  RateSet which = RateSet::B;
  DimensionConstants constants;
};

/// g(x,y) = -(x+y)log(x+y) + x log x + y log y - (x+y)log alpha,
/// with the continuity convention 0 log 0 = 0. Degree-1 homogeneous.
double rate_g(const DimensionConstants& c, double x, double y);

/// f(x,y) = -y log y + x log x + (y-x)log(y-x) + x log(2d) + (y-x)log(1/p),
/// 0 <= x <= y, same conventions.
double rate_f(const DimensionConstants& c, double x, double y);

double rate_value(const RateSetDescriptor& desc, double x, double y);

/// The one or two boundary solutions of rate = 1 at abscissa x. The lower
/// branch is clamped to the domain floor (y = 0 for B, y = x for D) when the
/// floor itself lies inside the set.
struct BoundaryPoint {
  double x = 0;
  double y_low = 0;
  double y_high = 0;
};

/// Solves rate(x, y) = 1 in y by bisection on each monotone branch around
/// the in-y minimizer (y = x(1-gamma) for B, y = x/(1-p) for D). Requires
/// 0 <= x <= lambda; beyond lambda the minimum exceeds 1 and there is no
/// solution.
BoundaryPoint solve_boundary(const RateSetDescriptor& desc, double x, double tol = 1e-12);

struct LabeledPoint {
  std::string label;
  double x = 0;
  double y = 0;
};

/// The closed-form landmark points of the boundary curve; every returned
/// point satisfies |rate - 1| <= 1e-10.
std::vector<LabeledPoint> extremal_points(const RateSetDescriptor& desc);

/// (k, l) in scale * set, i.e. rate(k/scale, l/scale) <= 1 (homogeneity).
/// Points outside the domain quadrant (or below the diagonal, for D) are not
/// members.
bool scaled_lattice_membership(const RateSetDescriptor& desc, double scale,
                               std::int64_t k, std::int64_t l);

/// All integer pairs inside scale * set, enumerated with one boundary solve
/// per abscissa. scale must be positive and <= 1e4 to keep the list small.
std::vector<std::pair<std::int64_t, std::int64_t>> enumerate_scaled_lattice(
    const RateSetDescriptor& desc, double scale);

/// Area of the unit-scale set (boundary-solver quadrature) and its ratio to
/// the bounding box [0,lambda]^2 (B) or bounding triangle (D). The sets fill
/// only part of those regions; no reference value is asserted.
struct SetArea {
  double area = 0;
  double bounding_area = 0;
  double ratio = 0;
};
SetArea set_area(const RateSetDescriptor& desc, int grid = 2000);

}  // namespace walklab
