#pragma once

#include <cstdint>

#include "walklab/constants.hpp"

namespace walklab {

enum class PmfKind {
  geometric_site,    // total local time of a single site
  joint_two_point,   // local times of two neighboring sites
  ball_occupation,   // total occupation time of the unit sphere
  joint_point_ball,  // local time of the center and sphere occupation jointly
};

struct PmfSpec {
  PmfKind kind = PmfKind::geometric_site;
  DimensionConstants constants;
};

/// P(xi(0, inf) = k) = gamma (1-gamma)^k, k >= 0.
double geometric_site_pmf(const DimensionConstants& c, std::int64_t k);

/// P(xi(0, inf) = k, xi(e_i, inf) = l) = (1-2a) C(k+l, k) a^{k+l}.
double joint_two_point_pmf(const DimensionConstants& c, std::int64_t k, std::int64_t l);

/// P(Xi(0, inf) = j) = (1-p-1/(2d)) (p+1/(2d))^{j-1}, j >= 1 (the first
/// visit to the sphere is certain, so the support starts at 1).
double ball_occupation_pmf(const DimensionConstants& c, std::int64_t j);

/// P(xi(0, inf) = k, Xi(0, inf) = l+1) = C(l, k) (1-p-1/(2d)) p^{l-k} (1/(2d))^k,
/// 0 <= k <= l.
double joint_point_ball_pmf(const DimensionConstants& c, std::int64_t k, std::int64_t l);

/// Finite-horizon upper bounds valid for every n: the joint laws divided by
/// their prefactors. two_point bounds P(xi(0,n)=k, xi(e_i,n)=l) for k+l > 0;
/// point_ball bounds P(xi(e_i,n)=k, Xi(e_i,n)=l) for l > 0 (zero when k > l).
struct TruncatedBounds {
  double two_point = 0;
  double point_ball = 0;
};
TruncatedBounds truncated_upper_bounds(const DimensionConstants& c, std::int64_t k,
                                       std::int64_t l);

/// log C(n, k) via lgamma; exact small cases handled by the callers.
double log_binomial(std::int64_t n, std::int64_t k);

}  // namespace walklab
