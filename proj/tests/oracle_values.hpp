#pragma once

// Reference values frozen from an independent 30-digit computation before
// the library was built: the closed-form Watson integral for the d = 3
// Green's function, direct high-resolution quadrature for d = 4 and 5, and
// exact arithmetic for everything derived from gamma. Tests compare the
// library against these, never against itself.

namespace oracle {

inline constexpr double kG0_3 = 1.516386059151978;
inline constexpr double kGamma3 = 0.659462670449001;
inline constexpr double kGamma4 = 0.806798326775016;
inline constexpr double kGamma5 = 0.864821390179345;

inline constexpr double kAlpha3 = 0.254030471247719;
inline constexpr double kLambda3 = 0.928306406258954;
inline constexpr double kP3 = 0.510577395769157;
inline constexpr double kKappa3 = 2.565921307396946;
inline constexpr double kX0B3 = 0.729766643147986;
inline constexpr double kSumMax3 = 1.476769224527793;
inline constexpr double kDiffMax3 = 0.770154723621089;
inline constexpr double kWeightC3 = 3.273764632480451;
inline constexpr double kWeightA3 = 2.257115544011732;

inline constexpr double kOneMinusTwoAlpha3 = 0.491939057504562;  // 1 - 2 alpha
inline constexpr double kBallNewDensity3 = 0.322755937564176;    // 1 - p - 1/6
inline constexpr double kBallMean3 = 3.098316354911868;          // 1/(1-p-1/6)
inline constexpr double kGeoMean3 = 0.516386059151978;           // (1-gamma)/gamma
inline constexpr double kGammaSq3 = 0.434891013715728;
inline constexpr double kLevelRatio3 = 2.936535625385055;        // 1/(1-gamma)

inline constexpr double kLamOneMinusGamma3 = 0.316122984592509;  // lambda (1-gamma)
inline constexpr double kLamOver1MinusP3 = 1.896737907555055;    // lambda/(1-p)
inline constexpr double kDYIntercept3 = 1.487623614713765;       // 1/log(1/p)
inline constexpr double kDDiagonal3 = 0.558110626551247;         // 1/log(2d)
inline constexpr double kDKappaX3 = 0.631461499558512;           // kappa/(2dp+1)
inline constexpr double kMaxDiffX3 = 0.832154939574035;
inline constexpr double kMaxDiffY3 = 0.0620002159529465;

inline constexpr double kPointBall12 = 0.0549306286901832;  // pmf at k=1, l=2

// exponentially scaled Bessel I0 spot values
inline constexpr double kI0e05 = 0.645035270449150;
inline constexpr double kI0e10 = 0.127833337163429;
inline constexpr double kI0e155 = 0.102180506523292;
inline constexpr double kI0e100 = 0.0399443792990967;
inline constexpr double kI0e1000 = 0.0126172404558913;

}  // namespace oracle
