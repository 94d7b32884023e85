#pragma once

// Empirical constants measured by one-off sweeps and committed as
// regression thresholds. Each floor sits below the smallest value seen in its
// calibration sweep; each ceiling sits above the largest.

namespace checkerdisc::fixtures {

/// sup over [1, 1e4] of r |e(r)|.
inline constexpr double kBesselRemainderSup = 0.125;
/// c2 in the lower estimate for sigma1-hat: sup r|e(r)| / pi.
inline constexpr double kBesselC2 = kBesselRemainderSup / 3.141592653589793;

/// min over [1/(2 pi), 100] of r (sigma1-hat(r)^2 + sigma1-hat(2r)^2),
/// to three digits (0.33445 at r = 0.4203).
inline constexpr double kLemmaDoubleMin = 0.334;

/// Floor on (D_t^2 + D_{2t}^2) / t. The chessboard at t = 2 is the lowest
/// coloring seen (3.25 at n = 32, 2.52 at n = 64, 2.25 at n = 100) and its
/// interior average tends to 1.73 as n grows.
inline constexpr double kCorollaryFloor = 1.5;

/// Ceiling on the Poincare ratio. f-hat fields with scaled exclusion annuli
/// stay near 1.156; the constant-field configurations used in the tests reach
/// 1.43.
inline constexpr double kPoincareConstant = 1.5;

/// Floor on D_t^2 / t for n = t. Random colorings at t = 8, 16 give at least
/// 4.56; the chessboard gives 2.31 (t = 8) and 2.22 (t = 16).
inline constexpr double kHolesFloor = 2.0;

/// Floor on the best arc |D| / sqrt(t) for n = t. Random colorings at
/// t = 8, 16 give at least 3.10; the chessboard gives 1.94 (t = 8) and
/// 2.17 (t = 16).
inline constexpr double kArcFloor = 1.75;

}  // namespace checkerdisc::fixtures
