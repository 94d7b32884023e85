#pragma once

namespace checkerdisc {

/// Argument below which J0 is summed from its power series.
inline constexpr double kBesselSeriesLimit = 2.0;
/// Argument above which J0 uses the Hankel asymptotic expansion. Between the
/// two limits J0 comes from Miller's backward recurrence.
inline constexpr double kBesselAsymptoticLimit = 25.0;

/// Bessel function of the first kind, order zero. Absolute error is a few
/// ulps of the envelope min(1, sqrt(2 / (pi |x|))).
double bessel_j0(double x);

/// Fourier transform of arc length on the unit circle at radial frequency r:
/// 2 pi J0(2 pi r).
double sigma1_hat(double r);

/// e(r) = J0(r) sqrt(pi r / 2) - cos(r - pi / 4), the remainder of the
/// leading-order large-argument form.
double bessel_remainder(double r);

namespace detail {
double bessel_j0_series(double x);
double bessel_j0_miller(double x);
double bessel_j0_asymptotic(double x);
}  // namespace detail

}  // namespace checkerdisc
