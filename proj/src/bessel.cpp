#include "checkerdisc/bessel.hpp"

#include "checkerdisc/types.hpp"

#include <cmath>

namespace checkerdisc {

namespace detail {

double bessel_j0_series(double x) {
  // sum_k (-1)^k (x^2/4)^k / (k!)^2
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_j0_miller(double x) {
  x = std::abs(x);
  if (x == 0.0) return 1.0;
  // J_{k-1} = (2k/x) J_k - J_{k+1}, normalized by J0 + 2 sum J_{2k} = 1.
  int start = static_cast<int>(x + 20.0 + 9.0 * std::cbrt(x) + 2.0 * std::sqrt(x));
  start += start % 2;
  double next = 0.0;
  double cur = 1e-300;
  double norm = 0.0;
  double j0 = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
    }
    // cur now holds J_{k-1}.
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
  }
  j0 = cur;
  norm += j0;
  return j0 / norm;
}

double bessel_j0_asymptotic(double x) {
  x = std::abs(x);
  // Hankel expansion: J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi),
  // a_k = prod_{m=1..k} (2m-1)^2 / (k! 8^k).
  const double chi = x - 0.25 * kPi;
  double p = 0.0;
  double q = 0.0;
  double a = 1.0;
  double xp = 1.0;
  double prev_mag = INFINITY;
  for (int k = 0; k < 80; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= odd * odd / (8.0 * k);
      xp *= x;
    }
    const double term = a / xp;
    if (term > prev_mag) break;
    prev_mag = term;
    const int phase = k % 4;
    // k even -> P with sign (-1)^{k/2}; k odd -> Q with sign (-1)^{(k+1)/2}.
    switch (phase) {
      case 0: p += term; break;
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
    }
    if (term < 1e-17) break;
  }
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

double bessel_j0(double x) {
  const double ax = std::abs(x);
  if (ax <= kBesselSeriesLimit) return detail::bessel_j0_series(ax);
  if (ax <= kBesselAsymptoticLimit) return detail::bessel_j0_miller(ax);
  return detail::bessel_j0_asymptotic(ax);
}

double sigma1_hat(double r) { return kTwoPi * bessel_j0(kTwoPi * r); }

double bessel_remainder(double r) {
  return bessel_j0(r) * std::sqrt(0.5 * kPi * r) - std::cos(r - 0.25 * kPi);
}

}  // namespace checkerdisc
