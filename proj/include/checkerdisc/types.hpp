#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <numbers>

namespace checkerdisc {

using Index = Eigen::Index;
using Vec2 = Eigen::Vector2d;
using Vec2i = Eigen::Matrix<Index, 2, 1>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Quadrature or search output paired with an error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Neumaier-compensated accumulator. Summation order is the caller's order,
/// so results are reproducible whenever the caller's order is fixed.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline Index floor_index(double x) { return static_cast<Index>(std::floor(x)); }

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// sin(pi u) / (pi u) with sinc(0) = 1.
inline double sinc(double u) {
  if (std::abs(u) < 1e-5) {
    const double z = kPi * u;
    return 1.0 - z * z / 6.0;
  }
  return std::sin(kPi * u) / (kPi * u);
}

}  // namespace checkerdisc
