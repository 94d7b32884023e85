#pragma once

// Brute-force reference integrators. They share no code with the library's
// geometry: cell changes along a curve are found by bisection on monotone
// pieces, and areas by integrating exact row integrals over y.

#include "checkerdisc/coloring.hpp"
#include "checkerdisc/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using checkerdisc::Coloring;
using checkerdisc::Index;
using checkerdisc::Vec2;

inline std::pair<long, long> cell_of(const Vec2& p) {
  return {static_cast<long>(std::floor(p.x())), static_cast<long>(std::floor(p.y()))};
}

/// Integral of f along the curve s -> point(s), s in [a, b], with speed
/// |point'(s)| = speed (constant). Both coordinates must be monotone between
/// consecutive knots, so equal cells at the ends of a piece mean the piece
/// stays in that cell. Pieces whose ends differ are bisected until they are
/// shorter than 1e-15 relative.
inline double curve_integral(const Coloring& f, const std::function<Vec2(double)>& point,
                             const std::vector<double>& knots, double speed) {
  checkerdisc::CompensatedSum total;
  std::function<void(double, double, std::pair<long, long>, std::pair<long, long>)> walk =
      [&](double a, double b, std::pair<long, long> ca, std::pair<long, long> cb) {
        if (ca == cb) {
          total += f.eval(point(0.5 * (a + b))) * speed * (b - a);
          return;
        }
        if (b - a <= 1e-15 * std::max(1.0, std::abs(b))) return;
        const double m = 0.5 * (a + b);
        const auto cm = cell_of(point(m));
        walk(a, m, ca, cm);
        walk(m, b, cm, cb);
      };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    if (b > a) walk(a, b, cell_of(point(a)), cell_of(point(b)));
  }
  return total.value();
}

inline double circle(const Coloring& f, const Vec2& c, double t, double lo = 0.0,
                     double hi = 2.0 * checkerdisc::kPi) {
  // Coordinates are monotone between multiples of pi/2.
  std::vector<double> knots = {lo};
  for (double q = std::ceil(lo / (checkerdisc::kPi / 2)) * (checkerdisc::kPi / 2); q < hi; q += checkerdisc::kPi / 2)
    if (q > lo) knots.push_back(q);
  knots.push_back(hi);
  return curve_integral(
      f, [&](double th) { return Vec2(c.x() + t * std::cos(th), c.y() + t * std::sin(th)); }, knots, t);
}

inline double polyline(const Coloring& f, const std::vector<Vec2>& pts) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 b = pts[(i + 1) % pts.size()];
    total += curve_integral(f, [&](double s) -> Vec2 { return a + s * (b - a); }, {0.0, 1.0}, (b - a).norm());
  }
  return total;
}

/// Exact integral of f over the segment [x0, x1] of the row at height y.
inline double row_integral(const Coloring& f, double y, double x0, double x1) {
  const auto k = static_cast<Index>(std::floor(y));
  if (k < 0 || k >= f.n() || x1 <= x0) return 0.0;
  const double lo = std::max(0.0, x0);
  const double hi = std::min(static_cast<double>(f.n()), x1);
  double total = 0.0;
  for (auto j = static_cast<Index>(std::floor(lo)); j < f.n() && j < hi; ++j) {
    const double a = std::max(lo, static_cast<double>(j));
    const double b = std::min(hi, static_cast<double>(j + 1));
    if (b > a) total += f.cell(j, k) * (b - a);
  }
  return total;
}

/// Midpoint rule in y of the exact row integrals over the chords returned by
/// chords(y). [y0, y1] is split at integers, where the rows jump.
inline double area_integral(const Coloring& f, double y0, double y1, double h,
                            const std::function<std::vector<std::pair<double, double>>(double)>& chords) {
  checkerdisc::CompensatedSum acc;
  double lo = y0;
  while (lo < y1) {
    const double hi = std::min(y1, std::floor(lo) + 1.0);
    const auto m = std::max(1L, static_cast<long>(std::ceil((hi - lo) / h)));
    const double step = (hi - lo) / static_cast<double>(m);
    for (long i = 0; i < m; ++i) {
      const double y = lo + (i + 0.5) * step;
      for (const auto& [a, b] : chords(y)) acc += row_integral(f, y, a, b) * step;
    }
    lo = hi;
  }
  return acc.value();
}

inline double disk(const Coloring& f, const Vec2& c, double t, double h) {
  return area_integral(f, c.y() - t, c.y() + t, h, [&](double y) {
    const double d = y - c.y();
    const double s = std::sqrt(std::max(0.0, t * t - d * d));
    return std::vector<std::pair<double, double>>{{c.x() - s, c.x() + s}};
  });
}

/// Even-odd chords of a simple polygon at height y.
inline std::vector<std::pair<double, double>> polygon_chords(const std::vector<Vec2>& poly, double y) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    if ((a.y() <= y) != (b.y() <= y)) xs.push_back(a.x() + (y - a.y()) * (b.x() - a.x()) / (b.y() - a.y()));
  }
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) out.push_back({xs[i], xs[i + 1]});
  return out;
}

inline double polygon(const Coloring& f, const std::vector<Vec2>& poly, double h) {
  double y0 = poly[0].y();
  double y1 = poly[0].y();
  for (const Vec2& p : poly) {
    y0 = std::min(y0, p.y());
    y1 = std::max(y1, p.y());
  }
  return area_integral(f, y0, y1, h, [&](double y) { return polygon_chords(poly, y); });
}

}  // namespace oracle
