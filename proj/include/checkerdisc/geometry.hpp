#pragma once

#include "checkerdisc/coloring.hpp"
#include "checkerdisc/polygon.hpp"
#include "checkerdisc/types.hpp"

#include <optional>
#include <vector>

namespace checkerdisc {

struct Circle {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;

  [[nodiscard]] Vec2 point_at(double theta) const {
    return center + radius * Vec2(std::cos(theta), std::sin(theta));
  }
};

/// Angular range [lo, hi] with 0 <= hi - lo <= 2 pi.
struct AngleWindow {
  double lo = 0.0;
  double hi = kTwoPi;

  [[nodiscard]] double width() const { return hi - lo; }
};

struct Arc {
  Circle circle;
  AngleWindow window;
};

/// One piece of a circle lying in a single lattice cell. The cell index is a
/// lattice coordinate and may lie outside the coloring's grid.
struct CellInterval {
  Vec2i cell = Vec2i::Zero();
  double theta_lo = 0.0;
  double theta_hi = 0.0;

  [[nodiscard]] double width() const { return theta_hi - theta_lo; }
};

/// Sorted, disjoint intervals covering the window, each inside one cell.
using CellPartition = std::vector<CellInterval>;

/// Angles closer than this are merged when building a partition.
inline constexpr double kAngleMergeTolerance = 1e-12;

/// Splits the circle (or the window of it) at every crossing with the lines
/// x = m and y = m, m integer. Intervals are labeled by the cell containing
/// their midpoint; zero-width intervals from tangencies are dropped.
CellPartition partition_circle(const Circle& c, const std::optional<AngleWindow>& window = std::nullopt);

/// Integral of f over the circle (or arc) against arc length.
double circle_discrepancy(const Coloring& f, const Circle& c, const std::optional<AngleWindow>& window = std::nullopt);

/// Signed arc-length contributions of each partition interval.
std::vector<double> interval_contributions(const Coloring& f, const Circle& c, const CellPartition& partition);

/// Area of the disk intersected with the unit cell [j, j+1) x [k, k+1).
double disk_cell_area(const Circle& c, Index j, Index k);

/// Integral of f over the closed disk.
double disk_discrepancy(const Coloring& f, const Circle& c);

/// Calls visit(j, k, s0, s1) for every piece of the segment a + s (b - a),
/// s in [0, 1], between consecutive lattice-line crossings. Pieces are
/// visited in increasing s and each lies inside the cell (j, k).
template <typename Visit>
void for_each_cell_piece(const Vec2& a, const Vec2& b, Visit&& visit);

/// Integral of f along the placed closed polyline, against arc length.
double polyline_discrepancy(const Coloring& f, const PolyShape& shape, const Placement& placement);
double polyline_discrepancy(const Coloring& f, const std::vector<Vec2>& closed_polyline);

/// Integral of f over the placed polygon, summing cell values times the
/// clipped cell-polygon areas.
double polygon_region_discrepancy(const Coloring& f, const PolyShape& shape, const Placement& placement);
double polygon_region_discrepancy(const Coloring& f, const std::vector<Vec2>& polygon);

/// Same integral as polygon_region_discrepancy, evaluated as a boundary
/// integral of the row-wise antiderivative of f. Cost is linear in the
/// perimeter instead of the area. The polygon must be counter-clockwise.
double region_discrepancy_by_boundary(const Coloring& f, const std::vector<Vec2>& polygon);

/// Area of a polygon clipped to the axis-aligned box [lo, hi].
double clipped_area(const std::vector<Vec2>& polygon, const Vec2& lo, const Vec2& hi);

double shoelace_area(const std::vector<Vec2>& polygon);

// ---------------------------------------------------------------------------

template <typename Visit>
void for_each_cell_piece(const Vec2& a, const Vec2& b, Visit&& visit) {
  const Vec2 d = b - a;

  // Crossing parameters with vertical and horizontal lattice lines, each
  // generated in increasing order and then merged.
  auto crossings = [](double p0, double dp, auto&& emit) {
    if (dp == 0.0) return;
    const double p1 = p0 + dp;
    if (dp > 0) {
      for (double m = std::floor(p0) + 1.0; m < p1; m += 1.0) emit((m - p0) / dp);
    } else {
      for (double m = std::ceil(p0) - 1.0; m > p1; m -= 1.0) emit((m - p0) / dp);
    }
  };

  thread_local std::vector<double> xs;
  thread_local std::vector<double> ys;
  xs.clear();
  ys.clear();
  crossings(a.x(), d.x(), [&](double s) { xs.push_back(s); });
  crossings(a.y(), d.y(), [&](double s) { ys.push_back(s); });

  double prev = 0.0;
  std::size_t ix = 0;
  std::size_t iy = 0;
  auto emit_piece = [&](double s) {
    if (s <= prev) return;
    const double mid = 0.5 * (prev + s);
    const Vec2 p = a + mid * d;
    visit(floor_index(p.x()), floor_index(p.y()), prev, s);
    prev = s;
  };
  while (ix < xs.size() || iy < ys.size()) {
    double s;
    if (iy >= ys.size() || (ix < xs.size() && xs[ix] <= ys[iy])) {
      s = xs[ix++];
    } else {
      s = ys[iy++];
    }
    emit_piece(std::clamp(s, 0.0, 1.0));
  }
  emit_piece(1.0);
}

}  // namespace checkerdisc
