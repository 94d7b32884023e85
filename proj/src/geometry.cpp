#include "checkerdisc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace checkerdisc {

namespace {

// Reduces theta into [0, 2 pi) relative to lo.
double relative_angle(double theta, double lo) {
  double rel = std::fmod(theta - lo, kTwoPi);
  if (rel < 0) rel += kTwoPi;
  return rel;
}

}  // namespace

CellPartition partition_circle(const Circle& c, const std::optional<AngleWindow>& window) {
  const double t = c.radius;
  const double lo = window ? window->lo : 0.0;
  const double width = window ? window->width() : kTwoPi;
  CellPartition out;
  if (!(t > 0)) return out;
  if (width <= 0) return out;

  std::vector<double> rel;
  rel.reserve(static_cast<std::size_t>(8.0 * t) + 8);
  auto push = [&](double theta) {
    const double r = relative_angle(theta, lo);
    if (r > 0 && r < width) rel.push_back(r);
  };

  // x1 + t cos(theta) = m
  for (double m = std::ceil(c.center.x() - t); m <= c.center.x() + t; m += 1.0) {
    const double v = std::clamp((m - c.center.x()) / t, -1.0, 1.0);
    const double a = std::acos(v);
    push(a);
    push(-a);
  }
  // x2 + t sin(theta) = m
  for (double m = std::ceil(c.center.y() - t); m <= c.center.y() + t; m += 1.0) {
    const double v = std::clamp((m - c.center.y()) / t, -1.0, 1.0);
    const double a = std::asin(v);
    push(a);
    push(kPi - a);
  }
  std::sort(rel.begin(), rel.end());

  out.reserve(rel.size() + 1);
  double prev = 0.0;
  auto close_interval = [&](double next) {
    if (next - prev <= kAngleMergeTolerance) return;
    const double mid = lo + 0.5 * (prev + next);
    const Vec2 p = c.point_at(mid);
    out.push_back(CellInterval{Vec2i(floor_index(p.x()), floor_index(p.y())), lo + prev, lo + next});
    prev = next;
  };
  for (double r : rel) close_interval(r);
  if (width - prev > kAngleMergeTolerance || out.empty()) {
    const double mid = lo + 0.5 * (prev + width);
    const Vec2 p = c.point_at(mid);
    out.push_back(CellInterval{Vec2i(floor_index(p.x()), floor_index(p.y())), lo + prev, lo + width});
  } else {
    // Absorb a sub-tolerance tail into the last interval so the cover is exact.
    out.back().theta_hi = lo + width;
  }
  return out;
}

std::vector<double> interval_contributions(const Coloring& f, const Circle& c, const CellPartition& partition) {
  std::vector<double> out;
  out.reserve(partition.size());
  for (const CellInterval& iv : partition) {
    out.push_back(f.cell(iv.cell.x(), iv.cell.y()) * c.radius * iv.width());
  }
  return out;
}

double circle_discrepancy(const Coloring& f, const Circle& c, const std::optional<AngleWindow>& window) {
  const double t = c.radius;
  const double n = static_cast<double>(f.n());
  if (c.center.x() + t < 0 || c.center.y() + t < 0 || c.center.x() - t > n || c.center.y() - t > n) return 0.0;
  const CellPartition partition = partition_circle(c, window);
  CompensatedSum sum;
  for (const CellInterval& iv : partition) {
    const int v = f.cell(iv.cell.x(), iv.cell.y());
    if (v != 0) sum += v * iv.width();
  }
  return t * sum.value();
}

namespace {

// Signed area of the disk |p| <= R intersected with the triangle (0, a, b).
double triangle_disk_area(const Vec2& a, const Vec2& b, double R) {
  const Vec2 d = b - a;
  const double A = d.squaredNorm();
  if (A == 0.0) return 0.0;
  const double B = 2.0 * a.dot(d);
  const double C = a.squaredNorm() - R * R;
  const double disc = B * B - 4.0 * A * C;

  double cuts[4] = {0.0, 0.0, 0.0, 1.0};
  int count = 1;
  if (disc > 0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + std::copysign(sq, B));
    double s1 = q / A;
    double s2 = (q != 0.0) ? C / q : -B / (2.0 * A);
    if (s1 > s2) std::swap(s1, s2);
    if (s1 > 0 && s1 < 1) cuts[count++] = s1;
    if (s2 > 0 && s2 < 1) cuts[count++] = s2;
  }
  cuts[count++] = 1.0;

  double area = 0.0;
  const double R2 = R * R;
  for (int i = 0; i + 1 < count; ++i) {
    const Vec2 p = a + cuts[i] * d;
    const Vec2 q = a + cuts[i + 1] * d;
    const Vec2 mid = 0.5 * (p + q);
    if (mid.squaredNorm() <= R2) {
      area += 0.5 * cross(p, q);
    } else {
      area += 0.5 * R2 * std::atan2(cross(p, q), p.dot(q));
    }
  }
  return area;
}

}  // namespace

double disk_cell_area(const Circle& c, Index j, Index k) {
  const double R = c.radius;
  const double x0 = static_cast<double>(j) - c.center.x();
  const double y0 = static_cast<double>(k) - c.center.y();
  const double x1 = x0 + 1.0;
  const double y1 = y0 + 1.0;

  const double nx = std::clamp(0.0, x0, x1);
  const double ny = std::clamp(0.0, y0, y1);
  if (nx * nx + ny * ny >= R * R) return 0.0;
  const double fx = std::max(std::abs(x0), std::abs(x1));
  const double fy = std::max(std::abs(y0), std::abs(y1));
  if (fx * fx + fy * fy <= R * R) return 1.0;

  const Vec2 corners[4] = {Vec2(x0, y0), Vec2(x1, y0), Vec2(x1, y1), Vec2(x0, y1)};
  double area = 0.0;
  for (int e = 0; e < 4; ++e) area += triangle_disk_area(corners[e], corners[(e + 1) % 4], R);
  return std::clamp(area, 0.0, 1.0);
}

double disk_discrepancy(const Coloring& f, const Circle& c) {
  const Index n = f.n();
  const double t = c.radius;
  const Index j0 = std::max<Index>(0, floor_index(c.center.x() - t));
  const Index j1 = std::min<Index>(n - 1, floor_index(c.center.x() + t));
  const Index k0 = std::max<Index>(0, floor_index(c.center.y() - t));
  const Index k1 = std::min<Index>(n - 1, floor_index(c.center.y() + t));
  CompensatedSum sum;
  for (Index k = k0; k <= k1; ++k) {
    for (Index j = j0; j <= j1; ++j) {
      const double a = disk_cell_area(c, j, k);
      if (a > 0) sum += f.cell(j, k) * a;
    }
  }
  return sum.value();
}

double polyline_discrepancy(const Coloring& f, const std::vector<Vec2>& closed_polyline) {
  CompensatedSum sum;
  const std::size_t m = closed_polyline.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = closed_polyline[i];
    const Vec2& b = closed_polyline[(i + 1) % m];
    const double len = (b - a).norm();
    for_each_cell_piece(a, b, [&](Index j, Index k, double s0, double s1) {
      const int v = f.cell(j, k);
      if (v != 0) sum += v * len * (s1 - s0);
    });
  }
  return sum.value();
}

double polyline_discrepancy(const Coloring& f, const PolyShape& shape, const Placement& placement) {
  return polyline_discrepancy(f, place(shape, placement));
}

double shoelace_area(const std::vector<Vec2>& polygon) {
  CompensatedSum sum;
  const std::size_t m = polygon.size();
  for (std::size_t i = 0; i < m; ++i) sum += cross(polygon[i], polygon[(i + 1) % m]);
  return 0.5 * sum.value();
}

double clipped_area(const std::vector<Vec2>& polygon, const Vec2& lo, const Vec2& hi) {
  // Sutherland-Hodgman against the four half-planes of the box. The clip
  // region is convex, so the output's signed area is exact for any simple
  // subject polygon even when degenerate connecting edges appear.
  std::vector<Vec2> current = polygon;
  std::vector<Vec2> next;
  for (int side = 0; side < 4 && !current.empty(); ++side) {
    const int axis = side % 2;
    const bool keep_above = side < 2;
    const double bound = keep_above ? lo[axis] : hi[axis];
    auto inside = [&](const Vec2& p) { return keep_above ? p[axis] >= bound : p[axis] <= bound; };
    next.clear();
    const std::size_t m = current.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& p = current[i];
      const Vec2& q = current[(i + 1) % m];
      const bool pin = inside(p);
      const bool qin = inside(q);
      if (pin) next.push_back(p);
      if (pin != qin) {
        const double s = (bound - p[axis]) / (q[axis] - p[axis]);
        Vec2 x = p + s * (q - p);
        x[axis] = bound;
        next.push_back(x);
      }
    }
    std::swap(current, next);
  }
  if (current.size() < 3) return 0.0;
  return std::abs(shoelace_area(current));
}

double polygon_region_discrepancy(const Coloring& f, const std::vector<Vec2>& polygon) {
  const Index n = f.n();
  double minx = polygon[0].x(), maxx = minx, miny = polygon[0].y(), maxy = miny;
  for (const Vec2& v : polygon) {
    minx = std::min(minx, v.x());
    maxx = std::max(maxx, v.x());
    miny = std::min(miny, v.y());
    maxy = std::max(maxy, v.y());
  }
  const Index j0 = std::max<Index>(0, floor_index(minx));
  const Index j1 = std::min<Index>(n - 1, floor_index(maxx));
  const Index k0 = std::max<Index>(0, floor_index(miny));
  const Index k1 = std::min<Index>(n - 1, floor_index(maxy));
  CompensatedSum sum;
  for (Index k = k0; k <= k1; ++k) {
    for (Index j = j0; j <= j1; ++j) {
      const Vec2 lo(static_cast<double>(j), static_cast<double>(k));
      const double a = clipped_area(polygon, lo, lo + Vec2(1.0, 1.0));
      if (a > 0) sum += f.cell(j, k) * a;
    }
  }
  return sum.value();
}

double polygon_region_discrepancy(const Coloring& f, const PolyShape& shape, const Placement& placement) {
  return polygon_region_discrepancy(f, place(shape, placement));
}

double region_discrepancy_by_boundary(const Coloring& f, const std::vector<Vec2>& polygon) {
  // Green: the integral of f over K equals the boundary integral of
  // Phi(x, y) dy, where Phi(., y) is the antiderivative of f along row y.
  // Phi is linear in x inside each cell, so the midpoint value is exact.
  const Index n = f.n();
  const std::size_t m = polygon.size();
  CompensatedSum sum;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % m];
    const double dy = b.y() - a.y();
    if (dy == 0.0) continue;
    const double dx = b.x() - a.x();
    for_each_cell_piece(a, b, [&](Index j, Index k, double s0, double s1) {
      if (k < 0 || k >= n || j < 0) return;
      double phi;
      if (j >= n) {
        phi = f.row_prefix(n, k);
      } else {
        const double xmid = a.x() + 0.5 * (s0 + s1) * dx;
        phi = f.row_prefix(j, k) + f.cell(j, k) * (xmid - static_cast<double>(j));
      }
      if (phi != 0.0) sum += phi * (s1 - s0) * dy;
    });
  }
  const double orient = shoelace_area(polygon) >= 0 ? 1.0 : -1.0;
  return orient * sum.value();
}

}  // namespace checkerdisc
