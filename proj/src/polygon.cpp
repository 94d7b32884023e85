#include "checkerdisc/polygon.hpp"

#include <json.hpp>

#include <Eigen/Geometry>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace checkerdisc {

namespace {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross(b - a, c - a);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
         p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

PolyShape::PolyShape(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least three vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (!vertices_[i].allFinite()) throw std::invalid_argument("polygon vertex is not finite");
    if ((vertex(i + 1) - vertex(i)).norm() == 0.0) throw std::invalid_argument("polygon has a zero-length edge");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(vertex(i), vertex(i + 1), vertex(j), vertex(j + 1))) {
        throw std::invalid_argument("polygon is self-intersecting");
      }
    }
  }
  // Adjacent edges may only share their common vertex.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertex(i);
    const Vec2& b = vertex(i + 1);
    const Vec2& c = vertex(i + 2);
    if (orientation(a, b, c) == 0 && (b - a).dot(c - b) < 0) {
      throw std::invalid_argument("polygon is self-intersecting");
    }
  }

  double twice_area = 0.0;
  Vec2 moment = Vec2::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = cross(vertex(i), vertex(i + 1));
    twice_area += w;
    moment += w * (vertex(i) + vertex(i + 1));
  }
  if (twice_area == 0.0) throw std::invalid_argument("polygon has zero area");
  if (twice_area < 0) {
    std::reverse(vertices_.begin(), vertices_.end());
    twice_area = -twice_area;
    moment = -moment;
  }
  area_ = 0.5 * twice_area;
  centroid_ = moment / (3.0 * twice_area);
  for (std::size_t i = 0; i < n; ++i) {
    perimeter_ += (vertex(i + 1) - vertex(i)).norm();
    radius_c_ = std::max(radius_c_, (vertex(i) - centroid_).norm());
    radius_o_ = std::max(radius_o_, vertex(i).norm());
    for (std::size_t j = i + 1; j < n; ++j) diameter_ = std::max(diameter_, (vertex(i) - vertex(j)).norm());
  }
}

bool PolyShape::centrally_symmetric(double tol) const {
  for (const Vec2& v : vertices_) {
    const Vec2 mirror = 2.0 * centroid_ - v;
    bool found = false;
    for (const Vec2& u : vertices_) {
      if ((u - mirror).norm() <= tol * std::max(1.0, diameter_)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

PolyShape PolyShape::translated(const Vec2& by) const {
  std::vector<Vec2> moved = vertices_;
  for (Vec2& v : moved) v += by;
  return PolyShape(std::move(moved));
}

PolyShape PolyShape::unit_square() { return PolyShape({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}); }

PolyShape PolyShape::unit_triangle() { return PolyShape({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}); }

Vec2 Placement::apply(const Vec2& v) const { return x + r * (Eigen::Rotation2Dd(tau) * v); }

std::vector<Vec2> place(const PolyShape& shape, const Placement& placement) {
  const Eigen::Matrix2d m = placement.r * Eigen::Rotation2Dd(placement.tau).toRotationMatrix();
  std::vector<Vec2> out;
  out.reserve(shape.size());
  for (const Vec2& v : shape.vertices()) out.emplace_back(placement.x + m * v);
  return out;
}

PolyShape parse_polygon_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("polygon file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("polygon file must be a JSON array of [x, y] pairs");
  std::vector<Vec2> vertices;
  for (const auto& item : doc) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw std::invalid_argument("polygon vertex must be an [x, y] pair of numbers");
    }
    vertices.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return PolyShape(std::move(vertices));
}

PolyShape load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read polygon file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_polygon_json(ss.str());
}

std::string polygon_to_json(const PolyShape& shape) {
  nlohmann::json doc = nlohmann::json::array();
  for (const Vec2& v : shape.vertices()) doc.push_back({v.x(), v.y()});
  return doc.dump();
}

}  // namespace checkerdisc
