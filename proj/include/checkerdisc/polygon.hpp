#pragma once

#include "checkerdisc/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace checkerdisc {

/// Closed simple polygon stored counter-clockwise. The closing edge from the
/// last vertex back to the first is implicit.
class PolyShape {
 public:
  /// Throws std::invalid_argument for fewer than three vertices, zero-length
  /// edges, zero area, or self-intersection. Clockwise input is reversed.
  explicit PolyShape(std::vector<Vec2> vertices);

  [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] const Vec2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  [[nodiscard]] double perimeter() const { return perimeter_; }
  [[nodiscard]] double area() const { return area_; }
  [[nodiscard]] const Vec2& centroid() const { return centroid_; }
  /// Largest distance from the centroid to a vertex.
  [[nodiscard]] double radius_about_centroid() const { return radius_c_; }
  /// Largest distance from the origin to a vertex.
  [[nodiscard]] double radius_about_origin() const { return radius_o_; }
  [[nodiscard]] double diameter() const { return diameter_; }

  /// True when v -> 2c - v maps the vertex set onto itself.
  [[nodiscard]] bool centrally_symmetric(double tol = 1e-12) const;

  [[nodiscard]] PolyShape translated(const Vec2& by) const;

  static PolyShape unit_square();
  static PolyShape unit_triangle();

 private:
  std::vector<Vec2> vertices_;
  double perimeter_ = 0.0;
  double area_ = 0.0;
  Vec2 centroid_ = Vec2::Zero();
  double radius_c_ = 0.0;
  double radius_o_ = 0.0;
  double diameter_ = 0.0;
};

/// Translation x, dilation r > 0, rotation tau (radians): v -> x + r R(tau) v.
struct Placement {
  Vec2 x = Vec2::Zero();
  double r = 1.0;
  double tau = 0.0;

  [[nodiscard]] Vec2 apply(const Vec2& v) const;
};

std::vector<Vec2> place(const PolyShape& shape, const Placement& placement);

/// Polygon file: a JSON array of [x, y] pairs.
PolyShape parse_polygon_json(std::string_view text);
PolyShape load_polygon_file(const std::string& path);
std::string polygon_to_json(const PolyShape& shape);

}  // namespace checkerdisc
