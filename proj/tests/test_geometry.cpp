#include "checkerdisc/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace checkerdisc;

namespace {

double nearest_integer_gap(double v) { return std::abs(v - std::round(v)); }

std::vector<Vec2> rotated_square(const Vec2& origin, double side, double tau) {
  const Vec2 u(std::cos(tau), std::sin(tau));
  const Vec2 v(-u.y(), u.x());
  return {origin, origin + side * u, origin + side * (u + v), origin + side * v};
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("partition of a circle inside one cell") {
    const CellPartition p = partition_circle(Circle{Vec2(0.5, 0.5), 0.25});
    REQUIRE(p.size() == 1);
    CHECK(p[0].cell == Vec2i(0, 0));
    CHECK(p[0].width() == doctest::Approx(kTwoPi).epsilon(1e-15));
  }

  TEST_CASE("partition around a lattice corner") {
    const CellPartition p = partition_circle(Circle{Vec2(1.0, 1.0), 0.5});
    REQUIRE(p.size() == 4);
    std::vector<Vec2i> cells;
    for (const CellInterval& iv : p) {
      CHECK(iv.width() == doctest::Approx(kPi / 2).epsilon(1e-14));
      cells.push_back(iv.cell);
    }
    for (const Vec2i& c : {Vec2i(0, 0), Vec2i(1, 0), Vec2i(0, 1), Vec2i(1, 1)})
      CHECK(std::find(cells.begin(), cells.end(), c) != cells.end());
  }

  TEST_CASE("partition breakpoints lie on grid lines") {
    const Circle c{Vec2(0.3, 0.7), 2.6};
    const CellPartition p = partition_circle(c);
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      total += p[i].width();
      if (i == 0) continue;  // the window start, not a crossing
      const Vec2 q = c.point_at(p[i].theta_lo);
      CHECK(std::min(nearest_integer_gap(q.x()), nearest_integer_gap(q.y())) < 1e-12);
    }
    CHECK(std::abs(total - kTwoPi) < 1e-12);
    // Every sign change of the fractional parts seen by dense sampling is a
    // breakpoint. The window start at angle 0 adds one more cut.
    const int samples = 200000;
    std::size_t changes = 0;
    auto cell = oracle::cell_of(c.point_at(0.0));
    for (int i = 1; i <= samples; ++i) {
      const auto next = oracle::cell_of(c.point_at(kTwoPi * i / samples));
      if (next != cell) ++changes;
      cell = next;
    }
    CHECK(p.size() == changes + 1);
  }

  TEST_CASE("windowed partitions cover the window") {
    const Circle c{Vec2(3.21, 4.87), 3.3};
    const AngleWindow w{0.4, 2.9};
    const CellPartition p = partition_circle(c, w);
    REQUIRE(!p.empty());
    CHECK(p.front().theta_lo == doctest::Approx(0.4));
    CHECK(p.back().theta_hi == doctest::Approx(2.9));
    double total = 0.0;
    for (const CellInterval& iv : p) total += iv.width();
    CHECK(std::abs(total - w.width()) < 1e-12);
  }

  TEST_CASE("circle discrepancy closed forms") {
    const Coloring one = generate_constant(10);
    for (double t : {0.3, 1.0, 2.5, 4.0}) {
      const double v = circle_discrepancy(one, Circle{Vec2(5.0, 5.0), t});
      CHECK(std::abs(v - kTwoPi * t) <= 1e-12 * kTwoPi * t);
    }
    const Coloring board = generate_chessboard(8);
    for (double t : {0.2, 0.5, 0.9, 1.0}) CHECK(std::abs(circle_discrepancy(board, Circle{Vec2(4.0, 3.0), t})) <= 1e-12 * t);
  }

  TEST_CASE("circle discrepancy against the sampling oracle") {
    const Coloring f = generate_random(64, 7);
    const Circle c{Vec2(31.3, 30.2), 5.7};
    CHECK(std::abs(circle_discrepancy(f, c) - oracle::circle(f, c.center, c.radius)) <= 1e-9 * kTwoPi * c.radius);
    const AngleWindow w{-0.7, 2.2};
    CHECK(std::abs(circle_discrepancy(f, c, w) - oracle::circle(f, c.center, c.radius, w.lo, w.hi)) <=
          1e-9 * kTwoPi * c.radius);
  }

  TEST_CASE("arc additivity, bounds and negation") {
    const Coloring f = generate_random(20, 3);
    const Circle c{Vec2(9.37, 11.02), 6.4};
    const double whole = circle_discrepancy(f, c);
    double parts = 0.0;
    for (int i = 0; i < 7; ++i) parts += circle_discrepancy(f, c, AngleWindow{kTwoPi * i / 7, kTwoPi * (i + 1) / 7});
    CHECK(parts == doctest::Approx(whole).epsilon(1e-12));
    CHECK(std::abs(whole) <= kTwoPi * c.radius);
    CHECK(circle_discrepancy(f.negated(), c) == -whole);
    CHECK(disk_discrepancy(f.negated(), c) == -disk_discrepancy(f, c));
    CHECK(std::abs(disk_discrepancy(f, c)) <= kPi * c.radius * c.radius);
  }

  TEST_CASE("integer translations leave discrepancies unchanged") {
    const Coloring f = generate_random(24, 5);
    CellMatrix shifted = CellMatrix::Constant(24, 24, 1);
    for (Index j = 0; j + 3 < 24; ++j)
      for (Index k = 0; k + 2 < 24; ++k) shifted(j + 3, k + 2) = static_cast<std::int8_t>(f.cell(j, k));
    const Coloring g(shifted);
    const Circle c{Vec2(8.41, 9.77), 3.3};
    const Circle d{c.center + Vec2(3, 2), 3.3};
    CHECK(circle_discrepancy(g, d) == doctest::Approx(circle_discrepancy(f, c)).epsilon(1e-12));
    CHECK(disk_discrepancy(g, d) == doctest::Approx(disk_discrepancy(f, c)).epsilon(1e-12));
  }

  TEST_CASE("disk discrepancy closed forms and oracle") {
    const Coloring one = generate_constant(20);
    const double t = 4.3;
    CHECK(std::abs(disk_discrepancy(one, Circle{Vec2(10.1, 9.6), t}) - kPi * t * t) <= 1e-12 * kPi * t * t);
    const Coloring board = generate_chessboard(12);
    for (double r : {0.7, 1.0, 2.4, 3.9}) CHECK(std::abs(disk_discrepancy(board, Circle{Vec2(6.0, 6.0), r})) <= 1e-10 * r * r);

    const Coloring f = generate_random(64, 7);
    const Circle c{Vec2(31.3, 30.2), 5.7};
    const double coarse = oracle::disk(f, c.center, c.radius, 1e-4);
    const double fine = oracle::disk(f, c.center, c.radius, 2e-5);
    REQUIRE(std::abs(coarse - fine) < 1e-6);
    CHECK(std::abs(disk_discrepancy(f, c) - fine) < 1e-6);
  }

  TEST_CASE("disk cell areas sum to the disk area") {
    const Circle c{Vec2(2.31, 1.77), 1.9};
    double total = 0.0;
    for (Index j = -1; j <= 5; ++j)
      for (Index k = -1; k <= 5; ++k) total += disk_cell_area(c, j, k);
    CHECK(total == doctest::Approx(kPi * 1.9 * 1.9).epsilon(1e-13));
  }

  TEST_CASE("polyline discrepancy") {
    const Coloring one = generate_constant(8);
    const PolyShape square = PolyShape::unit_square();
    Placement p;
    p.x = Vec2(3.2, 3.3);
    p.r = 0.4;
    CHECK(std::abs(polyline_discrepancy(one, square, p) - 1.6) <= 1e-12 * 1.6);

    const Coloring board = generate_chessboard(8);
    p.x = Vec2(2.0, 3.0);
    p.r = 1.0;
    CHECK(std::abs(polyline_discrepancy(board, square, p)) < 1e-14);
    p.r = 3.0;
    CHECK(std::abs(polyline_discrepancy(board, square, p)) < 1e-13);

    const Coloring f = generate_random(32, 11);
    const std::vector<Vec2> pts = rotated_square(Vec2(10.3, 8.9), 7.5, kPi / 6);
    CHECK(std::abs(polyline_discrepancy(f, pts) - oracle::polyline(f, pts)) <= 1e-9 * 30.0);
  }

  TEST_CASE("polygon region discrepancy") {
    const Coloring one = generate_constant(16);
    const std::vector<Vec2> poly = {Vec2(2.2, 3.1), Vec2(9.7, 2.4), Vec2(12.5, 8.8), Vec2(6.1, 13.3), Vec2(3.4, 9.0)};
    const double area = shoelace_area(poly);
    CHECK(std::abs(polygon_region_discrepancy(one, poly) - area) <= 1e-12 * area);

    const Coloring board = generate_chessboard(8);
    Placement p;
    p.x = Vec2(3.0, 5.0);
    CHECK(std::abs(polygon_region_discrepancy(board, PolyShape::unit_square(), p)) == 1.0);

    const Coloring f = generate_random(64, 7);
    Placement q;
    q.x = Vec2(20.4, 25.3);
    q.r = 14.0;
    q.tau = 0.61;
    const std::vector<Vec2> tri = place(PolyShape::unit_triangle(), q);
    const double coarse = oracle::polygon(f, tri, 2e-4);
    const double fine = oracle::polygon(f, tri, 5e-5);
    REQUIRE(std::abs(coarse - fine) < 1e-6);
    CHECK(std::abs(polygon_region_discrepancy(f, PolyShape::unit_triangle(), q) - fine) < 1e-6);
    CHECK(region_discrepancy_by_boundary(f, tri) == doctest::Approx(polygon_region_discrepancy(f, tri)).epsilon(1e-11));
  }

  TEST_CASE("clipped area of a polygon") {
    const std::vector<Vec2> tri = {Vec2(0, 0), Vec2(2, 0), Vec2(0, 2)};
    CHECK(clipped_area(tri, Vec2(0, 0), Vec2(1, 1)) == doctest::Approx(1.0));
    CHECK(clipped_area(tri, Vec2(1, 0), Vec2(2, 1)) == doctest::Approx(0.5));
    CHECK(clipped_area(tri, Vec2(1, 1), Vec2(2, 2)) == doctest::Approx(0.0));
  }
}
