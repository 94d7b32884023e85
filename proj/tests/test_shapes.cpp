#include "checkerdisc/geometry.hpp"
#include "checkerdisc/shapes.hpp"

#include <doctest.h>

#include <cmath>

using namespace checkerdisc;

TEST_SUITE("shapes") {
  TEST_CASE("constant coloring gives area and perimeter") {
    const Coloring one = generate_constant(20);
    Placement p;
    p.x = Vec2(8.3, 9.1);
    p.r = 4.5;
    p.tau = 0.7;
    for (const PolyShape& s : {PolyShape::unit_square(), PolyShape::unit_triangle()}) {
      CHECK(shape_discrepancy(one, s, ShapeMode::region, p) == doctest::Approx(p.r * p.r * s.area()).epsilon(1e-12));
      CHECK(shape_discrepancy(one, s, ShapeMode::boundary, p) == doctest::Approx(p.r * s.perimeter()).epsilon(1e-12));
    }
    CHECK(parse_shape_mode("boundary") == ShapeMode::boundary);
    CHECK_THROWS_AS(parse_shape_mode("interior"), std::invalid_argument);
  }

  TEST_CASE("averages of the constant coloring are large") {
    const Coloring one = generate_constant(12);
    const Estimate region = averaged_l2_fourier(one, PolyShape::unit_square(), ShapeMode::region, {});
    const Estimate board = averaged_l2_fourier(generate_chessboard(12), PolyShape::unit_square(), ShapeMode::region, {});
    CHECK(region.value > 10.0 * board.value);
  }

  TEST_CASE("chessboard with an axis-aligned square is degenerate") {
    const Coloring board = generate_chessboard(24);
    PlacementSearch s;
    s.fixed_tau = 0.0;
    const PlacementResult r = best_placement(board, PolyShape::unit_square(), ShapeMode::region, s);
    CHECK(std::abs(std::abs(r.value) - 1.0) < 1e-12);
    CHECK(std::abs(polygon_region_discrepancy(board, PolyShape::unit_square(), r.placement)) == 1.0);
    CHECK(r.placement.tau == 0.0);
  }

  TEST_CASE("spatial and Fourier averages agree") {
    const Coloring f = generate_random(24, 7);
    for (ShapeMode m : {ShapeMode::region, ShapeMode::boundary}) {
      const Estimate a = averaged_l2(f, PolyShape::unit_triangle(), m, {});
      const Estimate b = averaged_l2_fourier(f, PolyShape::unit_triangle(), m, {});
      CHECK(std::abs(a.value - b.value) <= 0.02 * b.value);
    }
  }

  TEST_CASE("region average per unit side stays away from zero") {
    FourierAverageSpec spec;
    spec.truncation = 4.0;
    spec.table_step = 0.04;
    for (Index n : {12, 24, 48}) {
      const Estimate e = averaged_l2_fourier(generate_random(n, 3), PolyShape::unit_triangle(), ShapeMode::region, {},
                                             spec);
      CHECK(e.value / static_cast<double>(n) >= 0.005);
    }
  }

  TEST_CASE("best placement dominates the grid") {
    const Coloring f = generate_random(24, 7);
    const PlacementResult r = best_placement(f, PolyShape::unit_triangle(), ShapeMode::region);
    CHECK(std::abs(r.value) >= r.grid_max);
    CHECK(r.grid_max >= r.grid_rms);
    CHECK(r.placement.r >= 0.2 * 24 - 1e-12);
    CHECK(r.placement.r <= 0.25 * 24 + 1e-12);
    CHECK(shape_discrepancy(f, PolyShape::unit_triangle(), ShapeMode::region, r.placement) == r.value);
  }

  TEST_CASE("rotations never lose and can beat every aligned placement") {
    PlacementSearch fixed;
    fixed.fixed_tau = 0.0;
    for (std::uint64_t seed : {1, 3, 7}) {
      const Coloring f = generate_random(24, seed);
      const double a = std::abs(best_placement(f, PolyShape::unit_square(), ShapeMode::region, fixed).value);
      const double b = std::abs(best_placement(f, PolyShape::unit_square(), ShapeMode::region).value);
      CHECK(b >= a);
      if (seed == 7) CHECK(b > a + 0.5);
    }
  }
}
