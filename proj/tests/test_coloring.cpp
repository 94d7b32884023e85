#include "checkerdisc/coloring.hpp"

#include <doctest.h>

using namespace checkerdisc;

TEST_SUITE("coloring") {
  TEST_CASE("constant and chessboard generators") {
    const Coloring c = generate_constant(4);
    CHECK(c.n() == 4);
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k) CHECK(c.cell(j, k) == 1);

    const Coloring b = generate_chessboard(2);
    CHECK(b.cell(0, 0) == 1);
    CHECK(b.cell(1, 0) == -1);
    CHECK(b.cell(0, 1) == -1);
    CHECK(b.cell(1, 1) == 1);
  }

  TEST_CASE("random colorings are reproducible") {
    CHECK(generate_random(16, 7).values() == generate_random(16, 7).values());
    CHECK(generate_random(16, 7).values() != generate_random(16, 8).values());
  }

  TEST_CASE("generators reject empty sizes") {
    CHECK_THROWS_AS(generate_constant(0), std::invalid_argument);
    CHECK_THROWS_AS(generate_stripes(4, Axis::x, 0), std::invalid_argument);
  }

  TEST_CASE("point evaluation uses half-open cells and zero extension") {
    const Coloring b = generate_chessboard(2);
    CHECK(b.eval(Vec2(0.5, 0.5)) == 1);
    CHECK(b.eval(Vec2(1.0, 0.0)) == -1);
    CHECK(b.eval(Vec2(-0.1, 0.5)) == 0);
    CHECK(b.eval(Vec2(2.0, 0.5)) == 0);
    CHECK(generate_random(5, 3).eval(Vec2(0.5, 5.0)) == 0);
  }

  TEST_CASE("chessboard parity holds at every sampled point") {
    const Coloring b = generate_chessboard(9);
    for (int i = 0; i < 200; ++i) {
      const Vec2 p(0.0451 * i, 8.99 - 0.0449 * i);
      const int parity = (static_cast<int>(std::floor(p.x())) + static_cast<int>(std::floor(p.y()))) % 2;
      CHECK(b.eval(p) == (parity == 0 ? 1 : -1));
    }
  }

  TEST_CASE("stripes follow the axis and period") {
    const Coloring s = generate_stripes(6, Axis::x, 2);
    CHECK(s.cell(0, 3) == s.cell(1, 5));
    CHECK(s.cell(0, 0) == -s.cell(2, 0));
    const Coloring t = generate_stripes(6, Axis::y, 3);
    CHECK(t.cell(4, 0) == t.cell(1, 2));
    CHECK(t.cell(0, 0) == -t.cell(0, 3));
  }

  TEST_CASE("text format round trip") {
    CHECK(save(generate_chessboard(2)) == "2\n+-\n-+\n");
    CHECK(load("2\n+-\n-+\n").values() == generate_chessboard(2).values());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Coloring c = generate_random(13, seed);
      CHECK(load(save(c)).values() == c.values());
    }
  }

  TEST_CASE("parse errors name line and column") {
    try {
      load("2\n+-\n-x\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(load("x\n"), ParseError);
    CHECK_THROWS_AS(load("2\n+-\n-\n"), ParseError);
    CHECK_THROWS_AS(load("2\n+-\n"), ParseError);
  }

  TEST_CASE("cell sum matches evaluation at centers and negation") {
    const Coloring c = generate_random(11, 4);
    long sum = 0;
    for (Index j = 0; j < 11; ++j)
      for (Index k = 0; k < 11; ++k) sum += c.eval(Vec2(j + 0.5, k + 0.5));
    CHECK(sum == c.total());
    CHECK(c.negated().total() == -sum);
  }
}
