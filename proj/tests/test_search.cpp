#include "checkerdisc/fixtures.hpp"
#include "checkerdisc/geometry.hpp"
#include "checkerdisc/search.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace checkerdisc;

namespace {

CircularRun brute_run(const std::vector<double>& v) {
  CircularRun best;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double s = 0.0;
    for (std::size_t len = 1; len <= v.size(); ++len) {
      s += v[(i + len - 1) % v.size()];
      if (std::abs(s) > std::abs(best.sum)) best = {i, len, s};
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("circular runs against brute force") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> v(1 + trial % 17);
      for (double& x : v) x = normal(rng);
      const CircularRun fast = best_circular_run(v);
      const CircularRun slow = brute_run(v);
      CHECK(std::abs(fast.sum) == doctest::Approx(std::abs(slow.sum)).epsilon(1e-12));
      double s = 0.0;
      for (std::size_t k = 0; k < fast.length; ++k) s += v[(fast.first + k) % v.size()];
      CHECK(s == doctest::Approx(fast.sum).epsilon(1e-12));
    }
  }

  TEST_CASE("constant coloring scores") {
    const Coloring one = generate_constant(16);
    const double t = 2.0;
    const SearchResult r = max_circle(one, t, true);
    CHECK(r.circle.radius == 2.0 * t);
    CHECK(r.score == doctest::Approx(kTwoPi * std::sqrt(2.0 * t)).epsilon(1e-12));
    const SearchResult a = max_arc(one, t);
    CHECK(a.score == doctest::Approx(kTwoPi * std::sqrt(t)).epsilon(1e-12));
  }

  TEST_CASE("containment needs room for both radii") {
    CHECK_THROWS_AS(max_circle(generate_constant(7), 2.0, true), std::invalid_argument);
    CHECK_NOTHROW(max_circle(generate_constant(8), 2.0, true));
  }

  TEST_CASE("witnesses re-evaluate to the reported value") {
    const Coloring f = generate_random(24, 5);
    for (const SearchResult& r : {max_circle(f, 2.0, false), max_circle(f, 2.0, true), max_arc(f, 2.0)}) {
      CHECK(std::abs(circle_discrepancy(f, r.circle, r.window) - r.value) <= 1e-9);
      CHECK(r.score == doctest::Approx(std::abs(r.value) / std::sqrt(r.circle.radius)));
    }
    const SearchResult c = max_circle(f, 2.0, true);
    CHECK(c.circle.center.minCoeff() >= 4.0 - 1e-12);
    CHECK(c.circle.center.maxCoeff() <= 20.0 + 1e-12);
  }

  TEST_CASE("arcs do at least as well as full circles of the same radius") {
    const Coloring f = generate_random(20, 9);
    const SearchResult c = max_circle(f, 2.0, false);
    const SearchResult a = max_arc(f, 2.0);
    REQUIRE(!c.grid.empty());
    CHECK(c.grid[0].radius == 2.0);
    CHECK(a.score >= c.grid[0].max_abs / std::sqrt(2.0) - 1e-12);
  }

  TEST_CASE("finer grids never lose the coarse maximum") {
    const Coloring f = generate_random(16, 4);
    SearchBudget coarse;
    coarse.grid_step = 0.5;
    SearchBudget fine;
    fine.grid_step = 0.25;
    const SearchResult a = max_circle(f, 1.0, false, coarse);
    const SearchResult b = max_circle(f, 1.0, false, fine);
    for (std::size_t i = 0; i < a.grid.size(); ++i) CHECK(b.grid[i].max_abs >= a.grid[i].max_abs);
    CHECK(b.score >= a.grid[0].max_abs - 1e-12);
  }

  TEST_CASE("adversarial search") {
    const Coloring start = generate_random(32, 3);
    const AdversarialResult none = adversarial_search(32, {1.0, 2.0}, 0, 3);
    CHECK(none.best == start);
    CHECK(none.trace.empty());

    AnnealSpec greedy;
    greedy.t0 = 0.0;
    const AdversarialResult r = adversarial_search(32, {1.0, 2.0}, 3000, 3, greedy);
    REQUIRE(!r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
    CHECK(r.objective < r.initial_objective);
    CHECK(probe_objective(r.best, {1.0, 2.0}, greedy.probe_step) == doctest::Approx(r.objective).epsilon(1e-9));

    const Coloring again = adversarial_coloring(32, {1.0, 2.0}, 3000, 3, greedy);
    CHECK(again == r.best);
  }

  TEST_CASE("adversarial colorings still have large circles") {
    const Coloring f = adversarial_coloring(64, {1.0, 2.0, 4.0}, 4000, 1);
    for (double t : {1.0, 2.0, 4.0}) CHECK(std::abs(max_circle(f, t, true).value) >= fixtures::kCorollaryFloor);
  }

  TEST_CASE("scaling slopes") {
    ScalingSpec spec;
    const ScalingRecord one = scaling_experiment(
        "constant", [](Index n, std::uint64_t) { return generate_constant(n); }, {1, 2, 4, 8}, spec, 1);
    CHECK(one.fitted);
    CHECK(one.slope == doctest::Approx(1.0).epsilon(1e-9));

    const ScalingRecord rnd = scaling_experiment("random", generate_random, {1, 2, 4, 8}, spec, 1);
    CHECK(rnd.slope >= 0.45);
    CHECK(rnd.band_lo <= rnd.slope);
    CHECK(rnd.band_hi >= rnd.slope);
    CHECK_FALSE(rnd.partial);
    for (const ScalingPoint& p : rnd.points) CHECK(p.n == static_cast<Index>(std::ceil(p.t)));
  }

  TEST_CASE("scaling rejects bad inputs and honors the budget") {
    ScalingSpec spec;
    CHECK_THROWS_AS(scaling_experiment("random", generate_random, {1, 2, 4}, spec, 1), std::invalid_argument);
    CHECK_THROWS_AS(scaling_experiment("random", generate_random, {1, 2, 2, 4}, spec, 1), std::invalid_argument);
    CHECK_THROWS_AS(scaling_experiment("random", generate_random, {0, 1, 2, 4}, spec, 1), std::invalid_argument);
    spec.max_evaluations = 1000;
    const ScalingRecord r = scaling_experiment("random", generate_random, {1, 2, 4, 8}, spec, 1);
    CHECK(r.partial);
    CHECK(r.points.size() < 4);
  }

  TEST_CASE("csv rows") {
    CHECK(search_csv_header() == "t,mode,score,center_x,center_y,theta_lo,theta_hi,seed");
    SearchResult r;
    r.mode = "arc";
    r.circle = Circle{Vec2(1.5, 2.25), 2.0};
    r.window = AngleWindow{0.5, 1.0};
    r.score = 3.0;
    r.seed = 9;
    CHECK(search_csv_row(2.0, r) == "2,arc,3,1.5,2.25,0.5,1,9");
  }
}
