#include "checkerdisc/bessel.hpp"
#include "checkerdisc/certify.hpp"
#include "checkerdisc/fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace checkerdisc;

TEST_SUITE("certify") {
  TEST_CASE("lemma-double minimum is positive and stable") {
    const CertReport coarse = check_lemma_double(100.0, 2e-3);
    const CertReport fine = check_lemma_double(100.0, 1e-3);
    CHECK(fine.pass);
    CHECK(fine.worst_value > 0.0);
    CHECK(std::abs(coarse.worst_value - fine.worst_value) < 5e-4);
    CHECK(std::round(fine.worst_value * 1000.0) / 1000.0 == doctest::Approx(fixtures::kLemmaDoubleMin));
    CHECK(fine.grid["common_zero_gap"].get<double>() > 0.01);
  }

  TEST_CASE("lemma-double rejects a range that misses the common-zero window") {
    CHECK_THROWS_AS(check_lemma_double(0.5), std::invalid_argument);
  }

  TEST_CASE("Bessel remainder stays below 0.2 and tends to 1/8") {
    const CertReport rep = check_bessel_error(1.0, 2000.0);
    CHECK(rep.pass);
    CHECK(rep.worst_value <= 0.2);
    CHECK(std::abs(bessel_remainder_local_sup(1000.0) - 0.125) < 1e-4);
    CHECK(bessel_remainder_local_sup(1000.0) <= fixtures::kBesselRemainderSup + 1e-6);
  }

  TEST_CASE("exclusion set structure") {
    const ExclusionSet e = build_exclusion(0.05, 60.0);
    REQUIRE(e.betas.size() >= 3);
    CHECK(e.betas[0] == doctest::Approx(0.375));
    CHECK(e.betas[1] == doctest::Approx(0.875));
    CHECK(e.betas[2] == doctest::Approx(1.375));
    CHECK(e.c_w == doctest::Approx(e.c2 / (8.0 * 0.05 * 0.05)));
    REQUIRE(!e.gammas.empty());
    CHECK(e.gammas[0] == doctest::Approx(0.38274).epsilon(1e-4));
    for (double g : e.gammas) {
      CHECK(g <= e.c_w);
      CHECK(std::abs(sigma1_hat(g)) <= 1e-10);
      CHECK(sigma1_hat(g - 1e-6) * sigma1_hat(g + 1e-6) < 0.0);
    }
    // Zeros sit just above the cosine roots and the gap shrinks.
    double gap = INFINITY;
    for (std::size_t k = 0; k + 1 < e.betas.size() && k < e.roots.size(); ++k) {
      CHECK(e.roots[k] > e.betas[k]);
      CHECK(e.roots[k] < e.betas[k + 1]);
      CHECK(e.roots[k] - e.betas[k] < gap);
      gap = e.roots[k] - e.betas[k];
    }
    CHECK(std::is_sorted(e.centers.begin(), e.centers.end()));
    CHECK(e.excluded(e.gammas[0]));
    CHECK_FALSE(e.excluded(0.63));
  }

  TEST_CASE("exclusion rejects a half-width at or beyond w0") {
    CHECK_THROWS_WITH_AS(build_exclusion(0.06, 60.0), doctest::Contains("w0"), std::invalid_argument);
    CHECK_THROWS_AS(build_exclusion(0.0, 60.0), std::invalid_argument);
  }

  TEST_CASE("lower estimate constants are positive") {
    const ExclusionSet e = build_exclusion(0.05, 60.0);
    const CertReport rep = check_lemma_lowerestimate(e, 50.0);
    CHECK(rep.pass);
    CHECK(rep.grid["far_constant"].get<double>() > 0.0);
    CHECK(rep.grid["near_constant"].get<double>() > 0.0);
  }

  TEST_CASE("corollary ratio") {
    const CertReport big = check_corollary_tor2t(generate_constant(16), 1.0);
    CHECK(big.pass);
    CHECK(big.worst_value > 50.0);
    const CertReport board = check_corollary_tor2t(generate_chessboard(32), 2.0);
    CHECK(board.pass);
    CHECK(board.worst_value >= fixtures::kCorollaryFloor);
    CHECK_THROWS_AS(check_corollary_tor2t(generate_constant(4), 0.5), std::invalid_argument);
  }

  TEST_CASE("Poincare ratio for a constant field") {
    SampledField g;
    g.value = [](const Eigen::VectorXd&) { return std::array<double, 2>{1.0, 0.0}; };
    const std::vector<double> centers = {0.25, 0.5, 0.75};
    const PoincareTerms terms = poincare_terms(g, centers, 0.05);
    CHECK(terms.total == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(terms.ratio == doctest::Approx(1.0 / 0.7).epsilon(1e-12));
    CHECK(check_poincare(g, centers, 0.05).pass);
  }

  TEST_CASE("Poincare ratio for a field vanishing on the annuli") {
    const std::vector<double> centers = {0.3, 0.6};
    const double w = 0.04;
    SampledField g;
    g.value = [&](const Eigen::VectorXd& x) {
      const double r = x.norm();
      for (double c : centers)
        if (std::abs(r - c) < w) return std::array<double, 2>{0.0, 0.0};
      return std::array<double, 2>{x(0) * x(0), 1.0};
    };
    CHECK(poincare_terms(g, centers, w).ratio <= 1.0 + 1e-12);
  }

  TEST_CASE("Poincare terms in three dimensions") {
    SampledField g;
    g.dimension = 3;
    g.angular = [](double) { return 26; };
    g.value = [](const Eigen::VectorXd& x) {
      const double s = x.squaredNorm();
      return std::array<double, 2>{std::exp(-2.0 * s), 4.0 * s * std::exp(-2.0 * s)};
    };
    const PoincareTerms terms = poincare_terms(g, {0.3, 0.6}, 0.05);
    const double exact = 4.0 * kPi * (std::sqrt(kPi / 2.0) / 8.0 * std::erf(std::sqrt(2.0)) - std::exp(-2.0) / 4.0);
    CHECK(terms.total == doctest::Approx(exact).epsilon(1e-10));
    CHECK(terms.ratio >= 1.0);
    CHECK(terms.ratio <= fixtures::kPoincareConstant);
  }

  TEST_CASE("Poincare rejects overlapping annuli") {
    SampledField g;
    g.value = [](const Eigen::VectorXd&) { return std::array<double, 2>{1.0, 0.0}; };
    CHECK_THROWS_AS(poincare_terms(g, {0.25, 0.35}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(poincare_terms(g, {0.5, 0.4}, 0.01), std::invalid_argument);
  }

  TEST_CASE("estimate with holes") {
    const ExclusionSet e = build_exclusion(0.05, 60.0);
    const CertReport one = check_estimate_with_holes(generate_constant(8), 8.0, e);
    CHECK(one.pass);
    const CertReport board = check_estimate_with_holes(generate_chessboard(8), 8.0, e);
    CHECK(board.pass);
    CHECK(board.grid["poincare_ratio"].get<double>() <= fixtures::kPoincareConstant);
    CHECK(board.grid["unit_square_mass"].get<double>() >= board.grid["unit_square_floor"].get<double>());
    CHECK(board.grid["gradient_mass"].get<double>() <= board.grid["gradient_ceiling"].get<double>());
  }

  TEST_CASE("annulus transform slopes") {
    const std::vector<double> radii = {4, 8, 16, 32, 64};
    for (const PolyShape& s : {PolyShape::unit_square(), PolyShape::unit_triangle()}) {
      const CertReport rep = check_lemma_fourierKS(s, radii, 2.0);
      CHECK(rep.pass);
      CHECK(rep.grid["region_slope"].get<double>() == doctest::Approx(-1.0).epsilon(0.15));
      CHECK(rep.grid["boundary_slope"].get<double>() == doctest::Approx(1.0).epsilon(0.15));
    }
    CHECK_THROWS_AS(check_lemma_fourierKS(PolyShape::unit_square(), {4.0}, 2.0), std::invalid_argument);
  }

  TEST_CASE("reports serialize to seven keys") {
    const nlohmann::json j = check_lemma_double(10.0).to_json();
    CHECK(j.size() == 7);
    for (const char* key : {"check", "params", "grid", "worst_value", "threshold", "pass", "seed"})
      CHECK(j.contains(key));
  }
}
