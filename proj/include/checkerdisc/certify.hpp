#pragma once

#include "checkerdisc/coloring.hpp"
#include "checkerdisc/polygon.hpp"
#include "checkerdisc/spectral.hpp"
#include "checkerdisc/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace checkerdisc {

/// Outcome of one numerical check. `pass` is decided by comparing
/// worst_value against threshold with the operator stored in
/// params["comparison"] (plus any extra conditions listed in
/// params["requires"], each recorded in grid).
struct CertReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json grid = nlohmann::json::object();
  double worst_value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// min over r in [1/(2 pi), r_max] of r (sigma1-hat(r)^2 + sigma1-hat(2r)^2).
/// The scan uses `step`; every interior local minimum is then polished by
/// golden-section search. Also verifies J0(2 pi r) and J0(4 pi r) have no
/// common zero on [1/(2 pi), 7/(2 pi)].
CertReport check_lemma_double(double r_max, double step = 1e-3);

/// sup over [r_lo, r_hi] of r |e(r)| on a uniform grid; passes iff <= 0.2.
CertReport check_bessel_error(double r_lo, double r_hi, double step = 2e-3);

/// sup of r |e(r)| over one period starting at r.
double bessel_remainder_local_sup(double r, double step = 1e-4);

/// Critical radii for the single-radius argument.
struct ExclusionSet {
  double w = 0.0;
  double c2 = 0.0;
  /// c_w = c2 / (8 w^2).
  double c_w = 0.0;
  /// cosine_root_k = k/2 + 3/8 up to the search bound.
  std::vector<double> betas;
  /// All zeros of sigma1-hat up to the search bound.
  std::vector<double> roots;
  /// Zeros of sigma1-hat in (0, c_w].
  std::vector<double> gammas;
  /// Sorted excluded annulus centers: gammas, then betas with beta + w > c_w.
  std::vector<double> centers;
  /// Largest admissible half-width for these centers.
  double w0 = 0.0;

  [[nodiscard]] bool excluded(double r) const;
};

/// Zeros of r -> J0(2 pi r) in (0, r_max]: sign changes on a 0.01 grid
/// refined by bisection to 1e-12.
std::vector<double> sigma1_roots(double r_max);

/// Builds the exclusion set with c2 from the committed Bessel fixture.
/// Throws std::invalid_argument naming w0 unless 0 < w < w0.
ExclusionSet build_exclusion(double w, double zero_search_bound);
ExclusionSet build_exclusion(double w, double zero_search_bound, double c2);

/// Scans (0, r_max]: c1 = min r sigma1-hat(r)^2 over r > c_w outside the
/// cosine-root annuli, c2 = min sigma1-hat(r)^2 over r <= c_w outside the
/// root annuli. Annulus edges are always sampled. Passes iff both are > 0.
CertReport check_lemma_lowerestimate(const ExclusionSet& e, double r_max, double step = 1e-3);

/// (D_t^2 + D_{2t}^2) / t from the spatial engine against the committed
/// floor.
CertReport check_corollary_tor2t(const Coloring& f, double t, const SpatialMesh& mesh = {});

/// A field on B(0, radius) in R^dimension: value(x) returns
/// (|g(x)|^2, |grad g(x)|^2).
struct SampledField {
  int dimension = 2;
  double radius = 1.0;
  std::function<std::array<double, 2>(const Eigen::VectorXd&)> value;
  /// Quadrature controls: radial panel width, Gauss order, and sphere-rule
  /// size as a function of radius.
  double max_panel = 0.02;
  int order = 8;
  std::function<int(double)> angular = [](double) { return 64; };
};

struct PoincareTerms {
  double total = 0.0;
  double outside = 0.0;
  double gradient = 0.0;
  double ratio = 0.0;
};

/// Integrals entering the Poincare-type inequality. Throws unless every
/// center lies in (0, radius) and w < beta / 3, with beta the least gap among
/// 0, the sorted centers and the radius.
PoincareTerms poincare_terms(const SampledField& g, const std::vector<double>& centers, double w);

/// Ratio total / (outside + w^2 gradient) against the committed constant.
CertReport check_poincare(const SampledField& g, const std::vector<double>& centers, double w);

/// Field f-hat restricted to B(0, 1).
SampledField fhat_field(const Coloring& f);

/// Annulus centers from `e` scaled by 1/t, keeping those that leave room for
/// the separation condition inside B(0, 1).
std::vector<double> scaled_centers(const ExclusionSet& e, double t);

/// D_t^2 / t against the committed floor, with the Fourier-side chain
/// recorded: (t/n^2) times the mass of f-hat on B(0,1) minus the scaled
/// holes, the Poincare ratio, the unit-square and gradient bounds.
CertReport check_estimate_with_holes(const Coloring& f, double t, const ExclusionSet& e);

/// Annulus integrals I(R) of |chi_K-hat|^2 and |sigma_S-hat|^2 over
/// R <= |xi| <= A R.
struct AnnulusIntegrals {
  double region = 0.0;
  double boundary = 0.0;
};

AnnulusIntegrals annulus_integrals(const PolygonSpectrum& spectrum, double r, double a);

/// Fits log-log slopes of I_K and I_S over r_list; passes iff the region
/// slope is -1 +- 0.15 and the boundary slope is +1 +- 0.15.
CertReport check_lemma_fourierKS(const PolyShape& shape, const std::vector<double>& r_list, double a);

}  // namespace checkerdisc
