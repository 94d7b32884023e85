#pragma once

#include "checkerdisc/coloring.hpp"
#include "checkerdisc/polygon.hpp"
#include "checkerdisc/types.hpp"

#include <complex>
#include <functional>

namespace checkerdisc {

using Complex = std::complex<double>;

/// Upper bound on sup_{r >= 1} r |e(r)| for the J0 remainder; certified by
/// check_bessel_error.
inline constexpr double kBesselRemainderBound = 0.2;

/// Fourier-side numerical controls.
struct QuadratureSpec {
  /// Half-width of the frequency box kept in lattice sums.
  double truncation = 8.0;
  /// Lattice spacing is 1 / (oversample * support side).
  int oversample = 1;
  /// Composite Gauss panels per unit radius and order for polar rules;
  /// 0 picks a value from the coloring size.
  int panels_per_unit = 0;
  int gauss_order = 10;
  /// Angular nodes on the unit circle for polar rules; 0 picks automatically.
  int angular_nodes = 0;
  /// Relative target for the reported error estimate.
  double tolerance = 2e-3;
  int max_refinements = 3;
};

/// f-hat(xi) = integral of f(x) exp(-2 pi i x . xi) dx.
Complex fhat(const Coloring& f, const Vec2& xi);

/// |f-hat(xi)|^2.
double fhat_sq(const Coloring& f, const Vec2& xi);

struct FhatJet {
  Complex value;
  Complex d1;
  Complex d2;
};

/// f-hat and its gradient from the closed-form product representation.
FhatJet fhat_jet(const Coloring& f, const Vec2& xi);

/// Lattice sum over xi in h Z^2 with max(|xi_1|, |xi_2|) <= half_width of
/// |f-hat(xi)|^2 W(|xi|) h^2, along with the plain mass h^2 sum |f-hat|^2.
/// When h <= 1/n the full (untruncated) lattice mass equals n^2 exactly.
struct LatticeSum {
  double weighted = 0.0;
  double mass = 0.0;
  double spacing = 0.0;
  double half_width = 0.0;
  std::size_t points = 0;
};

LatticeSum lattice_spectral_sum(const Coloring& f, double spacing, double half_width,
                                const std::function<double(double)>& radial_weight);

/// Squared L2 circle discrepancy (1/n^2) * integral of D_t(f, x)^2 dx,
/// computed from circle_discrepancy on a midpoint grid of centers covering
/// [-t, n+t]^2. The grid is halved and Richardson-extrapolated (order 3/2)
/// until the error drops below `tolerance` (relative) or `max_refinements`
/// halvings are spent. The error is the Richardson correction, or the gap
/// between the last two extrapolations once there are two.
struct SpatialMesh {
  double mesh = 0.25;
  int max_refinements = 2;
  double tolerance = 2e-3;
};

Estimate l2_discrepancy_spatial(const Coloring& f, double t, const SpatialMesh& mesh = {});

/// The same functional from the Plancherel identity
/// (t^2/n^2) * integral |f-hat(xi)|^2 sigma1-hat(t |xi|)^2 d xi.
/// f * sigma_t has support of side n + 2t, so a frequency lattice of spacing
/// 1/(n + 2t) integrates |f-hat|^2 |sigma_t-hat|^2 without aliasing; the
/// only error is truncation, bounded with |sigma1-hat(s)|^2 <= C/s and the
/// exact lattice mass n^2.
Estimate l2_discrepancy_fourier(const Coloring& f, double t, const QuadratureSpec& q = {});

/// Integral of |grad f-hat|^2 over the unit disk by polar quadrature.
Estimate fhat_gradient_sq_integral(const Coloring& f, const QuadratureSpec& q = {});

/// Integral of |f-hat|^2 over a ball of the given radius.
Estimate fhat_sq_ball_integral(const Coloring& f, double radius, const QuadratureSpec& q = {});

/// Integral of |f-hat|^2 over [-1/2, 1/2]^2 by tensor Gauss rules.
Estimate fhat_sq_unit_square_integral(const Coloring& f);

/// Integral of |sum z_jk exp(2 pi i (j xi_1 + k xi_2))|^2 over [-1/2, 1/2]^2.
double trig_sum_sq_unit_square_integral(const Coloring& f);

/// Closed-form transforms of a polygon: chi_K-hat for its interior and
/// (d sigma_S)-hat for its boundary arc length.
class PolygonSpectrum {
 public:
  explicit PolygonSpectrum(const PolyShape& shape);

  [[nodiscard]] Complex region(const Vec2& xi) const;
  [[nodiscard]] Complex boundary(const Vec2& xi) const;

  [[nodiscard]] const PolyShape& shape() const { return shape_; }

 private:
  [[nodiscard]] Complex region_centered(const Vec2& xi) const;

  PolyShape shape_;
  std::vector<Vec2> centered_;
  Vec2 centroid_;
  double radius_;
};

using TransformFn = std::function<Complex(const Vec2&)>;

/// (chi_K-hat, sigma_S-hat) evaluators for the polygon.
std::pair<TransformFn, TransformFn> polygon_fts(const PolyShape& shape);

}  // namespace checkerdisc
