#pragma once

#include "checkerdisc/coloring.hpp"
#include "checkerdisc/polygon.hpp"
#include "checkerdisc/types.hpp"

#include <optional>
#include <string_view>

namespace checkerdisc {

enum class ShapeMode { region, boundary };

ShapeMode parse_shape_mode(std::string_view name);

/// Discrepancy of the placed region x + r R(tau) K or of its boundary.
double shape_discrepancy(const Coloring& f, const PolyShape& shape, ShapeMode mode, const Placement& placement);

/// Radial fractions of n for the dilation range [radial_lo n, radial_hi n].
struct RadialRange {
  double radial_lo = 0.2;
  double radial_hi = 0.25;
};

/// Translation x runs over a midpoint grid of step about x_step covering every
/// x for which the placed shape meets [0, n]^2. Dilations use Gauss-Legendre
/// nodes on [radial_lo n, radial_hi n]. Rotations use `angles` equally spaced
/// samples of [0, pi); the x-integrated square is pi-periodic in tau for any
/// shape, because |chi-hat| and |sigma-hat| are even. With fixed_tau set the
/// rotation average is replaced by that single angle.
struct AverageMesh {
  double x_step = 0.25;
  int radial_nodes = 3;
  int angles = 24;
  std::optional<double> fixed_tau;
};

/// (1/n^3) * mean over tau of the integral over r and x of D^2. The error is
/// the change against a mesh with doubled x step and halved angle count.
Estimate averaged_l2(const Coloring& f, const PolyShape& shape, ShapeMode mode, const RadialRange& range,
                     const AverageMesh& mesh = {});

Estimate averaged_l2_region(const Coloring& f, const PolyShape& shape, const RadialRange& range,
                            const AverageMesh& mesh = {});
Estimate averaged_l2_boundary(const Coloring& f, const PolyShape& shape, const RadialRange& range,
                              const AverageMesh& mesh = {});

/// The same average from Plancherel:
/// (1/n^3) * integral |f-hat(xi)|^2 W(|xi|) d xi,
/// W(rho) = integral over [lo n, hi n] of r^p g(r rho) dr, with p = 4 for
/// regions and p = 2 for boundaries, and g the angular mean of the shape's
/// squared transform. g and the running integral of s^p g(s) are tabulated
/// and interpolated with cubic Hermite pieces.
struct FourierAverageSpec {
  double truncation = 8.0;
  double table_step = 0.02;
  int angular_floor = 64;
};

Estimate averaged_l2_fourier(const Coloring& f, const PolyShape& shape, ShapeMode mode, const RadialRange& range,
                             const FourierAverageSpec& spec = {});

struct PlacementSearch {
  RadialRange range;
  double x_step = 0.5;
  int radii = 3;
  int angles = 24;
  /// Restricts rotations to one angle.
  std::optional<double> fixed_tau;
  /// Coarse-grid candidates kept for local refinement. The best grid point
  /// of each rotation angle is refined as well.
  int keep = 8;
  double min_step = 1e-3;
};

struct PlacementResult {
  Placement placement;
  /// Signed discrepancy at the returned placement.
  double value = 0.0;
  /// max |D| and root mean square of D on the coarse grid.
  double grid_max = 0.0;
  double grid_rms = 0.0;
  std::size_t evaluations = 0;
};

/// Coarse grid over (x, tau, r), then coordinate descent with shrinking steps
/// from the best few grid points. Maximizes |D|.
PlacementResult best_placement(const Coloring& f, const PolyShape& shape, ShapeMode mode,
                               const PlacementSearch& search = {});

}  // namespace checkerdisc
