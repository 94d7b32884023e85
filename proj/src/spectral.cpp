#include "checkerdisc/spectral.hpp"

#include "checkerdisc/bessel.hpp"
#include "checkerdisc/geometry.hpp"
#include "checkerdisc/parallel.hpp"
#include "checkerdisc/quadrature.hpp"

#include <Eigen/Core>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace checkerdisc {

namespace {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

constexpr std::size_t kLatticeBlock = 128;

/// e^{-2 pi i x} with x reduced mod 1 first.
Complex unit_phase(double x) {
  const double frac = x - std::round(x);
  return std::polar(1.0, -kTwoPi * frac);
}

/// s(u) = integral_0^1 e^{-2 pi i x u} dx.
Complex cell_factor(double u) { return unit_phase(0.5 * u) * sinc(u); }

/// s'(u) = integral_0^1 (-2 pi i x) e^{-2 pi i x u} dx.
Complex cell_factor_derivative(double u) {
  if (std::abs(u) < 0.05) {
    // sum_m (-2 pi i u)^m (-2 pi i) / (m! (m + 2))
    const Complex z(0.0, -kTwoPi * u);
    Complex term(1.0, 0.0);
    Complex sum(0.5, 0.0);
    for (int m = 1; m < 30; ++m) {
      term *= z / static_cast<double>(m);
      sum += term / static_cast<double>(m + 2);
      if (std::abs(term) < 1e-18) break;
    }
    return Complex(0.0, -kTwoPi) * sum;
  }
  return (unit_phase(u) - cell_factor(u)) / u;
}

Eigen::MatrixXd coefficient_matrix(const Coloring& f) { return f.values().cast<double>(); }

/// Rows: e^{-2 pi i j x_r} for j = 0..n-1.
MatrixXc phase_matrix(const std::vector<double>& xs, Index n) {
  MatrixXc e(static_cast<Index>(xs.size()), n);
  for (Index r = 0; r < e.rows(); ++r)
    for (Index j = 0; j < n; ++j) e(r, j) = unit_phase(static_cast<double>(j) * xs[static_cast<std::size_t>(r)]);
  return e;
}

/// T(x_a, y_b) = sum_{j,k} z_jk e^{-2 pi i (j x_a + k y_b)} for all node pairs.
MatrixXc trig_sum_tensor(const Coloring& f, const std::vector<double>& xs, const std::vector<double>& ys) {
  const Eigen::MatrixXd z = coefficient_matrix(f);
  const MatrixXc ex = phase_matrix(xs, f.n());
  const MatrixXc ey = phase_matrix(ys, f.n());
  return (ex * z.cast<Complex>()) * ey.transpose();
}

struct PolarRule {
  double r_hi = 1.0;
  double panel = 0.05;
  int order = 10;
  double angular_density = 1.0;
  int angular_floor = 32;
};

/// Integral over the disk of radius r_hi of fn(xi) -> array<double, C>.
template <std::size_t C, typename Fn>
std::array<double, C> polar_integral(const PolarRule& rule, Fn&& fn) {
  RadialGrid grid;
  grid.breaks = {0.0, rule.r_hi};
  grid.max_panel = rule.panel;
  grid.order = rule.order;
  auto angular = [&](double r) {
    return std::max(rule.angular_floor, static_cast<int>(std::ceil(rule.angular_density * r)));
  };
  const auto seg = shell_integrals<C>(grid, 2, angular, [&](const Eigen::VectorXd& x) { return fn(Vec2(x(0), x(1))); });
  return seg.front();
}

PolarRule default_polar_rule(const Coloring& f, double radius, const QuadratureSpec& q, int level) {
  // |f-hat|^2 oscillates on the frequency scale 1/n.
  const double n = static_cast<double>(f.n());
  PolarRule rule;
  rule.r_hi = radius;
  rule.order = q.gauss_order;
  const double per_unit = q.panels_per_unit > 0 ? q.panels_per_unit : n + 1.0;
  rule.panel = 1.0 / (per_unit * std::pow(2.0, level));
  const double density = q.angular_nodes > 0 ? q.angular_nodes : 4.0 * kPi * (n + 1.0);
  rule.angular_density = density * std::pow(2.0, level);
  rule.angular_floor = 32 << level;
  return rule;
}

template <std::size_t C, typename Fn>
Estimate refined_polar(const Coloring& f, double radius, const QuadratureSpec& q, std::size_t channel, Fn&& fn) {
  double prev = polar_integral<C>(default_polar_rule(f, radius, q, 0), fn)[channel];
  Estimate est;
  for (int level = 1; level <= std::max(1, q.max_refinements); ++level) {
    const double cur = polar_integral<C>(default_polar_rule(f, radius, q, level), fn)[channel];
    est.value = cur;
    est.error = std::abs(cur - prev);
    prev = cur;
    if (est.error <= q.tolerance * std::abs(cur)) {
      est.converged = true;
      return est;
    }
  }
  est.converged = false;
  return est;
}

}  // namespace

Complex fhat(const Coloring& f, const Vec2& xi) {
  const Index n = f.n();
  VectorXc ex(n), ey(n);
  for (Index j = 0; j < n; ++j) {
    ex(j) = unit_phase(static_cast<double>(j) * xi.x());
    ey(j) = unit_phase(static_cast<double>(j) * xi.y());
  }
  const Complex t = ex.transpose() * (coefficient_matrix(f).cast<Complex>() * ey);
  return cell_factor(xi.x()) * cell_factor(xi.y()) * t;
}

double fhat_sq(const Coloring& f, const Vec2& xi) { return std::norm(fhat(f, xi)); }

FhatJet fhat_jet(const Coloring& f, const Vec2& xi) {
  const Index n = f.n();
  VectorXc ex(n), ey(n), dx(n), dy(n);
  for (Index j = 0; j < n; ++j) {
    ex(j) = unit_phase(static_cast<double>(j) * xi.x());
    ey(j) = unit_phase(static_cast<double>(j) * xi.y());
    dx(j) = Complex(0.0, -kTwoPi * static_cast<double>(j)) * ex(j);
    dy(j) = Complex(0.0, -kTwoPi * static_cast<double>(j)) * ey(j);
  }
  const MatrixXc z = coefficient_matrix(f).cast<Complex>();
  const VectorXc zy = z * ey;
  const Complex t = ex.transpose() * zy;
  const Complex t1 = dx.transpose() * zy;
  const Complex t2 = ex.transpose() * (z * dy);
  const Complex s1 = cell_factor(xi.x());
  const Complex s2 = cell_factor(xi.y());
  FhatJet jet;
  jet.value = s1 * s2 * t;
  jet.d1 = cell_factor_derivative(xi.x()) * s2 * t + s1 * s2 * t1;
  jet.d2 = s1 * cell_factor_derivative(xi.y()) * t + s1 * s2 * t2;
  return jet;
}

LatticeSum lattice_spectral_sum(const Coloring& f, double spacing, double half_width,
                                const std::function<double(double)>& radial_weight) {
  if (!(spacing > 0.0) || !(half_width > 0.0)) throw std::invalid_argument("lattice spacing and width must be positive");
  const Index m = static_cast<Index>(std::floor(half_width / spacing + 1e-12));
  const Index side = 2 * m + 1;
  std::vector<double> xs(static_cast<std::size_t>(side));
  std::vector<double> sinc_sq(static_cast<std::size_t>(side));
  for (Index i = 0; i < side; ++i) {
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i - m) * spacing;
    const double s = sinc(xs[static_cast<std::size_t>(i)]);
    sinc_sq[static_cast<std::size_t>(i)] = s * s;
  }

  // Radial weights on the octant 0 <= a <= b <= m.
  const std::size_t span = static_cast<std::size_t>(m + 1);
  std::vector<double> weight(span * span, 0.0);
  parallel_for(span, [&](std::size_t b) {
    for (std::size_t a = 0; a <= b; ++a) {
      const double rho = spacing * std::hypot(static_cast<double>(a), static_cast<double>(b));
      weight[b * span + a] = radial_weight(rho);
    }
  });
  auto weight_at = [&](Index i, Index j) {
    std::size_t a = static_cast<std::size_t>(std::abs(i - m));
    std::size_t b = static_cast<std::size_t>(std::abs(j - m));
    if (a > b) std::swap(a, b);
    return weight[b * span + a];
  };

  const MatrixXc e = phase_matrix(xs, f.n());
  const MatrixXc u = e * coefficient_matrix(f).cast<Complex>();
  const MatrixXc et = e.transpose();

  const std::size_t blocks = (static_cast<std::size_t>(side) + kLatticeBlock - 1) / kLatticeBlock;
  std::vector<std::pair<CompensatedSum, CompensatedSum>> partial(blocks);
  parallel_for(blocks, [&](std::size_t blk) {
    const Index r0 = static_cast<Index>(blk * kLatticeBlock);
    const Index rows = std::min<Index>(static_cast<Index>(kLatticeBlock), side - r0);
    const MatrixXc t = u.middleRows(r0, rows) * et;
    auto& [weighted, mass] = partial[blk];
    for (Index r = 0; r < rows; ++r) {
      const Index i = r0 + r;
      CompensatedSum row_w, row_m;
      for (Index j = 0; j < side; ++j) {
        const double v = sinc_sq[static_cast<std::size_t>(i)] * sinc_sq[static_cast<std::size_t>(j)] * std::norm(t(r, j));
        row_m += v;
        row_w += v * weight_at(i, j);
      }
      weighted += row_w;
      mass += row_m;
    }
  });

  CompensatedSum weighted, mass;
  for (const auto& [w, ms] : partial) {
    weighted += w;
    mass += ms;
  }
  LatticeSum out;
  const double h2 = spacing * spacing;
  out.weighted = h2 * weighted.value();
  out.mass = h2 * mass.value();
  out.spacing = spacing;
  out.half_width = static_cast<double>(m) * spacing;
  out.points = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
  return out;
}

Estimate l2_discrepancy_spatial(const Coloring& f, double t, const SpatialMesh& mesh) {
  if (!(t > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(mesh.mesh > 0.0)) throw std::invalid_argument("mesh must be positive");
  const double n = static_cast<double>(f.n());
  const double side = n + 2.0 * t;

  auto integrate = [&](Index cells) {
    const double h = side / static_cast<double>(cells);
    std::vector<double> rows(static_cast<std::size_t>(cells));
    parallel_for(rows.size(), [&](std::size_t r) {
      const double y = -t + (static_cast<double>(r) + 0.5) * h;
      CompensatedSum acc;
      for (Index c = 0; c < cells; ++c) {
        const double x = -t + (static_cast<double>(c) + 0.5) * h;
        const double d = circle_discrepancy(f, Circle{Vec2(x, y), t});
        acc += d * d;
      }
      rows[r] = acc.value();
    });
    CompensatedSum total;
    for (double v : rows) total += v;
    return total.value() * h * h / (n * n);
  };

  Index cells = std::max<Index>(1, static_cast<Index>(std::ceil(side / mesh.mesh - 1e-12)));
  double coarse = integrate(cells);
  Estimate est;
  est.value = coarse;
  est.converged = false;
  const int levels = std::max(1, mesh.max_refinements);
  double previous = NAN;
  for (int level = 0; level < levels; ++level) {
    cells *= 2;
    const double fine = integrate(cells);
    // D^2 has square-root kinks where circles become tangent to grid lines,
    // which caps the midpoint rule at order 3/2.
    constexpr double kFactor = 1.0 / (2.8284271247461903 - 1.0);
    est.value = fine + (fine - coarse) * kFactor;
    est.error = std::abs(fine - coarse) * kFactor;
    // The first correction alone underestimates the error on rough
    // integrands; once two extrapolations exist their gap is also charged.
    if (!std::isnan(previous)) est.error = std::max(est.error, std::abs(est.value - previous));
    previous = est.value;
    coarse = fine;
    if ((level > 0 || levels == 1) && est.error <= mesh.tolerance * std::abs(est.value)) {
      est.converged = true;
      break;
    }
  }
  return est;
}

Estimate l2_discrepancy_fourier(const Coloring& f, double t, const QuadratureSpec& q) {
  if (!(t > 0.0)) throw std::invalid_argument("radius must be positive");
  const double n = static_cast<double>(f.n());
  const double n2 = n * n;
  const double spacing = 1.0 / (std::max(1, q.oversample) * (n + 2.0 * t));
  const double scale = t * t / n2;
  auto weight = [&](double rho) {
    const double s = sigma1_hat(t * rho);
    return scale * s * s;
  };

  double width = q.truncation;
  Estimate est;
  for (int level = 0; level <= std::max(0, q.max_refinements); ++level) {
    const LatticeSum sum = lattice_spectral_sum(f, spacing, width, weight);
    // Outside the box |xi| > L, where |sigma1-hat(s)|^2 <= (4/s)(1 + B/(2 pi s))^2
    // and the lattice mass left over is n^2 minus the in-box mass.
    const double edge = sum.half_width + spacing;
    const double s = t * edge;
    const double sup_weight = scale * (4.0 / s) * std::pow(1.0 + kBesselRemainderBound / (kTwoPi * s), 2);
    const double tail = sup_weight * std::max(0.0, n2 - sum.mass);
    est.value = sum.weighted + 0.5 * tail;
    est.error = 0.5 * tail;
    est.converged = est.error <= q.tolerance * est.value;
    if (est.converged) break;
    width *= 1.5;
  }
  return est;
}

Estimate fhat_gradient_sq_integral(const Coloring& f, const QuadratureSpec& q) {
  return refined_polar<1>(f, 1.0, q, 0, [&](const Vec2& xi) {
    const FhatJet jet = fhat_jet(f, xi);
    return std::array<double, 1>{std::norm(jet.d1) + std::norm(jet.d2)};
  });
}

Estimate fhat_sq_ball_integral(const Coloring& f, double radius, const QuadratureSpec& q) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  return refined_polar<1>(f, radius, q, 0, [&](const Vec2& xi) { return std::array<double, 1>{fhat_sq(f, xi)}; });
}

Estimate fhat_sq_unit_square_integral(const Coloring& f) {
  auto integrate = [&](int level) {
    const double panel = 1.0 / (static_cast<double>(f.n() + 1) * std::pow(2.0, level));
    const CompositeRule rule = composite_gauss(-0.5, 0.5, panel, 10);
    const MatrixXc t = trig_sum_tensor(f, rule.nodes, rule.nodes);
    std::vector<double> s2(rule.nodes.size());
    for (std::size_t i = 0; i < s2.size(); ++i) s2[i] = std::pow(sinc(rule.nodes[i]), 2);
    CompensatedSum acc;
    for (Index a = 0; a < t.rows(); ++a) {
      CompensatedSum row;
      for (Index b = 0; b < t.cols(); ++b) {
        const auto ia = static_cast<std::size_t>(a);
        const auto ib = static_cast<std::size_t>(b);
        row += rule.weights[ia] * rule.weights[ib] * s2[ia] * s2[ib] * std::norm(t(a, b));
      }
      acc += row;
    }
    return acc.value();
  };
  const double coarse = integrate(0);
  const double fine = integrate(1);
  return Estimate{fine, std::abs(fine - coarse), true};
}

double trig_sum_sq_unit_square_integral(const Coloring& f) {
  // |T|^2 is a trigonometric polynomial of degree n - 1 in each variable, so
  // the 2n-point periodic trapezoid rule is exact.
  const Index m = 2 * f.n();
  std::vector<double> xs(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) xs[static_cast<std::size_t>(i)] = -0.5 + static_cast<double>(i) / static_cast<double>(m);
  const MatrixXc t = trig_sum_tensor(f, xs, xs);
  CompensatedSum acc;
  for (Index a = 0; a < m; ++a) {
    CompensatedSum row;
    for (Index b = 0; b < m; ++b) row += std::norm(t(a, b));
    acc += row;
  }
  const double w = 1.0 / static_cast<double>(m);
  return acc.value() * w * w;
}

PolygonSpectrum::PolygonSpectrum(const PolyShape& shape)
    : shape_(shape), centroid_(shape.centroid()), radius_(shape.radius_about_centroid()) {
  centered_.reserve(shape.size());
  for (const Vec2& v : shape.vertices()) centered_.push_back(v - centroid_);
}

Complex PolygonSpectrum::boundary(const Vec2& xi) const {
  Complex sum(0.0, 0.0);
  const std::size_t m = shape_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = shape_.vertex(i);
    const Vec2& b = shape_.vertex(i + 1);
    const Vec2 mid = 0.5 * (a + b);
    sum += (b - a).norm() * unit_phase(xi.dot(mid)) * sinc(xi.dot(b - a));
  }
  return sum;
}

Complex PolygonSpectrum::region_centered(const Vec2& xi) const {
  const std::size_t m = centered_.size();
  const double rho = xi.norm();
  if (kTwoPi * rho * radius_ <= 0.5) {
    // Taylor series of e^{-2 pi i x.xi} integrated over the fan of triangles
    // (0, p, q): integral of (x.xi)^k = 2 A k! h_k(u, v) / (k + 2)!.
    Complex sum(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& p = centered_[i];
      const Vec2& q = centered_[(i + 1) % m];
      const double twice_area = cross(p, q);
      const double u = p.dot(xi);
      const double v = q.dot(xi);
      Complex coeff(1.0, 0.0);  // (-2 pi i)^k / (k + 2)!
      coeff /= 2.0;
      Complex tri(0.0, 0.0);
      for (int k = 0; k < 40; ++k) {
        if (k > 0) coeff *= Complex(0.0, -kTwoPi) / static_cast<double>(k + 2);
        double h = 0.0;
        double up = 1.0;
        for (int j = 0; j <= k; ++j) {
          h += up * std::pow(v, k - j);
          up *= u;
        }
        const Complex term = coeff * h;
        tri += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(tri))) break;
      }
      sum += twice_area * tri;
    }
    return sum;
  }
  // Divergence theorem with V = i xi e^{-2 pi i x.xi} / (2 pi |xi|^2).
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = centered_[i];
    const Vec2& b = centered_[(i + 1) % m];
    const Vec2 d = b - a;
    const Vec2 normal_len(d.y(), -d.x());  // outward normal times edge length
    sum += xi.dot(normal_len) * unit_phase(xi.dot(0.5 * (a + b))) * sinc(xi.dot(d));
  }
  return Complex(0.0, 1.0 / (kTwoPi * rho * rho)) * sum;
}

Complex PolygonSpectrum::region(const Vec2& xi) const { return unit_phase(xi.dot(centroid_)) * region_centered(xi); }

std::pair<TransformFn, TransformFn> polygon_fts(const PolyShape& shape) {
  auto spec = std::make_shared<const PolygonSpectrum>(shape);
  return {[spec](const Vec2& xi) { return spec->region(xi); }, [spec](const Vec2& xi) { return spec->boundary(xi); }};
}

}  // namespace checkerdisc
