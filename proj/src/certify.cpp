#include "checkerdisc/certify.hpp"

#include "checkerdisc/bessel.hpp"
#include "checkerdisc/fixtures.hpp"
#include "checkerdisc/parallel.hpp"
#include "checkerdisc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace checkerdisc {

namespace {

using nlohmann::json;

double sigma_sq(double r) {
  const double s = sigma1_hat(r);
  return s * s;
}

/// Golden-section minimization of fn on [a, b].
template <typename Fn>
std::pair<double, double> golden_min(Fn&& fn, double a, double b, int iters = 80) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int i = 0; i < iters && b - a > 1e-14; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = fn(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Minimum of fn over [lo, hi]: uniform scan, then golden-section polish of
/// every discrete local minimum. Returns (argmin, min, samples).
template <typename Fn>
std::tuple<double, double, std::size_t> scan_min(Fn&& fn, double lo, double hi, double step) {
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  const std::vector<double> values =
      parallel_map<double>(count, [&](std::size_t i) { return fn(lo + static_cast<double>(i) * step); });
  double best_r = lo;
  double best = values[0];
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < count; ++i) {
    if (values[i] < best) {
      best = values[i];
      best_r = lo + static_cast<double>(i) * step;
    }
    if (i > 0 && i + 1 < count && values[i] <= values[i - 1] && values[i] <= values[i + 1]) minima.push_back(i);
  }
  const auto polished = parallel_map<std::pair<double, double>>(minima.size(), [&](std::size_t m) {
    const double r = lo + static_cast<double>(minima[m]) * step;
    return golden_min(fn, std::max(lo, r - step), std::min(hi, r + step));
  });
  for (const auto& [r, v] : polished) {
    if (v < best) {
      best = v;
      best_r = r;
    }
  }
  if (const double v = fn(hi); v < best) {
    best = v;
    best_r = hi;
  }
  return {best_r, best, count};
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

json CertReport::to_json() const {
  return json{{"check", check},           {"params", params}, {"grid", grid},
              {"worst_value", worst_value}, {"threshold", threshold}, {"pass", pass},
              {"seed", seed}};
}

CertReport check_lemma_double(double r_max, double step) {
  const double r_lo = 1.0 / kTwoPi;
  if (!(r_max >= 7.0 / kTwoPi)) throw std::invalid_argument("r_max must be at least 7/(2 pi)");
  if (!(step > 0.0)) throw std::invalid_argument("scan step must be positive");
  auto objective = [](double r) { return r * (sigma_sq(r) + sigma_sq(2.0 * r)); };
  const auto [arg, value, samples] = scan_min(objective, r_lo, r_max, step);

  auto common = [](double r) {
    return std::max(std::abs(bessel_j0(kTwoPi * r)), std::abs(bessel_j0(2.0 * kTwoPi * r)));
  };
  const auto [zarg, zmin, zsamples] = scan_min(common, r_lo, 7.0 / kTwoPi, std::min(step, 1e-3));

  CertReport rep;
  rep.check = "lemma-double";
  rep.params = {{"r_min", r_lo}, {"r_max", r_max}, {"comparison", ">"}, {"requires", {"common_zero_gap > 0"}}};
  rep.grid = {{"step", step},       {"samples", samples},         {"argmin", arg},
              {"common_zero_gap", zmin}, {"common_zero_argmin", zarg}, {"common_zero_samples", zsamples}};
  rep.worst_value = value;
  rep.threshold = 0.0;
  rep.pass = value > 0.0 && zmin > 0.0;
  return rep;
}

double bessel_remainder_local_sup(double r, double step) {
  double best = 0.0;
  const auto count = static_cast<std::size_t>(std::ceil(kTwoPi / step));
  for (std::size_t i = 0; i <= count; ++i) {
    const double x = r + static_cast<double>(i) * step;
    best = std::max(best, x * std::abs(bessel_remainder(x)));
  }
  return best;
}

CertReport check_bessel_error(double r_lo, double r_hi, double step) {
  if (!(r_lo >= 1.0) || !(r_hi > r_lo)) throw std::invalid_argument("need 1 <= r_lo < r_hi");
  if (!(step > 0.0)) throw std::invalid_argument("scan step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((r_hi - r_lo) / step + 1e-9)) + 1;
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  const auto parts = parallel_map<std::pair<double, double>>(chunks, [&](std::size_t c) {
    double best = -1.0;
    double arg = r_lo;
    for (std::size_t i = c * kChunk; i < std::min(count, (c + 1) * kChunk); ++i) {
      const double r = std::min(r_hi, r_lo + static_cast<double>(i) * step);
      const double v = r * std::abs(bessel_remainder(r));
      if (v > best) {
        best = v;
        arg = r;
      }
    }
    return std::pair{best, arg};
  });
  double sup = -1.0;
  double arg = r_lo;
  for (const auto& [v, r] : parts) {
    if (v > sup) {
      sup = v;
      arg = r;
    }
  }
  const double limit_r = std::min(1000.0, r_hi);
  CertReport rep;
  rep.check = "bessel-error";
  rep.params = {{"r_lo", r_lo}, {"r_hi", r_hi}, {"comparison", "<="}};
  rep.grid = {{"step", step},
              {"samples", count},
              {"argmax", arg},
              {"limit_probe_r", limit_r},
              {"limit_probe_sup", bessel_remainder_local_sup(limit_r)},
              {"c2", sup / kPi}};
  rep.worst_value = sup;
  rep.threshold = 0.2;
  rep.pass = sup <= 0.2;
  return rep;
}

bool ExclusionSet::excluded(double r) const {
  const auto it = std::lower_bound(centers.begin(), centers.end(), r);
  if (it != centers.end() && std::abs(*it - r) < w) return true;
  if (it != centers.begin() && std::abs(*std::prev(it) - r) < w) return true;
  return false;
}

std::vector<double> sigma1_roots(double r_max) {
  constexpr double kStep = 0.01;
  auto fn = [](double r) { return bessel_j0(kTwoPi * r); };
  std::vector<double> roots;
  double a = 0.0;
  double fa = fn(a);
  const auto steps = static_cast<std::size_t>(std::ceil(r_max / kStep));
  for (std::size_t i = 1; i <= steps; ++i) {
    const double b = std::min(r_max, static_cast<double>(i) * kStep);
    const double fb = fn(b);
    if (fb == 0.0) {
      roots.push_back(b);
    } else if ((fa < 0.0) != (fb < 0.0) && fa != 0.0) {
      double lo = a;
      double hi = b;
      double flo = fa;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

ExclusionSet build_exclusion(double w, double zero_search_bound) {
  return build_exclusion(w, zero_search_bound, fixtures::kBesselC2);
}

ExclusionSet build_exclusion(double w, double zero_search_bound, double c2) {
  if (!(c2 > 0.0)) throw std::invalid_argument("c2 must be positive");
  if (!(zero_search_bound > 0.0)) throw std::invalid_argument("zero search bound must be positive");
  ExclusionSet e;
  e.w = w;
  e.c2 = c2;
  e.c_w = w > 0.0 ? c2 / (8.0 * w * w) : INFINITY;
  const double bound = std::isfinite(e.c_w) ? std::max(zero_search_bound, e.c_w) : zero_search_bound;
  for (int k = 0;; ++k) {
    const double beta = 0.5 * k + 0.375;
    if (beta > zero_search_bound) break;
    e.betas.push_back(beta);
  }
  e.roots = sigma1_roots(bound);
  for (double g : e.roots)
    if (g <= e.c_w) e.gammas.push_back(g);
  e.centers = e.gammas;
  for (double b : e.betas)
    if (b + w > e.c_w) e.centers.push_back(b);
  std::sort(e.centers.begin(), e.centers.end());
  e.w0 = 0.125;
  for (std::size_t i = 1; i < e.centers.size(); ++i) e.w0 = std::min(e.w0, 0.5 * (e.centers[i] - e.centers[i - 1]));
  if (!(w > 0.0) || !(w < e.w0)) {
    throw std::invalid_argument("half-width w = " + format_double(w) + " must lie in (0, w0) with w0 = " +
                                format_double(e.w0));
  }
  return e;
}

CertReport check_lemma_lowerestimate(const ExclusionSet& e, double r_max, double step) {
  if (!(step > 0.0) || !(r_max > 0.0)) throw std::invalid_argument("scan needs positive step and range");
  auto in_beta_annulus = [&](double r) {
    const double k = std::round(2.0 * (r - 0.375));
    return k >= 0.0 && std::abs(r - (0.5 * k + 0.375)) < e.w;
  };
  auto in_gamma_annulus = [&](double r) {
    return std::any_of(e.gammas.begin(), e.gammas.end(), [&](double g) { return std::abs(r - g) < e.w; });
  };

  std::vector<double> samples;
  const auto count = static_cast<std::size_t>(std::floor(r_max / step + 1e-9));
  for (std::size_t i = 1; i <= count; ++i) samples.push_back(static_cast<double>(i) * step);
  for (double b = 0.375; b - e.w <= r_max; b += 0.5) {
    samples.push_back(b - e.w);
    samples.push_back(b + e.w);
  }
  for (double g : e.gammas) {
    samples.push_back(std::max(step, g - e.w));
    samples.push_back(g + e.w);
  }
  if (e.c_w <= r_max) samples.push_back(e.c_w);
  std::sort(samples.begin(), samples.end());

  const auto values = parallel_map<std::array<double, 2>>(samples.size(), [&](std::size_t i) {
    const double r = samples[i];
    double far = INFINITY;
    double near = INFINITY;
    if (r > e.c_w) {
      if (!in_beta_annulus(r)) far = r * sigma_sq(r);
    } else if (!in_gamma_annulus(r)) {
      near = sigma_sq(r);
    }
    return std::array<double, 2>{far, near};
  });
  double c1 = INFINITY, c1_arg = 0.0, c2 = INFINITY, c2_arg = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (values[i][0] < c1) {
      c1 = values[i][0];
      c1_arg = samples[i];
    }
    if (values[i][1] < c2) {
      c2 = values[i][1];
      c2_arg = samples[i];
    }
  }
  CertReport rep;
  rep.check = "lemma-lowerestimate";
  rep.params = {{"w", e.w},         {"c_w", e.c_w}, {"bessel_c2", e.c2}, {"r_max", r_max},
                {"comparison", ">"}, {"requires", {"far_constant > 0", "near_constant > 0"}}};
  rep.grid = {{"step", step},
              {"samples", samples.size()},
              {"far_constant", std::isfinite(c1) ? json(c1) : json(nullptr)},
              {"far_argmin", c1_arg},
              {"near_constant", std::isfinite(c2) ? json(c2) : json(nullptr)},
              {"near_argmin", c2_arg}};
  const double worst = std::min(c1, c2);
  rep.worst_value = std::isfinite(worst) ? worst : 0.0;
  rep.threshold = 0.0;
  rep.pass = c1 > 0.0 && c2 > 0.0 && std::isfinite(worst);
  return rep;
}

CertReport check_corollary_tor2t(const Coloring& f, double t, const SpatialMesh& mesh) {
  if (!(t >= 1.0)) throw std::invalid_argument("radius must be at least 1");
  const Estimate d1 = l2_discrepancy_spatial(f, t, mesh);
  const Estimate d2 = l2_discrepancy_spatial(f, 2.0 * t, mesh);
  const double ratio = (d1.value + d2.value) / t;
  CertReport rep;
  rep.check = "corollary-tor2t";
  rep.params = {{"n", f.n()}, {"t", t}, {"mesh", mesh.mesh}, {"comparison", ">="}};
  rep.grid = {{"d_t_sq", d1.value},      {"d_t_sq_error", d1.error},   {"d_t_converged", d1.converged},
              {"d_2t_sq", d2.value},     {"d_2t_sq_error", d2.error}, {"d_2t_converged", d2.converged},
              {"max_refinements", mesh.max_refinements}};
  rep.worst_value = ratio;
  rep.threshold = fixtures::kCorollaryFloor;
  rep.pass = ratio >= rep.threshold;
  return rep;
}

PoincareTerms poincare_terms(const SampledField& g, const std::vector<double>& centers, double w) {
  if (!g.value) throw std::invalid_argument("field has no evaluator");
  if (!(w > 0.0)) throw std::invalid_argument("annulus half-width must be positive");
  double beta = INFINITY;
  double prev = 0.0;
  for (double c : centers) {
    if (!(c > prev)) throw std::invalid_argument("annulus centers must be increasing and positive");
    beta = std::min(beta, c - prev);
    prev = c;
  }
  beta = std::min(beta, g.radius - prev);
  if (!(beta > 0.0) || !(w < beta / 3.0)) {
    throw std::invalid_argument("annuli overlap or touch the boundary: w = " + format_double(w) +
                                " needs w < beta/3 = " + format_double(beta / 3.0));
  }
  RadialGrid grid;
  grid.max_panel = g.max_panel;
  grid.order = g.order;
  grid.breaks.push_back(0.0);
  for (double c : centers) {
    grid.breaks.push_back(c - w);
    grid.breaks.push_back(c + w);
  }
  grid.breaks.push_back(g.radius);
  const auto seg = shell_integrals<2>(grid, g.dimension, g.angular, g.value);
  CompensatedSum total, outside, gradient;
  for (std::size_t s = 0; s < seg.size(); ++s) {
    total += seg[s][0];
    gradient += seg[s][1];
    if (s % 2 == 0) outside += seg[s][0];
  }
  PoincareTerms out;
  out.total = total.value();
  out.outside = outside.value();
  out.gradient = gradient.value();
  out.ratio = out.total / (out.outside + w * w * out.gradient);
  return out;
}

CertReport check_poincare(const SampledField& g, const std::vector<double>& centers, double w) {
  const PoincareTerms terms = poincare_terms(g, centers, w);
  CertReport rep;
  rep.check = "poincare";
  rep.params = {{"dimension", g.dimension}, {"radius", g.radius}, {"w", w}, {"centers", centers},
                {"comparison", "<="}};
  rep.grid = {{"max_panel", g.max_panel},
              {"order", g.order},
              {"total", terms.total},
              {"outside", terms.outside},
              {"gradient", terms.gradient}};
  rep.worst_value = terms.ratio;
  rep.threshold = fixtures::kPoincareConstant;
  rep.pass = terms.ratio <= rep.threshold;
  return rep;
}

SampledField fhat_field(const Coloring& f) {
  SampledField g;
  g.dimension = 2;
  g.radius = 1.0;
  const double n = static_cast<double>(f.n());
  g.max_panel = 0.5 / (n + 1.0);
  g.order = 8;
  g.angular = [n](double r) { return 32 + static_cast<int>(std::ceil(4.0 * kPi * (n + 1.0) * r)); };
  g.value = [&f](const Eigen::VectorXd& x) {
    const FhatJet jet = fhat_jet(f, Vec2(x(0), x(1)));
    return std::array<double, 2>{std::norm(jet.value), std::norm(jet.d1) + std::norm(jet.d2)};
  };
  return g;
}

std::vector<double> scaled_centers(const ExclusionSet& e, double t) {
  std::vector<double> out;
  const double w = e.w / t;
  for (double c : e.centers) {
    const double s = c / t;
    if (1.0 - s > 3.0 * w) out.push_back(s);
  }
  return out;
}

CertReport check_estimate_with_holes(const Coloring& f, double t, const ExclusionSet& e) {
  if (!(t >= 1.0)) throw std::invalid_argument("radius must be at least 1");
  const double n = static_cast<double>(f.n());
  const Estimate d = l2_discrepancy_fourier(f, t);
  const std::vector<double> centers = scaled_centers(e, t);
  const PoincareTerms terms = poincare_terms(fhat_field(f), centers, e.w / t);
  const Estimate square = fhat_sq_unit_square_integral(f);
  const double holes = t / (n * n) * terms.outside;

  CertReport rep;
  rep.check = "estimate-with-holes";
  rep.params = {{"n", f.n()}, {"t", t}, {"w", e.w}, {"c_w", e.c_w}, {"comparison", ">="}};
  rep.grid = {{"d_t_sq", d.value},
              {"d_t_sq_error", d.error},
              {"holes_side", holes},
              {"holes_ratio", d.value / holes},
              {"ball_mass", terms.total},
              {"ball_mass_outside_holes", terms.outside},
              {"gradient_mass", terms.gradient},
              {"poincare_ratio", terms.ratio},
              {"unit_square_mass", square.value},
              {"unit_square_floor", std::pow(2.0 / kPi, 4) * n * n},
              {"gradient_ceiling", 8.0 * kPi * kPi / 3.0 * n * n * n * n},
              {"scaled_centers", centers.size()}};
  rep.worst_value = d.value / t;
  rep.threshold = fixtures::kHolesFloor;
  rep.pass = rep.worst_value >= rep.threshold;
  return rep;
}

AnnulusIntegrals annulus_integrals(const PolygonSpectrum& spectrum, double r, double a) {
  if (!(r > 0.0) || !(a > 1.0)) throw std::invalid_argument("annulus needs R > 0 and A > 1");
  const double rc = spectrum.shape().radius_about_centroid();
  const CompositeRule radial = composite_gauss(r, a * r, 0.1 / rc, 8);
  const auto parts = parallel_map<std::array<double, 2>>(radial.nodes.size(), [&](std::size_t i) {
    const double rho = radial.nodes[i];
    // |chi-hat|^2 and |sigma-hat|^2 are even, so half the circle suffices.
    const int count = 64 + static_cast<int>(std::ceil(4.0 * kPi * rho * rc));
    CompensatedSum k, s;
    for (int j = 0; j < count; ++j) {
      const double th = kPi * j / count;
      const Vec2 xi = rho * Vec2(std::cos(th), std::sin(th));
      k += std::norm(spectrum.region(xi));
      s += std::norm(spectrum.boundary(xi));
    }
    const double w = radial.weights[i] * rho * kTwoPi / count;
    return std::array<double, 2>{w * k.value(), w * s.value()};
  });
  CompensatedSum k, s;
  for (const auto& p : parts) {
    k += p[0];
    s += p[1];
  }
  return {k.value(), s.value()};
}

CertReport check_lemma_fourierKS(const PolyShape& shape, const std::vector<double>& r_list, double a) {
  if (r_list.size() < 2) throw std::invalid_argument("need at least two radii");
  for (std::size_t i = 1; i < r_list.size(); ++i)
    if (!(r_list[i] > r_list[i - 1])) throw std::invalid_argument("radii must increase");
  const PolygonSpectrum spectrum(shape);
  std::vector<double> lr, lk, ls;
  json rows = json::array();
  for (double r : r_list) {
    const AnnulusIntegrals in = annulus_integrals(spectrum, r, a);
    lr.push_back(std::log(r));
    lk.push_back(std::log(in.region));
    ls.push_back(std::log(in.boundary));
    rows.push_back({{"R", r},
                    {"region", in.region},
                    {"boundary", in.boundary},
                    {"region_normalized", r * in.region / shape.perimeter()},
                    {"boundary_normalized", in.boundary / (shape.perimeter() * r)}});
  }
  const LineFit fk = fit_line(lr, lk);
  const LineFit fs = fit_line(lr, ls);
  const double dev = std::max(std::abs(fk.slope + 1.0), std::abs(fs.slope - 1.0));
  CertReport rep;
  rep.check = "lemma-fourierKS";
  rep.params = {{"vertices", shape.size()}, {"perimeter", shape.perimeter()}, {"area", shape.area()},
                {"A", a},                    {"radii", r_list},               {"comparison", "<="}};
  rep.grid = {{"rows", rows},
              {"region_slope", fk.slope},
              {"region_slope_stderr", fk.slope_stderr},
              {"boundary_slope", fs.slope},
              {"boundary_slope_stderr", fs.slope_stderr}};
  rep.worst_value = dev;
  rep.threshold = 0.15;
  rep.pass = dev <= 0.15;
  return rep;
}

}  // namespace checkerdisc
