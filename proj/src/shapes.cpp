#include "checkerdisc/shapes.hpp"

#include "checkerdisc/geometry.hpp"
#include "checkerdisc/parallel.hpp"
#include "checkerdisc/quadrature.hpp"
#include "checkerdisc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace checkerdisc {

namespace {

double evaluate(const Coloring& f, ShapeMode mode, const std::vector<Vec2>& placed) {
  return mode == ShapeMode::region ? region_discrepancy_by_boundary(f, placed) : polyline_discrepancy(f, placed);
}

void check_range(const RadialRange& range) {
  if (!(range.radial_lo > 0.0) || !(range.radial_hi >= range.radial_lo))
    throw std::invalid_argument("radial range needs 0 < lo <= hi");
}

std::vector<Vec2> scaled_rotated(const PolyShape& shape, double r, double tau) {
  return place(shape, Placement{Vec2::Zero(), r, tau});
}

std::pair<Vec2, Vec2> bounding_box(const std::vector<Vec2>& pts) {
  Vec2 lo = pts.front();
  Vec2 hi = pts.front();
  for (const Vec2& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

/// Integral over x of D(x + base)^2 on a midpoint grid covering the support.
double translation_integral(const Coloring& f, ShapeMode mode, const std::vector<Vec2>& base, double x_step) {
  const double n = static_cast<double>(f.n());
  const auto [lo, hi] = bounding_box(base);
  const Vec2 from = -hi;
  const Vec2 span = Vec2(n, n) - lo - from;
  const Index cx = std::max<Index>(1, static_cast<Index>(std::ceil(span.x() / x_step - 1e-12)));
  const Index cy = std::max<Index>(1, static_cast<Index>(std::ceil(span.y() / x_step - 1e-12)));
  const double hx = span.x() / static_cast<double>(cx);
  const double hy = span.y() / static_cast<double>(cy);
  std::vector<Vec2> placed(base.size());
  CompensatedSum acc;
  for (Index b = 0; b < cy; ++b) {
    CompensatedSum row;
    for (Index a = 0; a < cx; ++a) {
      const Vec2 x = from + Vec2((static_cast<double>(a) + 0.5) * hx, (static_cast<double>(b) + 0.5) * hy);
      for (std::size_t i = 0; i < base.size(); ++i) placed[i] = base[i] + x;
      const double d = evaluate(f, mode, placed);
      row += d * d;
    }
    acc += row;
  }
  return acc.value() * hx * hy;
}

struct Cubic {
  std::vector<double> value;
  std::vector<double> slope;
  double step = 0.0;

  [[nodiscard]] double operator()(double s) const {
    const double u = s / step;
    auto i = static_cast<std::size_t>(std::floor(u));
    if (i + 1 >= value.size()) i = value.size() - 2;
    const double t = u - static_cast<double>(i);
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * value[i] + (t3 - 2 * t2 + t) * step * slope[i] + (-2 * t3 + 3 * t2) * value[i + 1] +
           (t3 - t2) * step * slope[i + 1];
  }
};

}  // namespace

ShapeMode parse_shape_mode(std::string_view name) {
  if (name == "region") return ShapeMode::region;
  if (name == "boundary") return ShapeMode::boundary;
  throw std::invalid_argument("unknown shape mode '" + std::string(name) + "' (expected region or boundary)");
}

double shape_discrepancy(const Coloring& f, const PolyShape& shape, ShapeMode mode, const Placement& placement) {
  return evaluate(f, mode, place(shape, placement));
}

Estimate averaged_l2(const Coloring& f, const PolyShape& shape, ShapeMode mode, const RadialRange& range,
                     const AverageMesh& mesh) {
  check_range(range);
  if (!(mesh.x_step > 0.0) || mesh.radial_nodes < 1 || mesh.angles < 1)
    throw std::invalid_argument("average mesh needs a positive step and node counts");
  const double n = static_cast<double>(f.n());

  auto integrate = [&](double x_step, int angles) {
    std::vector<double> taus;
    if (mesh.fixed_tau) {
      taus = {*mesh.fixed_tau};
    } else {
      for (int i = 0; i < angles; ++i) taus.push_back(kPi * i / angles);
    }
    std::vector<double> radii;
    std::vector<double> rweights;
    if (range.radial_hi == range.radial_lo) {
      radii = {range.radial_hi * n};
      rweights = {1.0};
    } else {
      const CompositeRule rule = composite_gauss(range.radial_lo * n, range.radial_hi * n, INFINITY, mesh.radial_nodes);
      radii = rule.nodes;
      rweights = rule.weights;
    }
    const std::size_t jobs = taus.size() * radii.size();
    const std::vector<double> parts = parallel_map<double>(jobs, [&](std::size_t job) {
      const double tau = taus[job / radii.size()];
      const std::size_t ri = job % radii.size();
      return rweights[ri] * translation_integral(f, mode, scaled_rotated(shape, radii[ri], tau), x_step);
    });
    CompensatedSum acc;
    for (double p : parts) acc += p;
    return acc.value() / static_cast<double>(taus.size()) / (n * n * n);
  };

  const double fine = integrate(mesh.x_step, mesh.angles);
  const double coarse = integrate(2.0 * mesh.x_step, std::max(1, mesh.angles / 2));
  return Estimate{fine, std::abs(fine - coarse), true};
}

Estimate averaged_l2_region(const Coloring& f, const PolyShape& shape, const RadialRange& range,
                            const AverageMesh& mesh) {
  return averaged_l2(f, shape, ShapeMode::region, range, mesh);
}

Estimate averaged_l2_boundary(const Coloring& f, const PolyShape& shape, const RadialRange& range,
                              const AverageMesh& mesh) {
  return averaged_l2(f, shape, ShapeMode::boundary, range, mesh);
}

Estimate averaged_l2_fourier(const Coloring& f, const PolyShape& shape, ShapeMode mode, const RadialRange& range,
                             const FourierAverageSpec& spec) {
  check_range(range);
  const double n = static_cast<double>(f.n());
  const int p = mode == ShapeMode::region ? 4 : 2;
  const PolygonSpectrum transform(shape);
  const double rc = shape.radius_about_centroid();
  const double r_lo = range.radial_lo * n;
  const double r_hi = range.radial_hi * n;

  auto angular_mean = [&](double s) {
    const int count = spec.angular_floor + static_cast<int>(std::ceil(4.0 * kPi * s * rc));
    CompensatedSum acc;
    for (int i = 0; i < count; ++i) {
      const double th = kPi * i / count;
      const Vec2 xi = s * Vec2(std::cos(th), std::sin(th));
      acc += std::norm(mode == ShapeMode::region ? transform.region(xi) : transform.boundary(xi));
    }
    return acc.value() / count;
  };

  // F * sigma lives in a square of side n + 2 r_hi rc, which sets the
  // alias-free lattice spacing.
  const double spacing = 1.0 / (n + 2.0 * r_hi * rc);
  const double width = spec.truncation;
  const double s_max = r_hi * width * std::sqrt(2.0) * 1.01 + 4.0 * spec.table_step;
  const auto steps = static_cast<std::size_t>(std::ceil(s_max / spec.table_step));
  const double ds = spec.table_step;

  const GaussRule& gauss = gauss_legendre(4);
  std::vector<double> g(steps + 1);
  std::vector<double> increments(steps);
  parallel_for(steps + 1, [&](std::size_t i) {
    const double s = ds * static_cast<double>(i);
    g[i] = angular_mean(s);
    if (i == steps) return;
    double inc = 0.0;
    for (std::size_t q = 0; q < gauss.nodes.size(); ++q) {
      const double u = s + 0.5 * ds * (gauss.nodes[q] + 1.0);
      inc += 0.5 * ds * gauss.weights[q] * std::pow(u, p) * angular_mean(u);
    }
    increments[i] = inc;
  });

  Cubic running;
  running.step = ds;
  running.value.assign(steps + 1, 0.0);
  running.slope.resize(steps + 1);
  CompensatedSum acc;
  for (std::size_t i = 0; i <= steps; ++i) {
    if (i > 0) {
      acc += increments[i - 1];
      running.value[i] = acc.value();
    }
    running.slope[i] = std::pow(ds * static_cast<double>(i), p) * g[i];
  }

  // A degenerate range means a single dilation rather than an r-integral.
  const bool single = r_hi == r_lo;
  const double zero_weight =
      single ? std::pow(r_hi, p) * g[0] : g[0] * (std::pow(r_hi, p + 1) - std::pow(r_lo, p + 1)) / (p + 1);
  auto weight = [&](double rho) {
    if (rho < 1e-12) return zero_weight;
    if (single) return std::pow(r_hi, p) * angular_mean(r_hi * rho);
    return (running(r_hi * rho) - running(r_lo * rho)) / std::pow(rho, p + 1);
  };

  const LatticeSum sum = lattice_spectral_sum(f, spacing, width, weight);
  // Tail outside the box: largest tabulated weight just past the box edge
  // times the lattice mass left over.
  double sup_weight = 0.0;
  for (int i = 0; i <= 64; ++i) {
    const double rho = sum.half_width * (1.0 + (std::sqrt(2.0) - 1.0) * i / 64.0);
    sup_weight = std::max(sup_weight, weight(rho));
  }
  const double n3 = n * n * n;
  const double tail = sup_weight * std::max(0.0, n * n - sum.mass) / n3;
  return Estimate{sum.weighted / n3 + 0.5 * tail, 0.5 * tail, true};
}

PlacementResult best_placement(const Coloring& f, const PolyShape& shape, ShapeMode mode,
                               const PlacementSearch& search) {
  check_range(search.range);
  if (!(search.x_step > 0.0) || search.radii < 1 || search.angles < 1 || search.keep < 1)
    throw std::invalid_argument("placement search needs a positive step and counts");
  const double n = static_cast<double>(f.n());
  const double r_lo = search.range.radial_lo * n;
  const double r_hi = search.range.radial_hi * n;
  const double period = shape.centrally_symmetric() ? kPi : kTwoPi;

  std::vector<double> taus;
  if (search.fixed_tau) {
    taus = {*search.fixed_tau};
  } else {
    for (int i = 0; i < search.angles; ++i) taus.push_back(period * i / search.angles);
  }
  std::vector<double> radii;
  if (search.radii == 1 || r_hi == r_lo) {
    radii = {r_hi};
  } else {
    for (int i = 0; i < search.radii; ++i) radii.push_back(r_lo + (r_hi - r_lo) * i / (search.radii - 1));
  }

  // Candidate translations are multiples of x_step in the support box.
  struct Candidate {
    Placement placement;
    double value;
  };
  const std::size_t jobs = taus.size() * radii.size();
  std::vector<std::vector<Candidate>> per_job(jobs);
  parallel_for(jobs, [&](std::size_t job) {
    const double tau = taus[job / radii.size()];
    const double r = radii[job % radii.size()];
    const std::vector<Vec2> base = scaled_rotated(shape, r, tau);
    const auto [lo, hi] = bounding_box(base);
    const Index ax = static_cast<Index>(std::ceil(-hi.x() / search.x_step - 1e-9));
    const Index bx = static_cast<Index>(std::floor((n - lo.x()) / search.x_step + 1e-9));
    const Index ay = static_cast<Index>(std::ceil(-hi.y() / search.x_step - 1e-9));
    const Index by = static_cast<Index>(std::floor((n - lo.y()) / search.x_step + 1e-9));
    std::vector<Vec2> placed(base.size());
    for (Index b = ay; b <= by; ++b) {
      for (Index a = ax; a <= bx; ++a) {
        const Vec2 x(static_cast<double>(a) * search.x_step, static_cast<double>(b) * search.x_step);
        for (std::size_t i = 0; i < base.size(); ++i) placed[i] = base[i] + x;
        per_job[job].push_back({Placement{x, r, tau}, evaluate(f, mode, placed)});
      }
    }
  });

  PlacementResult result;
  std::vector<Candidate> all;
  CompensatedSum squares;
  for (auto& v : per_job) {
    for (const Candidate& c : v) {
      squares += c.value * c.value;
      all.push_back(c);
    }
  }
  if (all.empty()) throw std::invalid_argument("placement grid is empty");
  result.evaluations = all.size();
  result.grid_rms = std::sqrt(squares.value() / static_cast<double>(all.size()));

  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(search.keep), all.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = std::abs(all[a].value);
                      const double vb = std::abs(all[b].value);
                      return va != vb ? va > vb : a < b;
                    });
  result.grid_max = std::abs(all[order.front()].value);

  // Seeds for refinement: the overall top `keep`, plus the best grid point of
  // every rotation angle. Aligned angles hit lattice corners exactly and would
  // otherwise crowd out the rotated ones.
  std::vector<std::size_t> seeds(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  if (taus.size() > 1) {
    std::size_t start = 0;
    for (std::size_t job = 0; job < jobs; job += radii.size()) {
      std::size_t count = 0;
      for (std::size_t j = job; j < job + radii.size(); ++j) count += per_job[j].size();
      std::size_t arg = start;
      for (std::size_t i = start; i < start + count; ++i)
        if (std::abs(all[i].value) > std::abs(all[arg].value)) arg = i;
      if (count > 0 && std::find(seeds.begin(), seeds.end(), arg) == seeds.end()) seeds.push_back(arg);
      start += count;
    }
  }

  const bool free_tau = !search.fixed_tau.has_value();
  const bool free_r = r_hi > r_lo;
  const double tau_step0 = free_tau ? 0.5 * period / search.angles : 0.0;
  const double r_step0 = free_r ? 0.5 * (r_hi - r_lo) / std::max(1, search.radii - 1) : 0.0;

  const std::vector<Candidate> refined = parallel_map<Candidate>(seeds.size(), [&](std::size_t i) {
    Candidate best = all[seeds[i]];
    double xs = 0.5 * search.x_step;
    double ts = tau_step0;
    double rs = r_step0;
    while (xs >= search.min_step) {
      bool improved = false;
      for (int param = 0; param < 4; ++param) {
        const double step = param < 2 ? xs : (param == 2 ? ts : rs);
        if (step == 0.0) continue;
        for (double sign : {1.0, -1.0}) {
          Placement trial = best.placement;
          if (param < 2) trial.x(param) += sign * step;
          if (param == 2) trial.tau += sign * step;
          if (param == 3) trial.r = std::clamp(trial.r + sign * step, r_lo, r_hi);
          const double v = shape_discrepancy(f, shape, mode, trial);
          if (std::abs(v) > std::abs(best.value)) {
            best = {trial, v};
            improved = true;
          }
        }
      }
      if (!improved) {
        xs *= 0.5;
        ts *= 0.5;
        rs *= 0.5;
      }
    }
    return best;
  });

  Candidate best = refined.front();
  for (const Candidate& c : refined)
    if (std::abs(c.value) > std::abs(best.value)) best = c;
  best.placement.tau = std::fmod(best.placement.tau, kTwoPi);
  if (best.placement.tau < 0) best.placement.tau += kTwoPi;
  result.placement = best.placement;
  result.value = shape_discrepancy(f, shape, mode, best.placement);
  return result;
}

}  // namespace checkerdisc
