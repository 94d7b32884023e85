#include "checkerdisc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace checkerdisc {

namespace {

GaussRule build_gauss(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gauss(order)).first;
  return it->second;
}

CompositeRule composite_gauss(double a, double b, double max_panel, int order) {
  CompositeRule out;
  if (!(b > a)) return out;
  const GaussRule& g = gauss_legendre(order);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel - 1e-12)));
  const double h = (b - a) / panels;
  out.nodes.reserve(static_cast<std::size_t>(panels * order));
  out.weights.reserve(static_cast<std::size_t>(panels * order));
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < order; ++i) {
      out.nodes.push_back(lo + 0.5 * h * (g.nodes[i] + 1.0));
      out.weights.push_back(0.5 * h * g.weights[i]);
    }
  }
  return out;
}

SphereRule sphere_rule(int dimension, int count) {
  SphereRule rule;
  rule.dimension = dimension;
  count = std::max(count, 4);
  if (dimension == 1) {
    rule.directions = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (dimension == 2) {
    const double w = kTwoPi / count;
    for (int i = 0; i < count; ++i) {
      const double th = kTwoPi * i / count;
      Eigen::VectorXd d(2);
      d << std::cos(th), std::sin(th);
      rule.directions.push_back(d);
      rule.weights.push_back(w);
    }
    return rule;
  }
  if (dimension == 3) {
    const int polar = std::max(2, count / 2);
    const GaussRule& g = gauss_legendre(polar);
    for (int i = 0; i < polar; ++i) {
      const double mu = g.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      for (int j = 0; j < count; ++j) {
        const double ph = kTwoPi * j / count;
        Eigen::VectorXd d(3);
        d << s * std::cos(ph), s * std::sin(ph), mu;
        rule.directions.push_back(d);
        rule.weights.push_back(g.weights[i] * kTwoPi / count);
      }
    }
    return rule;
  }
  throw std::invalid_argument("sphere rules are implemented for dimensions 1, 2 and 3");
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("line fit needs matching samples, at least two");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

}  // namespace checkerdisc
