#pragma once

#include "checkerdisc/parallel.hpp"
#include "checkerdisc/types.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace checkerdisc {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre rule on [a, b] split into panels no wider than
/// max_panel.
struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

CompositeRule composite_gauss(double a, double b, double max_panel, int order);

/// Radial breakpoints 0 <= b_0 < b_1 < ... < b_m. Segment s is [b_s, b_{s+1}].
struct RadialGrid {
  std::vector<double> breaks;
  double max_panel = 0.05;
  int order = 8;
};

/// Directions on S^{d-1} with weights summing to the sphere's measure.
/// d = 2: `count` equally spaced angles. d = 3: Gauss-Legendre in cos(theta)
/// with count/2 nodes times `count` equally spaced azimuths.
struct SphereRule {
  int dimension = 2;
  std::vector<Eigen::VectorXd> directions;
  std::vector<double> weights;
};

SphereRule sphere_rule(int dimension, int count);

/// Integrals over the shells b_s <= |x| <= b_{s+1} in R^d of a C-channel
/// integrand fn(x) (x an Eigen::VectorXd of size d). angular(r) gives the
/// sphere-rule size used at radius r. Deterministic for any worker count.
template <std::size_t C, typename AngularCount, typename Fn>
std::vector<std::array<double, C>> shell_integrals(const RadialGrid& grid, int dimension, AngularCount&& angular,
                                                   Fn&& fn) {
  if (grid.breaks.size() < 2) throw std::invalid_argument("radial grid needs at least two breakpoints");
  struct Node {
    double r;
    double w;
    std::size_t segment;
  };
  std::vector<Node> nodes;
  for (std::size_t s = 0; s + 1 < grid.breaks.size(); ++s) {
    const CompositeRule rule = composite_gauss(grid.breaks[s], grid.breaks[s + 1], grid.max_panel, grid.order);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) nodes.push_back({rule.nodes[i], rule.weights[i], s});
  }

  std::map<int, SphereRule> rules;
  std::vector<const SphereRule*> node_rule(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int count = ((angular(nodes[i].r) + 31) / 32) * 32;
    auto it = rules.find(count);
    if (it == rules.end()) it = rules.emplace(count, sphere_rule(dimension, count)).first;
    node_rule[i] = &it->second;
  }

  std::vector<std::array<double, C>> per_node(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const Node& node = nodes[i];
    const SphereRule& sphere = *node_rule[i];
    std::array<CompensatedSum, C> acc{};
    Eigen::VectorXd x(dimension);
    for (std::size_t a = 0; a < sphere.directions.size(); ++a) {
      x = node.r * sphere.directions[a];
      const std::array<double, C> v = fn(x);
      for (std::size_t c = 0; c < C; ++c) acc[c] += sphere.weights[a] * v[c];
    }
    const double jac = std::pow(node.r, dimension - 1) * node.w;
    for (std::size_t c = 0; c < C; ++c) per_node[i][c] = jac * acc[c].value();
  });

  std::vector<std::array<CompensatedSum, C>> acc(grid.breaks.size() - 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t c = 0; c < C; ++c) acc[nodes[i].segment][c] += per_node[i][c];
  }
  std::vector<std::array<double, C>> out(acc.size());
  for (std::size_t s = 0; s < acc.size(); ++s)
    for (std::size_t c = 0; c < C; ++c) out[s][c] = acc[s][c].value();
  return out;
}

/// Least-squares slope of y on x, with its standard error.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace checkerdisc
