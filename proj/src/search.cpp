#include "checkerdisc/search.hpp"

#include "checkerdisc/io.hpp"
#include "checkerdisc/parallel.hpp"
#include "checkerdisc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace checkerdisc {

namespace {

struct Box {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] std::vector<double> grid(double step) const {
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }

  [[nodiscard]] double clamp(double v) const { return std::clamp(v, lo, hi); }
};

struct Candidate {
  std::size_t radius_index = 0;
  Vec2 center = Vec2::Zero();
  double score = 0.0;
};

/// Scores every grid center for every radius box, keeps the best `keep`
/// (score descending, generation order on ties) and collects grid stats.
template <typename Score>
std::vector<Candidate> coarse_grid(const std::vector<double>& radii, const std::vector<Box>& boxes, double step,
                                   std::size_t keep, Score&& score, std::vector<GridStats>& stats,
                                   std::size_t& evaluations) {
  std::vector<Candidate> all;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const std::vector<double> xs = boxes[ri].grid(step);
    const std::size_t side = xs.size();
    // Row-major over (y, x); rows are the parallel unit.
    std::vector<std::vector<double>> rows(side);
    parallel_for(side, [&](std::size_t b) {
      rows[b].resize(side);
      for (std::size_t a = 0; a < side; ++a) rows[b][a] = score(ri, Vec2(xs[a], xs[b]));
    });
    GridStats gs;
    gs.radius = radii[ri];
    gs.centers = side * side;
    CompensatedSum squares;
    for (std::size_t b = 0; b < side; ++b) {
      for (std::size_t a = 0; a < side; ++a) {
        const double v = rows[b][a];
        gs.max_abs = std::max(gs.max_abs, std::abs(v));
        squares += v * v;
        all.push_back({ri, Vec2(xs[a], xs[b]), v});
      }
    }
    gs.rms = std::sqrt(squares.value() / static_cast<double>(gs.centers));
    stats.push_back(gs);
    evaluations += gs.centers;
  }
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  keep = std::min(keep, all.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double sa = std::abs(all[a].score);
                      const double sb = std::abs(all[b].score);
                      return sa != sb ? sa > sb : a < b;
                    });
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < keep; ++i) out.push_back(all[order[i]]);
  return out;
}

/// Compass search on the center maximizing |score|.
template <typename Score>
Candidate pattern_search(Candidate c, const Box& box, double step, double min_step, Score&& score,
                         std::size_t& evaluations) {
  const std::array<Vec2, 4> dirs = {Vec2(1, 0), Vec2(-1, 0), Vec2(0, 1), Vec2(0, -1)};
  while (step >= min_step) {
    bool improved = false;
    for (const Vec2& d : dirs) {
      const Vec2 trial(box.clamp(c.center.x() + step * d.x()), box.clamp(c.center.y() + step * d.y()));
      const double s = score(c.radius_index, trial);
      ++evaluations;
      if (std::abs(s) > std::abs(c.score)) {
        c.center = trial;
        c.score = s;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return c;
}

struct ArcEval {
  CellPartition partition;
  CircularRun run;
};

ArcEval evaluate_arc(const Coloring& f, const Circle& c) {
  ArcEval e;
  e.partition = partition_circle(c);
  e.run = best_circular_run(interval_contributions(f, c, e.partition));
  return e;
}

AngleWindow run_window(const CellPartition& p, const CircularRun& run) {
  if (p.empty() || run.length == 0) return {0.0, 0.0};
  if (run.length >= p.size()) return {p.front().theta_lo, p.front().theta_lo + kTwoPi};
  const std::size_t last = (run.first + run.length - 1) % p.size();
  double hi = p[last].theta_hi;
  if (last < run.first) hi += kTwoPi;
  return {p[run.first].theta_lo, hi};
}

/// Iterative max segment tree over nonnegative values.
class MaxTree {
 public:
  explicit MaxTree(const std::vector<double>& values) : size_(1) {
    while (size_ < values.size()) size_ *= 2;
    tree_.assign(2 * size_, -1.0);
    for (std::size_t i = 0; i < values.size(); ++i) tree_[size_ + i] = values[i];
    for (std::size_t i = size_ - 1; i >= 1; --i) tree_[i] = std::max(tree_[2 * i], tree_[2 * i + 1]);
  }

  void set(std::size_t i, double v) {
    i += size_;
    tree_[i] = v;
    for (i /= 2; i >= 1; i /= 2) tree_[i] = std::max(tree_[2 * i], tree_[2 * i + 1]);
  }

  [[nodiscard]] double max() const { return tree_[1]; }

  /// Leftmost index holding the maximum.
  [[nodiscard]] std::size_t argmax() const {
    std::size_t i = 1;
    while (i < size_) i = tree_[2 * i] >= tree_[2 * i + 1] ? 2 * i : 2 * i + 1;
    return i - size_;
  }

 private:
  std::size_t size_;
  std::vector<double> tree_;
};

struct Probe {
  double inv_sqrt_t = 1.0;
  std::vector<std::pair<std::size_t, double>> cells;  // (cell id, arc length)
};

std::vector<Probe> build_probes(Index n, const std::vector<double>& t_set, double step) {
  const Box box{0.0, static_cast<double>(n)};
  const std::vector<double> xs = box.grid(step);
  std::vector<std::pair<double, Vec2>> centers;
  for (double t : t_set)
    for (double y : xs)
      for (double x : xs) centers.push_back({t, Vec2(x, y)});
  std::vector<Probe> probes(centers.size());
  parallel_for(centers.size(), [&](std::size_t i) {
    const auto& [t, x] = centers[i];
    const Circle c{x, t};
    std::map<std::size_t, double> lengths;
    for (const CellInterval& iv : partition_circle(c)) {
      const Index j = iv.cell.x();
      const Index k = iv.cell.y();
      if (j < 0 || k < 0 || j >= n || k >= n) continue;
      lengths[static_cast<std::size_t>(k * n + j)] += t * iv.width();
    }
    probes[i].inv_sqrt_t = 1.0 / std::sqrt(t);
    probes[i].cells.assign(lengths.begin(), lengths.end());
  });
  return probes;
}

}  // namespace

CircularRun best_circular_run(const std::vector<double>& values) {
  const std::size_t m = values.size();
  CircularRun best;
  if (m == 0) return best;
  std::vector<double> prefix(2 * m + 1, 0.0);
  for (std::size_t k = 0; k < 2 * m; ++k) prefix[k + 1] = prefix[k] + values[k % m];
  for (double sign : {1.0, -1.0}) {
    // max over j of sign * (P[j] - P[i]) with j - m <= i < j.
    std::deque<std::size_t> window;
    for (std::size_t j = 1; j <= 2 * m; ++j) {
      const std::size_t fresh = j - 1;
      while (!window.empty() && sign * prefix[window.back()] > sign * prefix[fresh]) window.pop_back();
      window.push_back(fresh);
      while (window.front() + m < j) window.pop_front();
      const std::size_t i = window.front();
      if (i >= m) continue;
      const double sum = prefix[j] - prefix[i];
      if (std::abs(sum) > std::abs(best.sum) || best.length == 0) {
        best = {i, j - i, sum};
      }
    }
  }
  return best;
}

SearchResult max_circle(const Coloring& f, double t, bool containment, const SearchBudget& budget) {
  if (!(t > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(budget.grid_step > 0.0) || !(budget.min_step > 0.0)) throw std::invalid_argument("search steps must be positive");
  const double n = static_cast<double>(f.n());
  if (containment && n < 4.0 * t) {
    throw std::invalid_argument("containment needs n >= 4t (n = " + format_shortest(n) + ", t = " +
                                format_shortest(t) + ")");
  }
  const std::vector<double> radii = {t, 2.0 * t};
  std::vector<Box> boxes;
  for (double s : radii) boxes.push_back(containment ? Box{2.0 * t, n - 2.0 * t} : Box{-s, n + s});

  auto raw = [&](std::size_t ri, const Vec2& x) { return circle_discrepancy(f, Circle{x, radii[ri]}); };
  auto score = [&](std::size_t ri, const Vec2& x) { return raw(ri, x) / std::sqrt(radii[ri]); };

  SearchResult result;
  result.mode = containment ? "circle-contained" : "circle";
  const std::vector<Candidate> top = coarse_grid(radii, boxes, budget.grid_step,
                                                 static_cast<std::size_t>(std::max(1, budget.refine_top)), score,
                                                 result.grid, result.evaluations);
  std::vector<std::size_t> evals(top.size(), 0);
  const std::vector<Candidate> refined = parallel_map<Candidate>(top.size(), [&](std::size_t i) {
    return pattern_search(top[i], boxes[top[i].radius_index], 0.5 * budget.grid_step, budget.min_step, score,
                          evals[i]);
  });
  for (std::size_t e : evals) result.evaluations += e;
  Candidate best = refined.front();
  for (const Candidate& c : refined)
    if (std::abs(c.score) > std::abs(best.score)) best = c;

  result.circle = Circle{best.center, radii[best.radius_index]};
  result.window = AngleWindow{0.0, kTwoPi};
  result.value = circle_discrepancy(f, result.circle);
  result.score = std::abs(result.value) / std::sqrt(result.circle.radius);
  return result;
}

SearchResult max_arc(const Coloring& f, double t, const SearchBudget& budget) {
  if (!(t > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(budget.grid_step > 0.0) || !(budget.min_step > 0.0)) throw std::invalid_argument("search steps must be positive");
  const double n = static_cast<double>(f.n());
  const std::vector<double> radii = {t};
  const std::vector<Box> boxes = {Box{-t, n + t}};
  const double norm = 1.0 / std::sqrt(t);
  auto score = [&](std::size_t, const Vec2& x) { return evaluate_arc(f, Circle{x, t}).run.sum * norm; };

  SearchResult result;
  result.mode = "arc";
  const std::vector<Candidate> top = coarse_grid(radii, boxes, budget.grid_step,
                                                 static_cast<std::size_t>(std::max(1, budget.refine_top)), score,
                                                 result.grid, result.evaluations);
  std::vector<std::size_t> evals(top.size(), 0);
  const std::vector<Candidate> refined = parallel_map<Candidate>(top.size(), [&](std::size_t i) {
    return pattern_search(top[i], boxes[0], 0.5 * budget.grid_step, budget.min_step, score, evals[i]);
  });
  for (std::size_t e : evals) result.evaluations += e;
  Candidate best = refined.front();
  for (const Candidate& c : refined)
    if (std::abs(c.score) > std::abs(best.score)) best = c;

  result.circle = Circle{best.center, t};
  const ArcEval arc = evaluate_arc(f, result.circle);
  result.window = run_window(arc.partition, arc.run);
  result.value = circle_discrepancy(f, result.circle, result.window);
  result.score = std::abs(result.value) * norm;
  return result;
}

double probe_objective(const Coloring& f, const std::vector<double>& t_set, double probe_step) {
  const Box box{0.0, static_cast<double>(f.n())};
  const std::vector<double> xs = box.grid(probe_step);
  double best = 0.0;
  for (double t : t_set) {
    const std::vector<double> rows = parallel_map<double>(xs.size(), [&](std::size_t b) {
      double m = 0.0;
      for (double x : xs) m = std::max(m, std::abs(circle_discrepancy(f, Circle{Vec2(x, xs[b]), t})));
      return m;
    });
    for (double m : rows) best = std::max(best, m / std::sqrt(t));
  }
  return best;
}

AdversarialResult adversarial_search(Index n, const std::vector<double>& t_set, std::size_t iters, std::uint64_t seed,
                                     const AnnealSpec& spec) {
  if (n < 1) throw std::invalid_argument("coloring size must be positive");
  if (t_set.empty()) throw std::invalid_argument("radius set is empty");
  for (double t : t_set)
    if (!(t > 0.0)) throw std::invalid_argument("radii must be positive");
  if (!(spec.probe_step > 0.0) || !(spec.t0 >= 0.0) || !(spec.cooling > 0.0 && spec.cooling <= 1.0))
    throw std::invalid_argument("invalid annealing parameters");

  const Coloring start = generate_random(n, seed);
  AdversarialResult out{start, 0.0, 0.0, 0, {}};
  if (iters == 0) {
    out.initial_objective = out.objective = probe_objective(start, t_set, spec.probe_step);
    return out;
  }

  const std::vector<Probe> probes = build_probes(n, t_set, spec.probe_step);
  const auto cells = static_cast<std::size_t>(n * n);
  std::vector<std::vector<std::pair<std::size_t, double>>> touching(cells);
  for (std::size_t p = 0; p < probes.size(); ++p)
    for (const auto& [c, len] : probes[p].cells) touching[c].push_back({p, len});

  std::vector<int> z(cells);
  for (std::size_t c = 0; c < cells; ++c) z[c] = start.cell(static_cast<Index>(c) % n, static_cast<Index>(c) / n);
  std::vector<double> d(probes.size());
  for (std::size_t p = 0; p < probes.size(); ++p) {
    CompensatedSum acc;
    for (const auto& [c, len] : probes[p].cells) acc += z[c] * len;
    d[p] = acc.value();
  }
  std::vector<double> scores(probes.size());
  for (std::size_t p = 0; p < probes.size(); ++p) scores[p] = std::abs(d[p]) * probes[p].inv_sqrt_t;
  MaxTree tree(scores);

  auto flip = [&](std::size_t c) {
    const double delta = -2.0 * z[c];
    z[c] = -z[c];
    for (const auto& [p, len] : touching[c]) {
      d[p] += delta * len;
      tree.set(p, std::abs(d[p]) * probes[p].inv_sqrt_t);
    }
  };

  std::mt19937_64 rng(seed ^ 0x5DEECE66DULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any_cell(0, cells - 1);

  double current = tree.max();
  double best = current;
  std::vector<int> best_z = z;
  out.initial_objective = current;
  double temperature = spec.t0;
  for (std::size_t it = 0; it < iters; ++it) {
    std::size_t c;
    const auto& worst = probes[tree.argmax()].cells;
    if (unit(rng) < spec.focus && !worst.empty()) {
      c = worst[std::uniform_int_distribution<std::size_t>(0, worst.size() - 1)(rng)].first;
    } else {
      c = any_cell(rng);
    }
    flip(c);
    const double next = tree.max();
    const double delta = next - current;
    const bool accept = delta <= 0.0 || (temperature > 0.0 && unit(rng) < std::exp(-delta / temperature));
    if (accept) {
      current = next;
      ++out.accepted;
      out.trace.push_back(current);
      if (current < best) {
        best = current;
        best_z = z;
      }
    } else {
      flip(c);
    }
    temperature *= spec.cooling;
  }

  CellMatrix values(n, n);
  for (std::size_t c = 0; c < cells; ++c)
    values(static_cast<Index>(c) % n, static_cast<Index>(c) / n) = static_cast<std::int8_t>(best_z[c]);
  out.best = Coloring(values);
  out.objective = best;
  return out;
}

Coloring adversarial_coloring(Index n, const std::vector<double>& t_set, std::size_t iters, std::uint64_t seed,
                              const AnnealSpec& spec) {
  return adversarial_search(n, t_set, iters, seed, spec).best;
}

ScalingRecord scaling_experiment(const std::string& family_name, const ColoringFamily& family,
                                 const std::vector<double>& t_list, const ScalingSpec& spec, std::uint64_t seed) {
  if (t_list.size() < 4) throw std::invalid_argument("scaling needs at least four radii");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] > 0.0)) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(t_list[i] > t_list[i - 1])) throw std::invalid_argument("radii must increase");
  }
  if (!(spec.n_over_t > 0.0)) throw std::invalid_argument("n/t ratio must be positive");
  ScalingRecord rec;
  rec.family = family_name;
  rec.mode = spec.mode;
  rec.n_over_t = spec.n_over_t;
  std::size_t used = 0;
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    const double t = t_list[i];
    const double size = spec.mode == ScalingMode::arc ? spec.n_over_t * t : spec.n_over_t * t * t;
    const Index n = std::max<Index>(1, static_cast<Index>(std::ceil(size - 1e-9)));
    const double side = spec.mode == ScalingMode::arc ? static_cast<double>(n) + 2.0 * t : static_cast<double>(n) - 4.0 * t;
    const double per_axis = std::floor(std::max(0.0, side) / spec.search.grid_step) + 1.0;
    const auto estimate = static_cast<std::size_t>(per_axis * per_axis * (spec.mode == ScalingMode::arc ? 1.0 : 2.0));
    if (spec.max_evaluations > 0 && used + estimate > spec.max_evaluations) {
      rec.partial = true;
      break;
    }
    ScalingPoint pt;
    pt.t = t;
    pt.n = n;
    pt.seed = seed + i;
    const Coloring f = family(n, pt.seed);
    pt.witness = spec.mode == ScalingMode::arc ? max_arc(f, t, spec.search) : max_circle(f, t, true, spec.search);
    pt.witness.seed = pt.seed;
    used += pt.witness.evaluations;
    rec.points.push_back(pt);
  }
  if (rec.points.size() >= 4) {
    std::vector<double> x, y;
    for (const ScalingPoint& p : rec.points) {
      x.push_back(std::log(p.t));
      y.push_back(std::log(std::abs(p.witness.value)));
    }
    const LineFit fit = fit_line(x, y);
    rec.slope = fit.slope;
    rec.slope_stderr = fit.slope_stderr;
    rec.band_lo = fit.slope - 2.0 * fit.slope_stderr;
    rec.band_hi = fit.slope + 2.0 * fit.slope_stderr;
    rec.fitted = true;
  }
  return rec;
}

std::string search_csv_header() { return "t,mode,score,center_x,center_y,theta_lo,theta_hi,seed"; }

std::string search_csv_row(double t, const SearchResult& r) {
  return format_shortest(t) + "," + r.mode + "," + format_shortest(r.score) + "," + format_shortest(r.circle.center.x()) +
         "," + format_shortest(r.circle.center.y()) + "," + format_shortest(r.window.lo) + "," +
         format_shortest(r.window.hi) + "," + std::to_string(r.seed);
}

}  // namespace checkerdisc
