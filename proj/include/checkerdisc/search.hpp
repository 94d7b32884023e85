#pragma once

#include "checkerdisc/coloring.hpp"
#include "checkerdisc/geometry.hpp"
#include "checkerdisc/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace checkerdisc {

struct SearchBudget {
  /// Initial center grid step (cells).
  double grid_step = 0.25;
  /// Grid candidates refined by pattern search.
  int refine_top = 8;
  /// Pattern search stops once its step falls below this.
  double min_step = 1e-3;
};

/// Per-radius statistics of the coarse center grid.
struct GridStats {
  double radius = 0.0;
  std::size_t centers = 0;
  double max_abs = 0.0;
  double rms = 0.0;
};

struct SearchResult {
  std::string mode;
  Circle circle;
  AngleWindow window;
  /// Signed discrepancy of the witness, re-evaluated after the search.
  double value = 0.0;
  /// |value| / sqrt(radius).
  double score = 0.0;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  std::vector<GridStats> grid;
};

/// Best circle of radius t or 2t by |D| / sqrt(radius). With containment the
/// centers are confined to [2t, n - 2t]^2 (both radii then stay inside
/// [0, n]^2); otherwise radius s uses centers in [-s, n + s]^2. Throws
/// std::invalid_argument when containment is requested with n < 4t.
SearchResult max_circle(const Coloring& f, double t, bool containment, const SearchBudget& budget = {});

/// Best arc of radius t over centers in [-t, n + t]^2. At each center the
/// window is the contiguous run of partition intervals of largest |sum|.
SearchResult max_arc(const Coloring& f, double t, const SearchBudget& budget = {});

/// Largest |sum| over circular runs of `values` of length 1..size. Returns
/// (first index, run length, signed sum).
struct CircularRun {
  std::size_t first = 0;
  std::size_t length = 0;
  double sum = 0.0;
};

CircularRun best_circular_run(const std::vector<double>& values);

struct AnnealSpec {
  /// Initial temperature; zero gives greedy descent.
  double t0 = 0.05;
  double cooling = 0.999;
  /// Probe centers: step and extent ([0, n]^2).
  double probe_step = 0.5;
  /// Probability of flipping a cell on the current worst probe.
  double focus = 0.75;
};

struct AdversarialResult {
  Coloring best;
  double initial_objective = 0.0;
  double objective = 0.0;
  std::size_t accepted = 0;
  /// Objective after every accepted move.
  std::vector<double> trace;
};

/// Simulated annealing over single-cell flips starting from
/// generate_random(n, seed), minimizing max over t in t_set and probe
/// centers x of |D_t(f, x)| / sqrt(t).
AdversarialResult adversarial_search(Index n, const std::vector<double>& t_set, std::size_t iters, std::uint64_t seed,
                                     const AnnealSpec& spec = {});

Coloring adversarial_coloring(Index n, const std::vector<double>& t_set, std::size_t iters, std::uint64_t seed,
                              const AnnealSpec& spec = {});

/// Objective used by the annealer for an arbitrary coloring.
double probe_objective(const Coloring& f, const std::vector<double>& t_set, double probe_step);

enum class ScalingMode { circle, arc };

struct ScalingPoint {
  double t = 0.0;
  Index n = 0;
  std::uint64_t seed = 0;
  SearchResult witness;
};

struct ScalingRecord {
  std::string family;
  ScalingMode mode = ScalingMode::arc;
  double n_over_t = 1.0;
  std::vector<ScalingPoint> points;
  /// Log-log slope of max |D| against t, and slope +- 2 standard errors.
  double slope = 0.0;
  double slope_stderr = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  bool fitted = false;
  /// Set when the evaluation budget ran out before every t was processed.
  bool partial = false;
};

using ColoringFamily = std::function<Coloring(Index n, std::uint64_t seed)>;

struct ScalingSpec {
  ScalingMode mode = ScalingMode::arc;
  /// Arc mode: n = ceil(n_over_t * t). Circle mode: n = ceil(n_over_t * t^2)
  /// with containment.
  double n_over_t = 1.0;
  SearchBudget search;
  /// Cap on circle evaluations across the experiment; 0 means unlimited.
  std::size_t max_evaluations = 0;
};

ScalingRecord scaling_experiment(const std::string& family_name, const ColoringFamily& family,
                                 const std::vector<double>& t_list, const ScalingSpec& spec, std::uint64_t seed);

/// "t,mode,score,center_x,center_y,theta_lo,theta_hi,seed"
std::string search_csv_header();
std::string search_csv_row(double t, const SearchResult& r);

}  // namespace checkerdisc
