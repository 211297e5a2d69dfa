#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hubo/instance.hpp"

namespace hubo {
namespace sa {

struct SaConfig {
  int n_sweep = 1000;
  int n_runs = 1;
  double t_final_ratio = 0.01;  // T_final = ratio * T_init
  std::uint64_t seed = 0;
  bool zero_temperature = false;
  std::optional<SpinConfig> initial_state;
  int num_workers = 1;
  bool collect_stats = false;
  // When > 0, re-evaluate the running energy from scratch every k accepted
  // flips and fail loudly on drift beyond 1e-9. Debug aid.
  int check_every = 0;
};

struct RunBest {
  double energy = 0.0;
  SpinConfig config;
};

struct SaResult {
  SpinConfig best_spin;
  double best_energy = 0.0;
  std::vector<RunBest> per_run_best;
  long long sweep_count_executed = 0;
  bool degenerate_schedule = false;  // all-zero instance, T_init fell back to 1
  // Filled when collect_stats is set.
  long long proposed = 0;
  long long accepted = 0;
  // Modeled-time improvement trace across the (sequentialized) runs:
  // (modeled seconds, best energy so far). Event granularity.
  std::vector<std::pair<double, double>> trace;
};

/// Upper bound on the largest single-flip energy change:
///   max_i 2 (|h_i| + sum |J_i.| + sum |K_i..|).
/// Returns 0 for the all-zero instance; anneal() substitutes 1 in that case.
double initial_temperature(const HuboInstance& inst);

/// Geometric sequence from t_init to t_final inclusive, one value per sweep.
std::vector<double> geometric_schedule(double t_init, double t_final, int n_sweep);

/// Metropolis annealing over n_runs independent chains. Within a sweep the
/// spins are visited in a fresh random permutation; a flip is accepted when
/// dE <= 0, otherwise with probability exp(-dE/T). The zero-temperature
/// variant accepts strictly lowering moves only. Per-run seeds derive from
/// cfg.seed by run index and the cross-run reduction is ordered, so results
/// do not depend on num_workers.
SaResult anneal(const HuboInstance& inst, const SaConfig& cfg);

inline constexpr double kDefaultSweepSeconds = 0.6e-5;

/// Modeled CPU time: n_sweep * n_runs * seconds_per_sweep.
double cpu_time_model(long long n_sweep, long long n_runs,
                      double seconds_per_sweep = kDefaultSweepSeconds);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

/// Ordinary least squares y = slope * x + intercept. Throws on fewer than
/// two distinct x values.
LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

struct CalibrationResult {
  double t_sweep = 0.0;   // seconds per sweep
  double t_offset = 0.0;  // setup overhead, seconds
  double r_squared = 0.0;
  std::vector<double> sweep_counts;
  std::vector<double> mean_seconds;
};

/// Measure zero-temperature run wall time over `sweep_grid` (each point
/// averaged over runs_per_point) and fit T_avg = t_sweep * n + t_offset.
/// The grid must span at least two decades.
CalibrationResult calibrate_sweep_time(const HuboInstance& inst,
                                       const std::vector<int>& sweep_grid,
                                       int runs_per_point,
                                       std::uint64_t seed = 0);

}  // namespace sa
}  // namespace hubo
