#include "hubo/sa.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hubo/rng.hpp"

namespace hubo {
namespace sa {

double initial_temperature(const HuboInstance& inst) {
  double t = 0.0;
  for (int i = 0; i < inst.num_vars(); ++i)
    t = std::max(t, inst.max_flip_delta(i));
  return t;
}

std::vector<double> geometric_schedule(double t_init, double t_final, int n_sweep) {
  if (n_sweep < 1) throw std::invalid_argument("n_sweep must be >= 1");
  if (!(t_init >= t_final) || !(t_final > 0.0))
    throw std::invalid_argument("need t_init >= t_final > 0");
  std::vector<double> temps(n_sweep);
  if (n_sweep == 1) {
    temps[0] = t_init;
    return temps;
  }
  const double ratio = std::pow(t_final / t_init, 1.0 / (n_sweep - 1));
  double t = t_init;
  for (int k = 0; k < n_sweep; ++k) {
    temps[k] = t;
    t *= ratio;
  }
  temps.back() = t_final;  // pin the endpoint against pow drift
  return temps;
}

namespace {

struct ChainOutcome {
  RunBest best;
  long long proposed = 0;
  long long accepted = 0;
  std::vector<std::pair<long long, double>> events;  // (sweep index, best energy)
};

ChainOutcome run_chain(const HuboInstance& inst, const SaConfig& cfg,
                       const std::vector<double>& temps, std::uint64_t run_seed) {
  const int n = inst.num_vars();
  Rng rng(run_seed);

  SpinConfig s;
  if (cfg.initial_state) {
    s = *cfg.initial_state;
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("initial state length mismatch");
  } else {
    s = SpinConfig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[i] = rng.coin() ? +1 : -1;
  }

  double energy = inst.energy(s);
  ChainOutcome out;
  out.best = {energy, s};
  out.events.push_back({0, energy});

  std::vector<int> visit(n);
  std::iota(visit.begin(), visit.end(), 0);
  long long flips_since_check = 0;

  for (int sweep = 0; sweep < cfg.n_sweep; ++sweep) {
    const double temp = cfg.zero_temperature ? 0.0 : temps[sweep];
    rng.shuffle(visit);
    for (int i : visit) {
      const double d_e = inst.flip_delta(s, i);
      ++out.proposed;
      bool accept;
      if (cfg.zero_temperature) {
        accept = d_e < 0.0;  // strict: plateaus terminate
      } else {
        accept = d_e <= 0.0 || rng.uniform01() < std::exp(-d_e / temp);
      }
      if (!accept) continue;
      ++out.accepted;
      s.flip(i);
      energy += d_e;
      if (cfg.check_every > 0 && ++flips_since_check >= cfg.check_every) {
        flips_since_check = 0;
        const double fresh = inst.energy(s);
        if (std::abs(fresh - energy) > 1e-9)
          throw std::runtime_error("incremental energy drifted from full evaluation");
        energy = fresh;
      }
      if (energy < out.best.energy) {
        out.best = {energy, s};
        out.events.push_back({sweep + 1, energy});
      }
    }
  }
  return out;
}

}  // namespace

SaResult anneal(const HuboInstance& inst, const SaConfig& cfg) {
  if (cfg.n_sweep < 1 || cfg.n_runs < 1)
    throw std::invalid_argument("n_sweep and n_runs must be >= 1");
  if (!(cfg.t_final_ratio > 0.0) || cfg.t_final_ratio > 1.0)
    throw std::invalid_argument("t_final_ratio must be in (0, 1]");

  SaResult result;
  double t_init = initial_temperature(inst);
  if (t_init == 0.0) {
    // All-zero instance; any schedule is optimal.
    t_init = 1.0;
    result.degenerate_schedule = true;
  }
  const std::vector<double> temps =
      geometric_schedule(t_init, cfg.t_final_ratio * t_init, cfg.n_sweep);

  std::vector<ChainOutcome> outcomes(cfg.n_runs);
  auto worker = [&](int run) {
    outcomes[run] = run_chain(inst, cfg, temps, derive_stream(cfg.seed, run));
  };
  const int workers = std::max(1, cfg.num_workers);
  if (workers == 1) {
    for (int run = 0; run < cfg.n_runs; ++run) worker(run);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, cfg.n_runs); ++w)
      pool.emplace_back([&] {
        for (int run = next.fetch_add(1); run < cfg.n_runs; run = next.fetch_add(1))
          worker(run);
      });
    for (auto& t : pool) t.join();
  }

  // Ordered reduction: the outcome is identical for any worker count.
  result.per_run_best.reserve(cfg.n_runs);
  for (int run = 0; run < cfg.n_runs; ++run) {
    const ChainOutcome& out = outcomes[run];
    result.per_run_best.push_back(out.best);
    result.proposed += out.proposed;
    result.accepted += out.accepted;
    if (run == 0 || out.best.energy < result.best_energy) {
      result.best_energy = out.best.energy;
      result.best_spin = out.best.config;
    }
  }
  result.sweep_count_executed =
      static_cast<long long>(cfg.n_sweep) * cfg.n_runs;

  // Improvement trace with runs laid out back to back in modeled time.
  double best_so_far = outcomes[0].events.front().second;
  bool first = true;
  for (int run = 0; run < cfg.n_runs; ++run) {
    const double base = static_cast<double>(run) * cfg.n_sweep;
    for (const auto& [sweep, e] : outcomes[run].events) {
      if (first || e < best_so_far) {
        best_so_far = e;
        first = false;
        result.trace.push_back(
            {(base + static_cast<double>(sweep)) * kDefaultSweepSeconds, e});
      }
    }
  }
  return result;
}

double cpu_time_model(long long n_sweep, long long n_runs,
                      double seconds_per_sweep) {
  if (n_sweep < 0 || n_runs < 0)
    throw std::invalid_argument("counts must be non-negative");
  return static_cast<double>(n_sweep) * static_cast<double>(n_runs) *
         seconds_per_sweep;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("need at least two points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("degenerate grid: all x equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

CalibrationResult calibrate_sweep_time(const HuboInstance& inst,
                                       const std::vector<int>& sweep_grid,
                                       int runs_per_point, std::uint64_t seed) {
  if (sweep_grid.size() < 2)
    throw std::invalid_argument("sweep grid needs at least two points");
  const auto [lo, hi] = std::minmax_element(sweep_grid.begin(), sweep_grid.end());
  if (*lo < 1 || *hi < 100 * *lo)
    throw std::invalid_argument("sweep grid must span at least two decades");
  if (runs_per_point < 1)
    throw std::invalid_argument("runs_per_point must be >= 1");

  CalibrationResult cal;
  for (std::size_t p = 0; p < sweep_grid.size(); ++p) {
    SaConfig cfg;
    cfg.n_sweep = sweep_grid[p];
    cfg.n_runs = 1;
    cfg.zero_temperature = true;
    double total = 0.0;
    for (int r = 0; r < runs_per_point; ++r) {
      cfg.seed = derive_stream(seed, p * 1000 + r);
      const auto t0 = std::chrono::steady_clock::now();
      anneal(inst, cfg);
      const auto t1 = std::chrono::steady_clock::now();
      total += std::chrono::duration<double>(t1 - t0).count();
    }
    cal.sweep_counts.push_back(static_cast<double>(sweep_grid[p]));
    cal.mean_seconds.push_back(total / runs_per_point);
  }
  const LinearFit fit = fit_line(cal.sweep_counts, cal.mean_seconds);
  cal.t_sweep = fit.slope;
  cal.t_offset = fit.intercept;
  cal.r_squared = fit.r_squared;
  return cal;
}

}  // namespace sa
}  // namespace hubo
