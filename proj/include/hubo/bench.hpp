#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hubo/cd.hpp"
#include "hubo/instance.hpp"
#include "hubo/sa.hpp"
#include "hubo/topology.hpp"

namespace hubo {
namespace bench {

struct Ratio {
  double value = 0.0;
  bool comparable = true;  // false when E and E_GS disagree in sign
};

/// Approximation ratio E / E_GS. Throws on E_GS == 0; a sign mismatch is
/// reported but flagged non-comparable.
Ratio approximation_ratio(double energy, double ground_energy);

/// Earliest trace time at which E / E_GS >= target. The trace's best energy
/// must be non-increasing.
std::optional<double> time_to_ratio(
    const std::vector<std::pair<double, double>>& trace, double target,
    double ground_energy);

/// Resample an event-granularity trace onto a fixed polling grid: one point
/// per tick k*interval carrying the best energy seen so far. Matches the
/// sampling discipline of ingested external-solver logs.
std::vector<std::pair<double, double>> poll_trace(
    const std::vector<std::pair<double, double>>& trace, double interval);

struct HardnessBands {
  // Nested counts: instances reaching at least each threshold.
  int at_least_0990 = 0;
  int at_least_0995 = 0;
  int at_least_0999 = 0;
  int optimal = 0;  // ratio == 1 within 1e-9
  int total = 0;
};

struct HardnessReport {
  std::vector<double> ratios;  // per instance
  HardnessBands bands;
};

/// Generator recipe shared by the screen and the suite: either topology-based
/// (patch + layout + sampler) or a random hypergraph at fixed size.
struct GeneratorConfig {
  std::string distribution = "cauchy";  // cauchy | pareto | constant
  double alpha = 2.0;
  std::optional<double> truncation;
  double constant_value = 1.0;
  // Topology route.
  bool use_topology = true;
  bool heron = false;
  int rows = 1, cols = 1;
  std::optional<int> crop_to;  // cut a connected n-qubit patch
  int s2q = 1, s3q = 1, swap_rounds = 1;
  // Random-hypergraph route (use_topology = false).
  int num_vars = 16, num_quad = 24, num_cubic = 16;

  CoefficientSampler sampler() const;
  // size overrides crop_to (topology route) or num_vars (random route),
  // letting one suite sweep a list of problem sizes.
  HuboInstance make_instance(std::uint64_t seed,
                             std::optional<int> size = {}) const;
  std::optional<LayoutPlan> make_layout(std::uint64_t seed,
                                        std::optional<int> size = {}) const;
};

/// SA ratio screening against the exact oracle at a fixed sweep budget,
/// mirroring the four-band histogram methodology.
HardnessReport hardness_screen(const GeneratorConfig& gen, int n_instances,
                               const sa::SaConfig& sa_cfg,
                               std::uint64_t master_seed,
                               int brute_force_cap = kDefaultBruteForceCap);

/// Per-instance, per-solver outcome row.
struct BenchRecord {
  std::string instance_id;
  int num_vars = 0;
  std::uint64_t seed = 0;
  std::string solver;
  int n_iter = -1;  // BF-DCQO only
  std::optional<double> ground_energy;
  bool ground_provable = false;
  double best_energy = 0.0;
  std::optional<double> ratio;
  bool ratio_comparable = true;
  double modeled_cpu_seconds = 0.0;
  double modeled_qpu_seconds = 0.0;
  double modeled_total_seconds = 0.0;
  double measured_seconds = 0.0;
  std::optional<double> time_to_target;  // modeled TT at the configured ratio target
  std::optional<double> enhancement;     // TT(reference) / TT(this)
};

struct SuiteConfig {
  GeneratorConfig generator;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<int> sizes;  // optional problem-size sweep; empty = one size
  // Solver budgets.
  bool run_sa = true;
  int sa_sweeps = 1000;
  int sa_runs = 10;
  int sa_workers = 1;
  bool run_bfdcqo = false;
  cd::BfDcqoConfig bfdcqo;
  // Metrics.
  double ratio_target = 1.0;
  std::string reference_solver;  // enhancement baseline, empty = none
  int brute_force_cap = kDefaultBruteForceCap;
  std::uint64_t master_seed = 0;
  bool write_artifacts = true;  // instance JSON, LP, warm start, traces
  // Reference optima ingested from an external exact solver, keyed by
  // instance id ("inst0", ...). Used when the size is beyond the brute-force
  // cap; failing that, the best energy across all solvers stands in and the
  // record is flagged non-provable.
  std::map<std::string, double> external_optima;

  static SuiteConfig from_toml_file(const std::string& path);
  static SuiteConfig from_toml(const std::string& text);
};

struct SuiteResult {
  std::vector<BenchRecord> records;
  std::string csv;
  nlohmann::json json;
};

/// Run every instance x solver combination, compute ratios and modeled
/// time-to-target, and render the comparison table. Deterministic for a
/// fixed config (byte-identical CSV/JSON across runs).
SuiteResult run_suite(const SuiteConfig& cfg,
                      const std::string& out_dir = "");

std::string records_to_csv(const std::vector<BenchRecord>& records);
nlohmann::json records_to_json(const std::vector<BenchRecord>& records);

/// Minimal TOML subset used for suite configs: [section] headers and
/// key = value pairs (strings, numbers, booleans, flat arrays). Comments
/// start with '#'.
class TomlLite {
 public:
  using Value = std::variant<std::string, double, bool,
                             std::vector<double>, std::vector<std::string>>;

  static TomlLite parse(const std::string& text);
  static TomlLite parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_number(const std::string& section, const std::string& key,
                    double fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  std::vector<double> get_numbers(const std::string& section,
                                  const std::string& key) const;

 private:
  std::map<std::string, std::map<std::string, Value>> sections_;
};

}  // namespace bench
}  // namespace hubo
