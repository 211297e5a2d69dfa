#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hubo/instance.hpp"
#include "hubo/topology.hpp"

namespace hubo {
namespace cd {

/// Mixer fields: H_m = sum_i hx_i X_i + sum_i hb_i Z_i. The transverse
/// component stays fixed across iterations (default -1 per qubit); the bias
/// component is updated from measurements.
struct MixerField {
  std::vector<double> hx;
  std::vector<double> hb;

  static MixerField uniform(int n, double hx_value = -1.0);
  int size() const { return static_cast<int>(hx.size()); }
};

/// R_y angles preparing the exact product ground state of the mixer,
/// qubit-wise: R_y(theta)|0> = (cos(theta/2), sin(theta/2)) is the minimal
/// eigenvector of hx X + hb Z. Per-qubit ground energy is
/// -sqrt(hx^2 + hb^2). Throws if both fields vanish on some qubit.
std::vector<double> prep_angles(const MixerField& f);

/// One rotation exp(-i angle P / 2) where P is a Pauli string with exactly
/// one Y and zero or more Z factors.
struct PauliRotation {
  int y_qubit = 0;
  std::vector<int> z_qubits;
  double angle = 0.0;

  std::string pauli_string() const;   // e.g. "YZZ" in qubit-list order
  std::vector<int> qubits() const;    // y first, then z's
};

enum class LayerKind { OneQubit, ThreeBody, TwoBody, Swap };

struct Layer {
  LayerKind kind = LayerKind::OneQubit;
  int first_gate = 0;  // index range into CdProgram::gates
  int gate_count = 0;
  std::vector<std::array<int, 2>> swap_pairs;  // Swap layers only
};

/// Ordered first-order counterdiabatic circuit. Per select round: one layer
/// of single-qubit Y rotations (first round only), the selected three-body
/// sets (each as 3 sub-layers of disjoint gates: Y on first/middle/last
/// position), the two-body sets (2 sub-layers), then a SWAP marker layer.
/// SWAP layers carry no gates; the simulation acts on logical labels, where
/// a SWAP is pure routing.
struct CdProgram {
  int num_qubits = 0;
  std::vector<PauliRotation> gates;
  std::vector<Layer> layers;

  std::string dump() const;  // one gate per line: pauli string, qubits, angle
};

/// Gate angles are gamma * coupling * hx at the Y position: single-qubit
/// terms use the problem linear field (gamma * h_i * hx_i), pair terms
/// gamma * J * hx at each end, triple terms gamma * K * hx at each position.
/// Every instance hyperedge must appear among the layout selections
/// (routing error otherwise); duplicated selections emit gates once, at the
/// first occurrence, with the accumulated coefficient.
CdProgram build_cd_program(const HuboInstance& inst, const MixerField& f,
                           const LayoutPlan& layout, double gamma);

/// 2^N complex amplitudes, qubit 0 = least significant bit.
struct StateVector {
  int num_qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector zero_state(int n);
  /// Product state with per-qubit amplitudes (cos(theta/2), sin(theta/2)).
  static StateVector product_state(const std::vector<double>& angles);
  double norm() const;
};

inline constexpr int kDefaultSimulatorCap = 24;

/// Apply exp(-i angle P / 2) for each gate in order. Norm-preserving.
void apply_rotation(StateVector& sv, const PauliRotation& gate);
StateVector simulate(const CdProgram& program, StateVector init,
                     int cap = kDefaultSimulatorCap);

/// Measurement outcomes in the computational basis.
struct ShotSet {
  int num_qubits = 0;
  std::map<std::uint64_t, int> counts;  // basis index -> multiplicity
  int total = 0;

  SpinConfig spin_of(std::uint64_t basis) const;
};

ShotSet sample_shots(const StateVector& sv, int n_shots, std::uint64_t seed);

/// Weighted ensemble of measured configurations.
struct Ensemble {
  struct Member {
    SpinConfig config;
    double energy = 0.0;
    int multiplicity = 1;
  };
  std::vector<Member> members;

  int total() const;
  double min_energy() const;
  double mean_energy() const;
};

Ensemble ensemble_from_shots(const ShotSet& shots, const HuboInstance& inst);

/// Keep the n_cvar lowest-energy outcomes (multiplicity expands to repeated
/// entries; ties broken by lexicographic bitstring).
Ensemble cvar_reduce(const Ensemble& ensemble, int n_cvar);

/// hb_i = sign * <s_i> over the (weighted) ensemble; |hb_i| <= 1.
std::vector<double> update_bias(const Ensemble& ensemble, double sign);

/// Zero-temperature descent from every member; energies never increase.
Ensemble post_process(const Ensemble& ensemble, const HuboInstance& inst,
                      int n_sweep_post, std::uint64_t seed);

struct BfDcqoConfig {
  int n_iter = 0;          // bias-field update iterations beyond the first
  int n_shots = 2000;
  int n_cvar = 100;
  int n_trot = 1;          // only single-step digitization is supported
  int pre_sweeps = 100;    // SA pre-processing budget
  int pre_runs = 10;
  int post_sweeps = 10;    // zero-temperature post-processing per iteration
  double gamma = kDefaultGamma;
  double bias_sign = -1.0; // hb = -<s> makes the mixer re-prepare measured spins
  double hx = -1.0;
  double flip_noise = 0.0; // independent bit-flip probability per qubit per
                           // gate layer, applied at sampling time
  std::uint64_t seed = 0;
  int sim_cap = kDefaultSimulatorCap;
  std::optional<double> ground_energy;  // enables the ratio trace

  // Effective CD angle default, picked by grid search on desk-scale
  // truncated-Cauchy instances (see README).
  static constexpr double kDefaultGamma = 0.25;
};

struct IterationTrace {
  double best_energy_so_far = 0.0;
  double iteration_best = 0.0;
  std::vector<double> bias_field;
  int distinct_outcomes = 0;
  double shots_min_energy = 0.0;
  double shots_mean_energy = 0.0;
  std::optional<double> ratio_so_far;
};

struct BfDcqoResult {
  SpinConfig best_spin;
  double best_energy = 0.0;
  double pre_energy = 0.0;  // SA pre-processing best
  std::vector<IterationTrace> iterations;
  double modeled_cpu_seconds = 0.0;
  double modeled_qpu_seconds = 0.0;
  double measured_seconds = 0.0;

  nlohmann::json to_json() const;
};

struct RuntimeModel {
  double cpu_seconds = 0.0;
  double qpu_seconds = 0.0;
  double total_seconds = 0.0;
};

inline constexpr double kDefaultShotSeconds = 1e-4;  // 10^4 shots per second

/// CPU: [pre_sweeps*pre_runs + n_cvar*(n_iter+1)*post_sweeps] * t_sweep.
/// QPU: (n_iter+1) * n_shots * t_shot.
RuntimeModel runtime_model(const BfDcqoConfig& cfg,
                           double seconds_per_sweep = 0.6e-5,
                           double seconds_per_shot = kDefaultShotSeconds);

/// Full loop: SA pre-processing seeds the bias field from its best bitstring,
/// then n_iter+1 rounds of prepare / evolve / measure / CVaR / zero-T
/// post-processing / bias update, tracking the best configuration overall.
BfDcqoResult run_bfdcqo(const HuboInstance& inst, const LayoutPlan& layout,
                        const BfDcqoConfig& cfg);

}  // namespace cd
}  // namespace hubo
