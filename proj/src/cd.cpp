#include "hubo/cd.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hubo/rng.hpp"
#include "hubo/sa.hpp"

namespace hubo {
namespace cd {

MixerField MixerField::uniform(int n, double hx_value) {
  MixerField f;
  f.hx.assign(n, hx_value);
  f.hb.assign(n, 0.0);
  return f;
}

std::vector<double> prep_angles(const MixerField& f) {
  if (f.hx.size() != f.hb.size())
    throw std::invalid_argument("mixer field length mismatch");
  std::vector<double> angles(f.hx.size());
  for (std::size_t i = 0; i < f.hx.size(); ++i) {
    const double hx = f.hx[i], hb = f.hb[i];
    if (hx == 0.0 && hb == 0.0)
      throw std::invalid_argument("degenerate mixer: both fields zero on qubit " +
                                  std::to_string(i));
    const double lam = std::hypot(hx, hb);
    // Minimal eigenvector of hx X + hb Z is proportional to (hx, -(hb+lam));
    // that vector vanishes only for hx = 0, hb < 0, where the ground state
    // is |0> itself.
    double theta;
    const double v0 = hx, v1 = -(hb + lam);
    if (v0 == 0.0 && v1 == 0.0) {
      theta = 0.0;
    } else {
      theta = 2.0 * std::atan2(v1, v0);
      if (theta > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
      if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
    }
    angles[i] = theta;
  }
  return angles;
}

std::string PauliRotation::pauli_string() const {
  std::string s = "Y";
  s.append(z_qubits.size(), 'Z');
  return s;
}

std::vector<int> PauliRotation::qubits() const {
  std::vector<int> q{y_qubit};
  q.insert(q.end(), z_qubits.begin(), z_qubits.end());
  return q;
}

std::string CdProgram::dump() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& g : gates) {
    out << g.pauli_string();
    for (int q : g.qubits()) out << " " << q;
    out << " " << g.angle << "\n";
  }
  return out.str();
}

namespace {

using Pair = std::array<int, 2>;
using Triple = std::array<int, 3>;

Pair canon(Pair p) {
  if (p[0] > p[1]) std::swap(p[0], p[1]);
  return p;
}

Triple canon(Triple t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

CdProgram build_cd_program(const HuboInstance& inst, const MixerField& f,
                           const LayoutPlan& layout, double gamma) {
  const int n = inst.num_vars();
  if (f.size() != n || layout.num_qubits != n)
    throw std::invalid_argument("instance, mixer and layout sizes disagree");

  CdProgram program;
  program.num_qubits = n;

  auto add_layer = [&](LayerKind kind) {
    program.layers.push_back({kind, static_cast<int>(program.gates.size()), 0, {}});
  };
  auto seal_layer = [&] {
    Layer& layer = program.layers.back();
    layer.gate_count = static_cast<int>(program.gates.size()) - layer.first_gate;
    if (layer.gate_count == 0 && layer.kind != LayerKind::Swap)
      program.layers.pop_back();
  };

  // Single-qubit CD terms, weight = problem linear field times hx.
  add_layer(LayerKind::OneQubit);
  for (int i = 0; i < n; ++i) {
    double h = 0.0;
    if (auto it = inst.linear_terms().find(i); it != inst.linear_terms().end())
      h = it->second;
    program.gates.push_back({i, {}, gamma * f.hx[i] * h});
  }
  seal_layer();

  std::map<Pair, double> pending_pairs(inst.quadratic_terms().begin(),
                                       inst.quadratic_terms().end());
  std::map<Triple, double> pending_triples(inst.cubic_terms().begin(),
                                           inst.cubic_terms().end());

  for (int round = 0; round < layout.params.swap_rounds; ++round) {
    // Three-body sets first; SWAP layers can then absorb two-body gates.
    for (const auto& set : layout.chosen_three_body[round]) {
      std::vector<std::pair<Triple, double>> fresh;
      for (const auto& t : set) {
        auto it = pending_triples.find(canon(t));
        if (it == pending_triples.end()) continue;  // emitted at an earlier occurrence
        fresh.push_back(*it);
        pending_triples.erase(it);
      }
      if (fresh.empty()) continue;
      for (int pos = 0; pos < 3; ++pos) {
        add_layer(LayerKind::ThreeBody);
        for (const auto& [t, k] : fresh) {
          const int y = t[pos];
          std::vector<int> zs;
          for (int j = 0; j < 3; ++j)
            if (j != pos) zs.push_back(t[j]);
          program.gates.push_back({y, zs, gamma * f.hx[y] * k});
        }
        seal_layer();
      }
    }
    for (const auto& set : layout.chosen_two_body[round]) {
      std::vector<std::pair<Pair, double>> fresh;
      for (const auto& p : set) {
        auto it = pending_pairs.find(canon(p));
        if (it == pending_pairs.end()) continue;
        fresh.push_back(*it);
        pending_pairs.erase(it);
      }
      if (fresh.empty()) continue;
      for (int pos = 0; pos < 2; ++pos) {
        add_layer(LayerKind::TwoBody);
        for (const auto& [p, j] : fresh) {
          const int y = p[pos];
          program.gates.push_back({y, {p[1 - pos]}, gamma * f.hx[y] * j});
        }
        seal_layer();
      }
    }
    if (round < static_cast<int>(layout.swap_layers.size())) {
      add_layer(LayerKind::Swap);
      program.layers.back().swap_pairs = layout.swap_layers[round];
      seal_layer();
    }
  }

  if (!pending_pairs.empty() || !pending_triples.empty())
    throw std::runtime_error(
        "instance has hyperedges the layout cannot route (" +
        std::to_string(pending_pairs.size() + pending_triples.size()) +
        " unplaced)");
  return program;
}

StateVector StateVector::zero_state(int n) {
  StateVector sv;
  sv.num_qubits = n;
  sv.amps.assign(std::size_t{1} << n, {0.0, 0.0});
  sv.amps[0] = {1.0, 0.0};
  return sv;
}

StateVector StateVector::product_state(const std::vector<double>& angles) {
  const int n = static_cast<int>(angles.size());
  StateVector sv = zero_state(n);
  for (int i = 0; i < n; ++i) {
    const double c = std::cos(angles[i] / 2.0), s = std::sin(angles[i] / 2.0);
    const std::size_t block = std::size_t{1} << i;
    for (std::size_t b = 0; b < block; ++b) {
      const auto a = sv.amps[b];
      sv.amps[b] = a * c;
      sv.amps[b | block] = a * s;
    }
  }
  return sv;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

void apply_rotation(StateVector& sv, const PauliRotation& gate) {
  const std::uint64_t ybit = std::uint64_t{1} << gate.y_qubit;
  std::uint64_t zmask = 0;
  for (int z : gate.z_qubits) {
    if (z == gate.y_qubit)
      throw std::invalid_argument("Z factor collides with the Y qubit");
    zmask |= std::uint64_t{1} << z;
  }
  const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
  const std::uint64_t size = sv.amps.size();
  // exp(-i angle P / 2) couples b and b^ybit with a real rotation whose sign
  // is the parity of the Z bits (equal for both basis states of the pair).
  for (std::uint64_t b = 0; b < size; ++b) {
    if (b & ybit) continue;
    const std::uint64_t b1 = b | ybit;
    const double sp = (std::popcount(b & zmask) & 1) ? -s : s;
    const auto a0 = sv.amps[b];
    const auto a1 = sv.amps[b1];
    sv.amps[b] = c * a0 - sp * a1;
    sv.amps[b1] = sp * a0 + c * a1;
  }
}

StateVector simulate(const CdProgram& program, StateVector init, int cap) {
  if (program.num_qubits > cap)
    throw std::length_error("simulator capped at " + std::to_string(cap) +
                            " qubits, got " + std::to_string(program.num_qubits));
  if (init.num_qubits != program.num_qubits ||
      init.amps.size() != (std::size_t{1} << program.num_qubits))
    throw std::invalid_argument("state size does not match program");
  for (const auto& gate : program.gates) apply_rotation(init, gate);
  return init;
}

SpinConfig ShotSet::spin_of(std::uint64_t basis) const {
  SpinConfig s(num_qubits);
  for (int i = 0; i < num_qubits; ++i)
    s[i] = (basis >> i) & 1 ? -1 : +1;
  return s;
}

ShotSet sample_shots(const StateVector& sv, int n_shots, std::uint64_t seed) {
  if (n_shots < 0) throw std::invalid_argument("n_shots must be non-negative");
  std::vector<double> cumulative(sv.amps.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < sv.amps.size(); ++b) {
    acc += std::norm(sv.amps[b]);
    cumulative[b] = acc;
  }
  ShotSet shots;
  shots.num_qubits = sv.num_qubits;
  shots.total = n_shots;
  Rng rng(seed);
  for (int k = 0; k < n_shots; ++k) {
    const double u = rng.uniform01() * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::uint64_t b = it == cumulative.end()
                                ? cumulative.size() - 1
                                : static_cast<std::uint64_t>(it - cumulative.begin());
    ++shots.counts[b];
  }
  return shots;
}

int Ensemble::total() const {
  int t = 0;
  for (const auto& m : members) t += m.multiplicity;
  return t;
}

double Ensemble::min_energy() const {
  double e = members.front().energy;
  for (const auto& m : members) e = std::min(e, m.energy);
  return e;
}

double Ensemble::mean_energy() const {
  double sum = 0.0;
  int total = 0;
  for (const auto& m : members) {
    sum += m.energy * m.multiplicity;
    total += m.multiplicity;
  }
  return sum / total;
}

Ensemble ensemble_from_shots(const ShotSet& shots, const HuboInstance& inst) {
  Ensemble ens;
  ens.members.reserve(shots.counts.size());
  for (const auto& [basis, count] : shots.counts) {
    Ensemble::Member m;
    m.config = shots.spin_of(basis);
    m.energy = inst.energy(m.config);
    m.multiplicity = count;
    ens.members.push_back(std::move(m));
  }
  return ens;
}

Ensemble cvar_reduce(const Ensemble& ensemble, int n_cvar) {
  if (n_cvar < 1 || n_cvar > ensemble.total())
    throw std::invalid_argument("n_cvar must be in [1, total shots]");
  std::vector<const Ensemble::Member*> order;
  order.reserve(ensemble.members.size());
  for (const auto& m : ensemble.members) order.push_back(&m);
  std::sort(order.begin(), order.end(),
            [](const Ensemble::Member* a, const Ensemble::Member* b) {
              if (a->energy != b->energy) return a->energy < b->energy;
              return a->config.bits_less(b->config);
            });
  Ensemble reduced;
  int remaining = n_cvar;
  for (const auto* m : order) {
    if (remaining <= 0) break;
    const int take = std::min(remaining, m->multiplicity);
    reduced.members.push_back({m->config, m->energy, take});
    remaining -= take;
  }
  return reduced;
}

std::vector<double> update_bias(const Ensemble& ensemble, double sign) {
  if (ensemble.members.empty())
    throw std::invalid_argument("cannot update bias from an empty ensemble");
  const int n = static_cast<int>(ensemble.members.front().config.size());
  std::vector<double> hb(n, 0.0);
  int total = 0;
  for (const auto& m : ensemble.members) {
    total += m.multiplicity;
    for (int i = 0; i < n; ++i) hb[i] += m.multiplicity * static_cast<double>(m.config[i]);
  }
  for (double& v : hb) v = sign * v / total;
  return hb;
}

Ensemble post_process(const Ensemble& ensemble, const HuboInstance& inst,
                      int n_sweep_post, std::uint64_t seed) {
  Ensemble out;
  out.members.reserve(ensemble.members.size());
  for (std::size_t m = 0; m < ensemble.members.size(); ++m) {
    sa::SaConfig cfg;
    cfg.n_sweep = n_sweep_post;
    cfg.n_runs = 1;
    cfg.zero_temperature = true;
    cfg.seed = derive_stream(seed, m);
    cfg.initial_state = ensemble.members[m].config;
    const auto result = sa::anneal(inst, cfg);
    out.members.push_back({result.best_spin, result.best_energy,
                           ensemble.members[m].multiplicity});
  }
  return out;
}

RuntimeModel runtime_model(const BfDcqoConfig& cfg, double seconds_per_sweep,
                           double seconds_per_shot) {
  RuntimeModel rt;
  const double pre = static_cast<double>(cfg.pre_sweeps) * cfg.pre_runs;
  const double post =
      static_cast<double>(cfg.n_cvar) * (cfg.n_iter + 1) * cfg.post_sweeps;
  rt.cpu_seconds = (pre + post) * seconds_per_sweep;
  rt.qpu_seconds =
      static_cast<double>(cfg.n_iter + 1) * cfg.n_shots * seconds_per_shot;
  rt.total_seconds = rt.cpu_seconds + rt.qpu_seconds;
  return rt;
}

namespace {

// Independent bit flips applied to sampled outcomes; the per-layer
// probability compounds over the circuit's layers into a net flip chance
// (1 - (1-2p)^L) / 2 per qubit.
ShotSet apply_flip_noise(const ShotSet& shots, double per_layer_p, int layers,
                         std::uint64_t seed) {
  const double q = 0.5 * (1.0 - std::pow(1.0 - 2.0 * per_layer_p, layers));
  if (q <= 0.0) return shots;
  ShotSet noisy;
  noisy.num_qubits = shots.num_qubits;
  noisy.total = shots.total;
  Rng rng(seed);
  for (const auto& [basis, count] : shots.counts)
    for (int k = 0; k < count; ++k) {
      std::uint64_t b = basis;
      for (int i = 0; i < shots.num_qubits; ++i)
        if (rng.uniform01() < q) b ^= std::uint64_t{1} << i;
      ++noisy.counts[b];
    }
  return noisy;
}

}  // namespace

nlohmann::json BfDcqoResult::to_json() const {
  nlohmann::json j;
  j["best_energy"] = best_energy;
  j["best_bitstring"] = best_spin.bitstring();
  j["pre_energy"] = pre_energy;
  j["modeled_cpu_seconds"] = modeled_cpu_seconds;
  j["modeled_qpu_seconds"] = modeled_qpu_seconds;
  j["modeled_total_seconds"] = modeled_cpu_seconds + modeled_qpu_seconds;
  j["measured_seconds"] = measured_seconds;
  auto iters = nlohmann::json::array();
  for (const auto& it : iterations) {
    nlohmann::json entry;
    entry["best_energy"] = it.best_energy_so_far;
    entry["iteration_best"] = it.iteration_best;
    entry["bias_field"] = it.bias_field;
    entry["shot_summary"] = {{"distinct", it.distinct_outcomes},
                             {"min_energy", it.shots_min_energy},
                             {"mean_energy", it.shots_mean_energy}};
    if (it.ratio_so_far) entry["ratio"] = *it.ratio_so_far;
    iters.push_back(std::move(entry));
  }
  j["iterations"] = std::move(iters);
  return j;
}

BfDcqoResult run_bfdcqo(const HuboInstance& inst, const LayoutPlan& layout,
                        const BfDcqoConfig& cfg) {
  if (cfg.n_trot != 1)
    throw std::invalid_argument("only single-step digitization is supported");
  if (cfg.n_iter < 0) throw std::invalid_argument("n_iter must be >= 0");
  if (cfg.n_cvar > cfg.n_shots)
    throw std::invalid_argument("n_cvar cannot exceed n_shots");
  const int n = inst.num_vars();
  if (n > cfg.sim_cap)
    throw std::length_error("instance exceeds the simulator cap");

  const auto t0 = std::chrono::steady_clock::now();
  BfDcqoResult result;

  sa::SaConfig pre;
  pre.n_sweep = cfg.pre_sweeps;
  pre.n_runs = cfg.pre_runs;
  pre.seed = derive_stream(cfg.seed, 1);
  const auto pre_result = sa::anneal(inst, pre);
  result.pre_energy = pre_result.best_energy;
  result.best_energy = pre_result.best_energy;
  result.best_spin = pre_result.best_spin;

  MixerField field = MixerField::uniform(n, cfg.hx);
  for (int i = 0; i < n; ++i)
    field.hb[i] = cfg.bias_sign * pre_result.best_spin[i];

  for (int iter = 0; iter <= cfg.n_iter; ++iter) {
    const auto angles = prep_angles(field);
    auto sv = StateVector::product_state(angles);
    const auto program = build_cd_program(inst, field, layout, cfg.gamma);
    sv = simulate(program, std::move(sv), cfg.sim_cap);
    auto shots = sample_shots(sv, cfg.n_shots, derive_stream(cfg.seed, 100 + iter));
    if (cfg.flip_noise > 0.0)
      shots = apply_flip_noise(shots, cfg.flip_noise,
                               static_cast<int>(program.layers.size()),
                               derive_stream(cfg.seed, 200 + iter));
    const auto ensemble = ensemble_from_shots(shots, inst);
    const auto reduced = cvar_reduce(ensemble, std::min(cfg.n_cvar, shots.total));
    const auto refined =
        post_process(reduced, inst, cfg.post_sweeps, derive_stream(cfg.seed, 300 + iter));

    IterationTrace trace;
    trace.bias_field = field.hb;
    trace.distinct_outcomes = static_cast<int>(ensemble.members.size());
    trace.shots_min_energy = ensemble.min_energy();
    trace.shots_mean_energy = ensemble.mean_energy();
    trace.iteration_best = refined.min_energy();
    for (const auto& m : refined.members) {
      if (m.energy < result.best_energy ||
          (m.energy == result.best_energy && m.config.bits_less(result.best_spin))) {
        result.best_energy = m.energy;
        result.best_spin = m.config;
      }
    }
    trace.best_energy_so_far = result.best_energy;
    if (cfg.ground_energy)
      trace.ratio_so_far = result.best_energy / *cfg.ground_energy;
    result.iterations.push_back(std::move(trace));

    field.hb = update_bias(refined, cfg.bias_sign);
  }

  const auto rt = runtime_model(cfg);
  result.modeled_cpu_seconds = rt.cpu_seconds;
  result.modeled_qpu_seconds = rt.qpu_seconds;
  const auto t1 = std::chrono::steady_clock::now();
  result.measured_seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

}  // namespace cd
}  // namespace hubo
