#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "hubo/cd.hpp"
#include "hubo/rng.hpp"
#include "hubo/sampler.hpp"
#include "oracles.hpp"

using namespace hubo;
using cd::MixerField;
using cd::StateVector;

namespace {

// 2x2 ground state of hx X + hb Z by direct diagonalization.
std::pair<std::vector<std::complex<double>>, double> mixer_ground(double hx,
                                                                  double hb) {
  const double lam = std::hypot(hx, hb);
  // eigenvector for eigenvalue -lam of [[hb, hx], [hx, -hb]]
  std::vector<std::complex<double>> v;
  if (std::abs(hb + lam) > std::abs(hx)) {
    v = {{hx, 0.0}, {-(hb + lam), 0.0}};
  } else if (hx != 0.0 || hb + lam != 0.0) {
    v = {{-(lam - hb), 0.0}, {hx, 0.0}};  // second row of (H + lam I)
  } else {
    v = {{1.0, 0.0}, {0.0, 0.0}};  // hx = 0, hb < 0
  }
  double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  v[0] /= norm;
  v[1] /= norm;
  return {v, -lam};
}

StateVector random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  StateVector sv = StateVector::zero_state(n);
  double norm2 = 0.0;
  for (auto& a : sv.amps) {
    a = {rng.uniform01() * 2.0 - 1.0, rng.uniform01() * 2.0 - 1.0};
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : sv.amps) a *= inv;
  return sv;
}

cd::CdProgram random_program(int n, int num_gates, std::uint64_t seed) {
  Rng rng(seed);
  cd::CdProgram program;
  program.num_qubits = n;
  program.layers.push_back({cd::LayerKind::OneQubit, 0, num_gates, {}});
  for (int g = 0; g < num_gates; ++g) {
    cd::PauliRotation gate;
    const int arity = 1 + static_cast<int>(rng.bounded(3));
    std::vector<int> qubits;
    while (static_cast<int>(qubits.size()) < arity) {
      const int q = static_cast<int>(rng.bounded(n));
      if (std::find(qubits.begin(), qubits.end(), q) == qubits.end())
        qubits.push_back(q);
    }
    gate.y_qubit = qubits[0];
    gate.z_qubits.assign(qubits.begin() + 1, qubits.end());
    gate.angle = (rng.uniform01() * 2.0 - 1.0) * 2.0 * std::numbers::pi;
    program.gates.push_back(gate);
  }
  return program;
}

std::vector<std::complex<double>> dense_reference(const cd::CdProgram& program,
                                                  const StateVector& init) {
  auto state = init.amps;
  for (const auto& gate : program.gates) {
    std::map<int, char> ops;
    ops[gate.y_qubit] = 'Y';
    for (int z : gate.z_qubits) ops[z] = 'Z';
    auto p = oracle::pauli_string_matrix(program.num_qubits, ops);
    // exp(-i angle P / 2) through the series-based exponential
    const std::complex<double> factor{0.0, -gate.angle / 2.0};
    for (auto& row : p)
      for (auto& v : row) v *= factor;
    state = oracle::apply(oracle::expm(p), state);
  }
  return state;
}

}  // namespace

TEST_CASE("prep angles: zero bias prepares the transverse ground state") {
  MixerField f = MixerField::uniform(2, -1.0);
  const auto angles = prep_angles(f);
  const auto sv = StateVector::product_state(angles);
  // ground of -X is |+>, so every amplitude is 1/2
  for (const auto& a : sv.amps) CHECK(std::abs(a - 0.5) < 1e-12);

  f.hx = {1.0, 1.0};
  const auto sv2 = StateVector::product_state(prep_angles(f));
  // ground of +X is |->: alternating signs with weight 1/2
  CHECK(std::abs(sv2.amps[0] - 0.5) < 1e-12);
  CHECK(std::abs(sv2.amps[1] + 0.5) < 1e-12);
  CHECK(std::abs(sv2.amps[3] - 0.5) < 1e-12);
}

TEST_CASE("prep angles: dominant bias pins the computational basis state") {
  MixerField f;
  f.hx = {-0.001};
  f.hb = {1000.0};
  const auto sv = StateVector::product_state(prep_angles(f));
  CHECK(std::abs(sv.amps[1]) > 0.999999);  // hb > 0 favours |1>
  f.hb = {-1000.0};
  const auto sv2 = StateVector::product_state(prep_angles(f));
  CHECK(std::abs(sv2.amps[0]) > 0.999999);
}

TEST_CASE("prep angles reach ground-state fidelity against diagonalization") {
  Rng rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const double hx = rng.uniform01() * 4.0 - 2.0;
    double hb = rng.uniform01() * 4.0 - 2.0;
    if (hx == 0.0 && hb == 0.0) hb = 0.5;
    MixerField f;
    f.hx = {hx};
    f.hb = {hb};
    const auto sv = StateVector::product_state(prep_angles(f));
    const auto [ground, energy] = mixer_ground(hx, hb);
    CHECK(oracle::fidelity(sv.amps, ground) >= 1.0 - 1e-12);
  }
}

TEST_CASE("prep angles match the closed-form arctangent up to convention") {
  // theta_impl = 2*atan(hx / (hb + sqrt(hb^2 + hx^2))) + pi modulo 2*pi and
  // a global sign; compare prepared states instead of raw angles.
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const double hx = rng.uniform01() * 2.0 + 0.1;
    const double hb = rng.uniform01() * 4.0 - 2.0;
    MixerField f;
    f.hx = {hx};
    f.hb = {hb};
    const double theta_closed =
        std::atan(hx / (hb + std::hypot(hx, hb)));
    const double equivalent = 2.0 * theta_closed + std::numbers::pi;
    const auto impl = StateVector::product_state(prep_angles(f));
    const auto closed = StateVector::product_state({equivalent});
    CHECK(oracle::fidelity(impl.amps, closed.amps) >= 1.0 - 1e-12);
  }
}

TEST_CASE("degenerate mixer is rejected") {
  MixerField f;
  f.hx = {0.0};
  f.hb = {0.0};
  CHECK_THROWS_AS(prep_angles(f), std::invalid_argument);
}

TEST_CASE("product state energy equals the qubit-wise ground energies") {
  Rng rng(15);
  const int n = 8;
  MixerField f;
  for (int i = 0; i < n; ++i) {
    f.hx.push_back(rng.uniform01() * 2.0 - 1.0 + 0.1);
    f.hb.push_back(rng.uniform01() * 2.0 - 1.0);
  }
  const auto sv = StateVector::product_state(prep_angles(f));
  // <H_m> via dense operators
  double expected = 0.0;
  std::vector<std::complex<double>> acc(sv.amps.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    auto x = oracle::pauli_string_matrix(n, {{i, 'X'}});
    auto z = oracle::pauli_string_matrix(n, {{i, 'Z'}});
    const auto xv = oracle::apply(x, sv.amps);
    const auto zv = oracle::apply(z, sv.amps);
    for (std::size_t b = 0; b < acc.size(); ++b)
      acc[b] += f.hx[i] * xv[b] + f.hb[i] * zv[b];
    expected -= std::hypot(f.hx[i], f.hb[i]);
  }
  std::complex<double> mixer_energy = 0.0;
  for (std::size_t b = 0; b < acc.size(); ++b)
    mixer_energy += std::conj(sv.amps[b]) * acc[b];
  CHECK(mixer_energy.real() == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::abs(mixer_energy.imag()) < 1e-9);
}

TEST_CASE("zero-coupling instance builds a zero-angle program") {
  HuboInstance inst(5);  // no terms at all
  LayoutParams params{1, 1, 1, 3};
  const auto map = crop(heavy_hex(1, 1), 5);
  const auto layout = generate_layout(map, params);
  const auto program =
      build_cd_program(inst, MixerField::uniform(5), layout, 0.7);
  for (const auto& g : program.gates) CHECK(g.angle == 0.0);
  const auto init = random_state(5, 4);
  const auto out = simulate(program, init);
  for (std::size_t b = 0; b < init.amps.size(); ++b)
    CHECK(std::abs(out.amps[b] - init.amps[b]) < 1e-12);
}

TEST_CASE("a single pair term emits YZ and ZY rotations") {
  HuboInstance inst(2);
  inst.add_quadratic(0, 1, 0.8);
  CouplingMap map;
  map.num_qubits = 2;
  map.add_edge(0, 1);
  const auto layout = generate_layout(map, {1, 1, 0, 0});
  MixerField f = MixerField::uniform(2, 1.0);
  const auto program = build_cd_program(inst, f, layout, 0.5);
  // one single-qubit layer (zero angles) + two two-body gates
  std::vector<const cd::PauliRotation*> pair_gates;
  for (const auto& g : program.gates)
    if (!g.z_qubits.empty()) pair_gates.push_back(&g);
  REQUIRE(pair_gates.size() == 2);
  CHECK(pair_gates[0]->pauli_string() == "YZ");
  CHECK(pair_gates[0]->y_qubit == 0);
  CHECK(pair_gates[0]->angle == doctest::Approx(0.5 * 0.8 * 1.0));
  CHECK(pair_gates[1]->y_qubit == 1);
  CHECK(pair_gates[1]->angle == doctest::Approx(0.5 * 0.8 * 1.0));
}

TEST_CASE("a single triple term emits three rotations, one Y per position") {
  HuboInstance inst(3);
  inst.add_cubic(0, 1, 2, -1.5);
  CouplingMap map;
  map.num_qubits = 3;
  map.add_edge(0, 1);
  map.add_edge(1, 2);
  const auto layout = generate_layout(map, {1, 0, 1, 0});
  MixerField f = MixerField::uniform(3, -1.0);
  const auto program = build_cd_program(inst, f, layout, 2.0);
  std::vector<const cd::PauliRotation*> triple_gates;
  for (const auto& g : program.gates)
    if (g.z_qubits.size() == 2) triple_gates.push_back(&g);
  REQUIRE(triple_gates.size() == 3);
  std::set<int> y_positions;
  for (const auto* g : triple_gates) {
    y_positions.insert(g->y_qubit);
    CHECK(g->angle == doctest::Approx(2.0 * -1.0 * -1.5));
  }
  CHECK(y_positions == std::set<int>{0, 1, 2});
}

TEST_CASE("gates within an annotated layer act on disjoint qubits") {
  const auto map = heavy_hex(1, 2);
  const auto layout = generate_layout(map, {1, 2, 3, 5});
  const auto inst = instantiate(layout, CoefficientSampler::cauchy(7.0), 2);
  const auto program =
      build_cd_program(inst, MixerField::uniform(map.num_qubits), layout, 0.3);
  for (const auto& layer : program.layers) {
    std::set<int> used;
    for (int g = layer.first_gate; g < layer.first_gate + layer.gate_count; ++g)
      for (int q : program.gates[g].qubits()) CHECK(used.insert(q).second);
  }
}

TEST_CASE("unroutable hyperedges are rejected") {
  HuboInstance inst(3);
  inst.add_quadratic(0, 2, 1.0);  // not an edge of the path layout below
  CouplingMap map;
  map.num_qubits = 3;
  map.add_edge(0, 1);
  map.add_edge(1, 2);
  const auto layout = generate_layout(map, {1, 2, 0, 0});
  CHECK_THROWS_AS(
      build_cd_program(inst, MixerField::uniform(3), layout, 1.0),
      std::runtime_error);
}

TEST_CASE("identity program returns the input state") {
  cd::CdProgram program;
  program.num_qubits = 3;
  const auto init = random_state(3, 8);
  const auto out = simulate(program, init);
  for (std::size_t b = 0; b < init.amps.size(); ++b)
    CHECK(out.amps[b] == init.amps[b]);
}

TEST_CASE("a pi Y rotation flips |0> to |1>") {
  cd::CdProgram program;
  program.num_qubits = 1;
  program.gates.push_back({0, {}, std::numbers::pi});
  const auto out = simulate(program, StateVector::zero_state(1));
  CHECK(std::abs(out.amps[0]) < 1e-12);
  CHECK(std::abs(std::abs(out.amps[1]) - 1.0) < 1e-12);
}

TEST_CASE("simulation matches the dense matrix-exponential oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4;
    const auto program = random_program(n, 6, seed);
    const auto init = random_state(n, seed + 1000);
    const auto fast = simulate(program, init);
    const auto dense = dense_reference(program, init);
    CHECK(oracle::fidelity(fast.amps, dense) >= 1.0 - 1e-10);
    CHECK(fast.norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("simulator enforces its qubit cap") {
  cd::CdProgram program;
  program.num_qubits = 26;
  StateVector sv;
  sv.num_qubits = 26;
  CHECK_THROWS_AS(simulate(program, sv), std::length_error);
}

TEST_CASE("sampling a basis state is deterministic") {
  StateVector sv = StateVector::zero_state(2);
  sv.amps[0] = 0.0;
  sv.amps[2] = 1.0;  // |q1=1, q0=0>
  const auto shots = sample_shots(sv, 500, 3);
  REQUIRE(shots.counts.size() == 1);
  CHECK(shots.counts.at(2) == 500);
  const auto s = shots.spin_of(2);
  CHECK(s[0] == +1);
  CHECK(s[1] == -1);
}

TEST_CASE("uniform superposition samples evenly") {
  MixerField f = MixerField::uniform(1, -1.0);
  const auto sv = StateVector::product_state(prep_angles(f));
  const auto shots = sample_shots(sv, 100000, 5);
  const double p0 = shots.counts.at(0) / 100000.0;
  CHECK(std::abs(p0 - 0.5) < 0.01);
}

TEST_CASE("empirical shot distribution approaches |amplitude|^2") {
  const auto sv = random_state(3, 77);
  const int n_shots = 100000;
  const auto shots = sample_shots(sv, n_shots, 6);
  double tv = 0.0;
  for (std::uint64_t b = 0; b < sv.amps.size(); ++b) {
    const auto it = shots.counts.find(b);
    const double freq = it == shots.counts.end() ? 0.0 : it->second / double(n_shots);
    tv += std::abs(freq - std::norm(sv.amps[b]));
  }
  CHECK(tv / 2.0 < 0.02);
}

TEST_CASE("with zero couplings and zero bias the outcomes are uniform") {
  HuboInstance inst(4);
  const auto map = crop(heavy_hex(1, 1), 4);
  const auto layout = generate_layout(map, {1, 1, 1, 0});
  const auto program =
      build_cd_program(inst, MixerField::uniform(4), layout, 0.4);
  auto sv = StateVector::product_state(prep_angles(MixerField::uniform(4)));
  sv = simulate(program, std::move(sv));
  const int n_shots = 100000;
  const auto shots = sample_shots(sv, n_shots, 9);
  // chi-squared against the uniform distribution over 16 outcomes
  double chi2 = 0.0;
  const double expected = n_shots / 16.0;
  for (std::uint64_t b = 0; b < 16; ++b) {
    const auto it = shots.counts.find(b);
    const double observed = it == shots.counts.end() ? 0.0 : it->second;
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  CHECK(chi2 < 37.7);  // 99.9th percentile of chi^2 with 15 dof
}

TEST_CASE("CVaR reduction keeps the lowest-energy entries") {
  HuboInstance inst(2);
  inst.add_linear(0, 1.0);
  inst.add_linear(1, 2.0);
  cd::Ensemble ens;
  auto member = [&](int b0, int b1, int mult) {
    cd::Ensemble::Member m;
    m.config = SpinConfig::from_bits({std::uint8_t(b0), std::uint8_t(b1)});
    m.energy = inst.energy(m.config);
    m.multiplicity = mult;
    return m;
  };
  ens.members = {member(0, 0, 1), member(1, 0, 2), member(1, 1, 1)};
  // energies: 3 (x1), 1 (x2), -3 (x1)
  const auto reduced = cvar_reduce(ens, 2);
  CHECK(reduced.total() == 2);
  CHECK(reduced.members[0].energy == doctest::Approx(-3.0));
  CHECK(reduced.members[1].energy == doctest::Approx(1.0));
  CHECK(reduced.members[1].multiplicity == 1);

  const auto full = cvar_reduce(ens, ens.total());
  CHECK(full.total() == ens.total());
  CHECK(cvar_reduce(ens, 1).min_energy() == ens.min_energy());
}

TEST_CASE("CVaR mean never exceeds the full-ensemble mean") {
  const auto sampler = CoefficientSampler::cauchy();
  const auto inst = random_instance(6, 8, 4, sampler, 41);
  const auto sv = random_state(6, 42);
  const auto shots = sample_shots(sv, 2000, 7);
  const auto ens = ensemble_from_shots(shots, inst);
  const auto reduced = cvar_reduce(ens, 100);
  CHECK(reduced.mean_energy() <= ens.mean_energy() + 1e-12);
  CHECK(reduced.min_energy() == doctest::Approx(ens.min_energy()));
}

TEST_CASE("bias update averages spins with the chosen sign") {
  cd::Ensemble ens;
  cd::Ensemble::Member up;
  up.config = SpinConfig(3, +1);
  up.multiplicity = 3;
  ens.members = {up};
  auto hb = update_bias(ens, +1.0);
  for (double v : hb) CHECK(v == doctest::Approx(1.0));
  hb = update_bias(ens, -1.0);
  for (double v : hb) CHECK(v == doctest::Approx(-1.0));

  cd::Ensemble::Member down;
  down.config = SpinConfig(3, -1);
  down.multiplicity = 3;
  ens.members = {up, down};
  hb = update_bias(ens, -1.0);
  for (double v : hb) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("the default sign lets the mixer re-prepare the measured majority") {
  // majority spin +1 with the default negative sign gives hb < 0, whose
  // single-qubit ground state has <Z> > 0, matching the majority
  cd::Ensemble ens;
  cd::Ensemble::Member m;
  m.config = SpinConfig(1, +1);
  m.multiplicity = 9;
  cd::Ensemble::Member minority;
  minority.config = SpinConfig(1, -1);
  minority.multiplicity = 1;
  ens.members = {m, minority};
  const auto hb = update_bias(ens, -1.0);
  const auto [ground, energy] = mixer_ground(-1.0, hb[0]);
  const double z_expect = std::norm(ground[0]) - std::norm(ground[1]);
  CHECK(z_expect > 0.0);
}

TEST_CASE("post-processing never raises member energies") {
  const auto sampler = CoefficientSampler::cauchy();
  const auto inst = random_instance(12, 18, 10, sampler, 51);
  Rng rng(52);
  cd::Ensemble ens;
  for (int k = 0; k < 20; ++k) {
    cd::Ensemble::Member m;
    m.config = SpinConfig(12);
    for (int i = 0; i < 12; ++i) m.config[i] = rng.coin() ? 1 : -1;
    m.energy = inst.energy(m.config);
    m.multiplicity = 1;
    ens.members.push_back(std::move(m));
  }
  const auto refined = post_process(ens, inst, 10, 3);
  REQUIRE(refined.members.size() == ens.members.size());
  for (std::size_t k = 0; k < ens.members.size(); ++k)
    CHECK(refined.members[k].energy <= ens.members[k].energy + 1e-12);
  CHECK(refined.min_energy() <= ens.min_energy() + 1e-12);
}

TEST_CASE("a local minimum is a fixed point of post-processing") {
  HuboInstance inst(3);
  inst.add_linear(0, -1.0);
  inst.add_linear(1, -1.0);
  inst.add_linear(2, -1.0);
  cd::Ensemble ens;
  cd::Ensemble::Member m;
  m.config = SpinConfig(3, +1);
  m.energy = inst.energy(m.config);
  ens.members = {m};
  const auto refined = post_process(ens, inst, 5, 1);
  CHECK(refined.members[0].config == m.config);

  // one flip above the minimum reaches it within a sweep
  cd::Ensemble almost;
  cd::Ensemble::Member near = m;
  near.config[1] = -1;
  near.energy = inst.energy(near.config);
  almost.members = {near};
  const auto fixed = post_process(almost, inst, 1, 1);
  CHECK(fixed.members[0].energy == doctest::Approx(-3.0));
}

TEST_CASE("runtime model reproduces the closed-form costs") {
  cd::BfDcqoConfig cfg;
  cfg.pre_sweeps = 1000;
  cfg.pre_runs = 100;
  cfg.n_cvar = 100;
  cfg.n_iter = 1;
  cfg.post_sweeps = 10;
  cfg.n_shots = 4000;
  const auto rt = runtime_model(cfg);
  CHECK(rt.cpu_seconds == doctest::Approx(0.612).epsilon(1e-9));

  cfg.n_iter = 2;
  cfg.n_shots = 2000;
  CHECK(runtime_model(cfg).qpu_seconds == doctest::Approx(0.6).epsilon(1e-9));
  cfg.n_shots = 4000;
  CHECK(runtime_model(cfg).qpu_seconds == doctest::Approx(1.2).epsilon(1e-9));
}

TEST_CASE("zero iterations reduce to SA-initialized sampling") {
  const auto map = crop(heavy_hex(1, 1), 8);
  const auto layout = generate_layout(map, {1, 1, 1, 3});
  const auto inst = instantiate(layout, CoefficientSampler::cauchy(7.0), 4);
  cd::BfDcqoConfig cfg;
  cfg.n_iter = 0;
  cfg.n_shots = 500;
  cfg.n_cvar = 50;
  cfg.pre_sweeps = 50;
  cfg.pre_runs = 5;
  cfg.seed = 6;
  const auto result = run_bfdcqo(inst, layout, cfg);
  REQUIRE(result.iterations.size() == 1);
  CHECK(result.best_energy <= result.pre_energy + 1e-12);
  CHECK(result.modeled_qpu_seconds == doctest::Approx(500 * 1e-4));
}

TEST_CASE("best-so-far energies are monotone across iterations") {
  const auto map = crop(heavy_hex(1, 2), 10);
  const auto layout = generate_layout(map, {1, 1, 2, 7});
  const auto inst = instantiate(layout, CoefficientSampler::cauchy(7.0), 9);
  cd::BfDcqoConfig cfg;
  cfg.n_iter = 3;
  cfg.n_shots = 800;
  cfg.n_cvar = 60;
  cfg.pre_sweeps = 20;
  cfg.pre_runs = 3;
  cfg.post_sweeps = 5;
  cfg.seed = 10;
  const auto result = run_bfdcqo(inst, layout, cfg);
  REQUIRE(result.iterations.size() == 4);
  double previous = result.pre_energy;
  for (const auto& it : result.iterations) {
    CHECK(it.best_energy_so_far <= previous + 1e-12);
    previous = it.best_energy_so_far;
    for (double v : it.bias_field) CHECK(std::abs(v) <= 1.0 + 1e-12);
  }
  CHECK(result.best_energy == doctest::Approx(result.iterations.back().best_energy_so_far));
}

TEST_CASE("flip noise is recovered by post-processing pressure") {
  const auto map = crop(heavy_hex(1, 1), 6);
  const auto layout = generate_layout(map, {1, 1, 1, 5});
  const auto inst = instantiate(layout, CoefficientSampler::cauchy(7.0), 11);
  cd::BfDcqoConfig noisy;
  noisy.n_iter = 1;
  noisy.n_shots = 400;
  noisy.n_cvar = 40;
  noisy.pre_sweeps = 30;
  noisy.pre_runs = 3;
  noisy.post_sweeps = 10;
  noisy.flip_noise = 0.02;
  noisy.seed = 12;
  const auto result = run_bfdcqo(inst, layout, noisy);
  // still monotone and valid despite the channel
  CHECK(result.best_energy <= result.pre_energy + 1e-12);
}

TEST_CASE("config validation") {
  const auto map = crop(heavy_hex(1, 1), 4);
  const auto layout = generate_layout(map, {1, 1, 1, 1});
  const auto inst = instantiate(layout, CoefficientSampler::constant(1.0), 0);
  cd::BfDcqoConfig cfg;
  cfg.n_trot = 2;
  CHECK_THROWS_AS(run_bfdcqo(inst, layout, cfg), std::invalid_argument);
  cfg.n_trot = 1;
  cfg.n_cvar = 50;
  cfg.n_shots = 10;
  CHECK_THROWS_AS(run_bfdcqo(inst, layout, cfg), std::invalid_argument);
}

TEST_CASE("program dump lists one gate per line") {
  HuboInstance inst(2);
  inst.add_quadratic(0, 1, 1.0);
  CouplingMap map;
  map.num_qubits = 2;
  map.add_edge(0, 1);
  const auto layout = generate_layout(map, {1, 1, 0, 0});
  const auto program =
      build_cd_program(inst, MixerField::uniform(2), layout, 1.0);
  const auto dump = program.dump();
  CHECK(dump.find("YZ 0 1 ") != std::string::npos);
  CHECK(dump.find("ZY") == std::string::npos);  // Y listed first by convention
  CHECK(std::count(dump.begin(), dump.end(), '\n') ==
        static_cast<long>(program.gates.size()));
}
