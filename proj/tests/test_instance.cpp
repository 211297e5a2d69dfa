#include <doctest.h>

#include <cmath>

#include "hubo/instance.hpp"
#include "hubo/rng.hpp"
#include "hubo/sampler.hpp"
#include "oracles.hpp"

using namespace hubo;

TEST_CASE("energy of a single cubic term") {
  HuboInstance inst(3);
  inst.add_cubic(0, 1, 2, 2.0);
  SpinConfig s(3);
  s[0] = +1; s[1] = +1; s[2] = -1;
  CHECK(inst.energy(s) == doctest::Approx(-2.0));
}

TEST_CASE("energy of the all-zero instance is the offset") {
  HuboInstance inst(5);
  SpinConfig s(5, -1);
  CHECK(inst.energy(s) == 0.0);
  inst.add_offset(1.5);
  CHECK(inst.energy(s) == doctest::Approx(1.5));
}

TEST_CASE("energy matches the naive evaluator on random instances") {
  const auto sampler = CoefficientSampler::cauchy();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = random_instance(10, 14, 10, sampler, seed);
    Rng rng(seed + 99);
    for (int trial = 0; trial < 50; ++trial) {
      SpinConfig s(10);
      for (int i = 0; i < 10; ++i) s[i] = rng.coin() ? 1 : -1;
      CHECK(inst.energy(s) == doctest::Approx(oracle::naive_energy(inst, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("energy rejects length mismatch") {
  HuboInstance inst(3);
  CHECK_THROWS_AS(inst.energy(SpinConfig(2)), std::invalid_argument);
}

TEST_CASE("duplicate term insertion accumulates") {
  HuboInstance inst(4);
  inst.add_quadratic(1, 0, 2.0);
  inst.add_quadratic(0, 1, 3.0);
  inst.add_cubic(3, 1, 0, 1.0);
  inst.add_cubic(0, 1, 3, -4.0);
  CHECK(inst.quadratic_terms().at({0, 1}) == doctest::Approx(5.0));
  CHECK(inst.cubic_terms().at({0, 1, 3}) == doctest::Approx(-3.0));
  CHECK(inst.accumulated_duplicates() == 2);
  // adjacency kept in sync: flip deltas agree with fresh evaluation
  SpinConfig s(4, +1);
  for (int i = 0; i < 4; ++i) {
    SpinConfig flipped = s;
    flipped.flip(i);
    CHECK(inst.flip_delta(s, i) ==
          doctest::Approx(inst.energy(flipped) - inst.energy(s)).epsilon(1e-12));
  }
}

TEST_CASE("invalid terms are rejected") {
  HuboInstance inst(4);
  CHECK_THROWS_AS(inst.add_linear(4, 1.0), std::out_of_range);
  CHECK_THROWS_AS(inst.add_quadratic(2, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(inst.add_cubic(0, 1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(inst.add_linear(0, std::nan("")), std::invalid_argument);
}

TEST_CASE("spin-flip locality against full re-evaluation") {
  const auto sampler = CoefficientSampler::symmetric_pareto(2.0);
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const auto inst = random_instance(12, 20, 14, sampler, seed);
    Rng rng(seed);
    SpinConfig s(12);
    for (int i = 0; i < 12; ++i) s[i] = rng.coin() ? 1 : -1;
    for (int i = 0; i < 12; ++i) {
      SpinConfig flipped = s;
      flipped.flip(i);
      const double expected = oracle::naive_energy(inst, flipped) -
                              oracle::naive_energy(inst, s);
      CHECK(inst.flip_delta(s, i) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("binary mapping at s = all +1 gives x = all 0") {
  HuboInstance inst(3);
  inst.add_linear(0, 1.0);
  SpinConfig s(3, +1);
  CHECK(s.bits() == std::vector<std::uint8_t>{0, 0, 0});
  const auto poly = to_binary(inst);
  CHECK(poly.value({0, 0, 0}) == doctest::Approx(inst.energy(s)));
}

TEST_CASE("single spin term h*s becomes 1 - 2x") {
  HuboInstance inst(1);
  inst.add_linear(0, 1.0);
  const auto poly = to_binary(inst);
  CHECK(poly.offset == doctest::Approx(1.0));
  CHECK(poly.linear.at(0) == doctest::Approx(-2.0));
  CHECK(poly.quadratic.empty());
}

TEST_CASE("binary form agrees with spin energy on all configurations") {
  const auto sampler = CoefficientSampler::cauchy();
  const auto inst = random_instance(8, 12, 8, sampler, 3);
  const auto poly = to_binary(inst);
  for (std::uint64_t m = 0; m < 256; ++m) {
    const auto s = oracle::config_from_index(8, m);
    CHECK(poly.value(s.bits()) == doctest::Approx(inst.energy(s)).epsilon(1e-12));
  }
}

TEST_CASE("binary/spin round trip reproduces coefficients") {
  const auto sampler = CoefficientSampler::cauchy(7.0);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = random_instance(156, 170, 240, sampler, seed);
    const auto back = to_spin(to_binary(inst));
    REQUIRE(back.num_vars() == inst.num_vars());
    CHECK(back.offset() == doctest::Approx(inst.offset()).epsilon(1e-12));
    REQUIRE(back.linear_terms().size() == inst.linear_terms().size());
    for (const auto& [i, h] : inst.linear_terms())
      CHECK(back.linear_terms().at(i) == doctest::Approx(h).epsilon(1e-12));
    REQUIRE(back.quadratic_terms().size() == inst.quadratic_terms().size());
    for (const auto& [k, j] : inst.quadratic_terms())
      CHECK(back.quadratic_terms().at(k) == doctest::Approx(j).epsilon(1e-12));
    REQUIRE(back.cubic_terms().size() == inst.cubic_terms().size());
    for (const auto& [k, c] : inst.cubic_terms())
      CHECK(back.cubic_terms().at(k) == doctest::Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("brute force: single field term") {
  HuboInstance inst(1);
  inst.add_linear(0, 1.0);
  const auto gs = brute_force_ground_state(inst);
  CHECK(gs.energy == doctest::Approx(-1.0));
  CHECK(gs.config[0] == -1);
}

TEST_CASE("brute force: symmetric degenerate pair ties to lexicographic bitstring") {
  HuboInstance inst(2);
  inst.add_quadratic(0, 1, 1.0);
  const auto gs = brute_force_ground_state(inst);
  CHECK(gs.energy == doctest::Approx(-1.0));
  // (+1,-1) encodes as bits 01, below 10
  CHECK(gs.config[0] == +1);
  CHECK(gs.config[1] == -1);
}

TEST_CASE("brute force equals the independent exhaustive scan") {
  const auto sampler = CoefficientSampler::cauchy();
  const auto inst = random_instance(16, 24, 16, sampler, 42);
  const auto gs = brute_force_ground_state(inst);
  const auto [ref_config, ref_energy] = oracle::exhaustive_minimum(inst);
  CHECK(gs.energy == doctest::Approx(ref_energy).epsilon(1e-12));
  CHECK(gs.config == ref_config);
}

TEST_CASE("brute force parallel matches serial") {
  const auto sampler = CoefficientSampler::symmetric_pareto(2.0, 7.0);
  const auto inst = random_instance(14, 20, 12, sampler, 5);
  const auto serial = brute_force_ground_state(inst, 24, 1);
  const auto parallel = brute_force_ground_state(inst, 24, 8);
  CHECK(serial.energy == parallel.energy);
  CHECK(serial.config == parallel.config);
}

TEST_CASE("brute force refuses instances above the cap") {
  HuboInstance inst(30);
  inst.add_linear(0, 1.0);
  CHECK_THROWS_AS(brute_force_ground_state(inst), std::length_error);
}

TEST_CASE("brute force is at most the energy of random configurations") {
  const auto sampler = CoefficientSampler::cauchy();
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto inst = random_instance(16, 28, 20, sampler, seed);
    const auto gs = brute_force_ground_state(inst);
    Rng rng(seed);
    for (int trial = 0; trial < 1000; ++trial) {
      SpinConfig s(16);
      for (int i = 0; i < 16; ++i) s[i] = rng.coin() ? 1 : -1;
      CHECK(gs.energy <= inst.energy(s) + 1e-12);
    }
  }
}

TEST_CASE("instance JSON round trip") {
  const auto sampler = CoefficientSampler::cauchy(7.0);
  const auto inst = random_instance(9, 10, 6, sampler, 11);
  const auto j = inst.to_json();
  const auto back = HuboInstance::from_json(j);
  CHECK(back.to_json() == j);
  SpinConfig s(9, -1);
  CHECK(back.energy(s) == doctest::Approx(inst.energy(s)));
}

TEST_CASE("bitstring helpers") {
  auto s = SpinConfig::from_bitstring("0110");
  CHECK(s[0] == +1);
  CHECK(s[1] == -1);
  CHECK(s.bitstring() == "0110");
  CHECK_THROWS_AS(SpinConfig::from_bitstring("01x"), std::invalid_argument);
}
