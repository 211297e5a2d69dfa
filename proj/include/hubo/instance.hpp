#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hubo {

/// Spin assignment over {+1, -1}, one entry per variable.
struct SpinConfig {
  std::vector<std::int8_t> spins;

  SpinConfig() = default;
  explicit SpinConfig(std::size_t n, std::int8_t fill = +1) : spins(n, fill) {}

  std::size_t size() const { return spins.size(); }
  std::int8_t operator[](std::size_t i) const { return spins[i]; }
  std::int8_t& operator[](std::size_t i) { return spins[i]; }

  void flip(std::size_t i) { spins[i] = static_cast<std::int8_t>(-spins[i]); }

  // Bit view: bit_i = (1 - s_i) / 2.
  std::vector<std::uint8_t> bits() const;
  static SpinConfig from_bits(const std::vector<std::uint8_t>& bits);
  std::string bitstring() const;                  // "010...", index 0 first
  static SpinConfig from_bitstring(const std::string& s);

  // Lexicographic order on the bit view, index 0 most significant.
  bool bits_less(const SpinConfig& other) const;

  bool operator==(const SpinConfig& other) const { return spins == other.spins; }
};

/// Cubic Ising cost over spins:
///   H(s) = sum_i h_i s_i + sum_(m,n) J_mn s_m s_n
///        + sum_(p,q,r) K_pqr s_p s_q s_r + offset.
///
/// Term keys are stored sorted; inserting an existing key accumulates the
/// coefficient. Instances are immutable once construction is finished and can
/// be shared read-only across threads.
class HuboInstance {
 public:
  explicit HuboInstance(int num_vars);

  int num_vars() const { return num_vars_; }

  void add_linear(int i, double h);
  void add_quadratic(int m, int n, double j);
  void add_cubic(int p, int q, int r, double k);
  void add_offset(double c) { offset_ += c; }
  void set_offset(double c) { offset_ = c; }

  const std::map<int, double>& linear_terms() const { return linear_; }
  const std::map<std::array<int, 2>, double>& quadratic_terms() const { return quad_; }
  const std::map<std::array<int, 3>, double>& cubic_terms() const { return cubic_; }
  double offset() const { return offset_; }

  /// Number of insertions that landed on an existing key.
  int accumulated_duplicates() const { return duplicates_; }

  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

  double energy(const SpinConfig& s) const;

  /// Energy change if spin i were flipped:
  ///   dE = -2 s_i (h_i + sum_n J_in s_n + sum_(q,r) K_iqr s_q s_r).
  double flip_delta(const SpinConfig& s, int i) const;

  /// Largest possible |dE| for a flip of spin i over all configurations:
  ///   2 (|h_i| + sum |J| + sum |K|).
  double max_flip_delta(int i) const;

  nlohmann::json to_json() const;
  static HuboInstance from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static HuboInstance load(const std::string& path);

  // Per-variable term lists used by the sweep kernels.
  struct PairNeighbor { int other; double coeff; };
  struct TripleNeighbor { int a; int b; double coeff; };
  const std::vector<PairNeighbor>& pair_neighbors(int i) const { return pair_adj_[i]; }
  const std::vector<TripleNeighbor>& triple_neighbors(int i) const { return triple_adj_[i]; }

 private:
  void check_index(int i) const;

  int num_vars_;
  std::map<int, double> linear_;
  std::map<std::array<int, 2>, double> quad_;
  std::map<std::array<int, 3>, double> cubic_;
  double offset_ = 0.0;
  int duplicates_ = 0;
  nlohmann::json metadata_ = nlohmann::json::object();

  std::vector<double> linear_dense_;  // h_i, zero when absent
  std::vector<std::vector<PairNeighbor>> pair_adj_;
  std::vector<std::vector<TripleNeighbor>> triple_adj_;
};

/// Polynomial over binary variables x in {0,1}:
///   F(x) = sum_i c_i x_i + sum_(i,j) c_ij x_i x_j
///        + sum_(i,j,k) c_ijk x_i x_j x_k + offset.
struct BinaryPoly {
  int num_vars = 0;
  std::map<int, double> linear;
  std::map<std::array<int, 2>, double> quadratic;
  std::map<std::array<int, 3>, double> cubic;
  double offset = 0.0;

  double value(const std::vector<std::uint8_t>& x) const;
};

/// Substitute s_i = 1 - 2 x_i. Exact: F(x(s)) == energy(s) for all s.
BinaryPoly to_binary(const HuboInstance& inst);

/// Substitute x_i = (1 - s_i) / 2; inverse of to_binary.
HuboInstance to_spin(const BinaryPoly& poly);

struct GroundState {
  SpinConfig config;
  double energy;
};

inline constexpr int kDefaultBruteForceCap = 24;

/// Exhaustive scan over all 2^N configurations. Ties are broken toward the
/// lexicographically smallest bitstring so the oracle is deterministic.
/// Throws if num_vars exceeds `cap`.
GroundState brute_force_ground_state(const HuboInstance& inst,
                                     int cap = kDefaultBruteForceCap,
                                     int num_workers = 1);

/// Random dense-ish hypergraph instance for desk-scale studies: a linear term
/// on every variable plus `num_quad` distinct pairs and `num_cubic` distinct
/// triples, coefficients drawn from `sample` (seeded stream index per term).
class CoefficientSampler;
HuboInstance random_instance(int num_vars, int num_quad, int num_cubic,
                             const CoefficientSampler& sampler,
                             std::uint64_t seed);

}  // namespace hubo
