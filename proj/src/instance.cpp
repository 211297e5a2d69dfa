#include "hubo/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <stdexcept>
#include <thread>

#include "hubo/rng.hpp"
#include "hubo/sampler.hpp"

namespace hubo {

std::vector<std::uint8_t> SpinConfig::bits() const {
  std::vector<std::uint8_t> out(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i)
    out[i] = spins[i] > 0 ? 0 : 1;
  return out;
}

SpinConfig SpinConfig::from_bits(const std::vector<std::uint8_t>& bits) {
  SpinConfig s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    s.spins[i] = bits[i] ? -1 : +1;
  return s;
}

std::string SpinConfig::bitstring() const {
  std::string out(spins.size(), '0');
  for (std::size_t i = 0; i < spins.size(); ++i)
    if (spins[i] < 0) out[i] = '1';
  return out;
}

SpinConfig SpinConfig::from_bitstring(const std::string& str) {
  SpinConfig s(str.size());
  for (std::size_t i = 0; i < str.size(); ++i) {
    if (str[i] != '0' && str[i] != '1')
      throw std::invalid_argument("bitstring must contain only 0/1");
    s.spins[i] = str[i] == '1' ? -1 : +1;
  }
  return s;
}

bool SpinConfig::bits_less(const SpinConfig& other) const {
  // bit 0 is the most significant position; s=+1 maps to bit 0.
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != other.spins[i]) return spins[i] > other.spins[i];
  }
  return false;
}

HuboInstance::HuboInstance(int num_vars)
    : num_vars_(num_vars),
      linear_dense_(num_vars, 0.0),
      pair_adj_(num_vars),
      triple_adj_(num_vars) {
  if (num_vars < 1) throw std::invalid_argument("num_vars must be >= 1");
}

void HuboInstance::check_index(int i) const {
  if (i < 0 || i >= num_vars_)
    throw std::out_of_range("variable index out of range");
}

namespace {
void check_finite(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("coefficient not finite");
}
}  // namespace

void HuboInstance::add_linear(int i, double h) {
  check_index(i);
  check_finite(h);
  auto [it, fresh] = linear_.try_emplace(i, h);
  if (!fresh) {
    it->second += h;
    ++duplicates_;
  }
  linear_dense_[i] = it->second;
}

void HuboInstance::add_quadratic(int m, int n, double j) {
  check_index(m);
  check_index(n);
  check_finite(j);
  if (m == n) throw std::invalid_argument("pair indices must be distinct");
  if (m > n) std::swap(m, n);
  auto [it, fresh] = quad_.try_emplace(std::array<int, 2>{m, n}, j);
  if (fresh) {
    pair_adj_[m].push_back({n, j});
    pair_adj_[n].push_back({m, j});
    return;
  }
  it->second += j;
  ++duplicates_;
  for (auto& nb : pair_adj_[m])
    if (nb.other == n) nb.coeff = it->second;
  for (auto& nb : pair_adj_[n])
    if (nb.other == m) nb.coeff = it->second;
}

void HuboInstance::add_cubic(int p, int q, int r, double k) {
  check_index(p);
  check_index(q);
  check_index(r);
  check_finite(k);
  std::array<int, 3> key{p, q, r};
  std::sort(key.begin(), key.end());
  if (key[0] == key[1] || key[1] == key[2])
    throw std::invalid_argument("triple indices must be distinct");
  auto [it, fresh] = cubic_.try_emplace(key, k);
  if (fresh) {
    triple_adj_[key[0]].push_back({key[1], key[2], k});
    triple_adj_[key[1]].push_back({key[0], key[2], k});
    triple_adj_[key[2]].push_back({key[0], key[1], k});
    return;
  }
  it->second += k;
  ++duplicates_;
  auto sync = [&](int v, int a, int b) {
    for (auto& nb : triple_adj_[v])
      if (nb.a == a && nb.b == b) nb.coeff = it->second;
  };
  sync(key[0], key[1], key[2]);
  sync(key[1], key[0], key[2]);
  sync(key[2], key[0], key[1]);
}

double HuboInstance::energy(const SpinConfig& s) const {
  if (static_cast<int>(s.size()) != num_vars_)
    throw std::invalid_argument("spin configuration length mismatch");
  double e = offset_;
  for (const auto& [i, h] : linear_) e += h * s[i];
  for (const auto& [k, j] : quad_) e += j * s[k[0]] * s[k[1]];
  for (const auto& [k, c] : cubic_) e += c * s[k[0]] * s[k[1]] * s[k[2]];
  return e;
}

double HuboInstance::flip_delta(const SpinConfig& s, int i) const {
  double field = linear_dense_[i];
  for (const auto& nb : pair_adj_[i]) field += nb.coeff * s[nb.other];
  for (const auto& nb : triple_adj_[i]) field += nb.coeff * s[nb.a] * s[nb.b];
  return -2.0 * s[i] * field;
}

double HuboInstance::max_flip_delta(int i) const {
  double sum = std::abs(linear_dense_[i]);
  for (const auto& nb : pair_adj_[i]) sum += std::abs(nb.coeff);
  for (const auto& nb : triple_adj_[i]) sum += std::abs(nb.coeff);
  return 2.0 * sum;
}

nlohmann::json HuboInstance::to_json() const {
  nlohmann::json j;
  j["num_vars"] = num_vars_;
  auto linear = nlohmann::json::array();
  for (const auto& [i, h] : linear_) linear.push_back({i, h});
  auto quadratic = nlohmann::json::array();
  for (const auto& [k, v] : quad_) quadratic.push_back({k[0], k[1], v});
  auto cubic = nlohmann::json::array();
  for (const auto& [k, v] : cubic_) cubic.push_back({k[0], k[1], k[2], v});
  j["linear"] = std::move(linear);
  j["quadratic"] = std::move(quadratic);
  j["cubic"] = std::move(cubic);
  j["offset"] = offset_;
  j["metadata"] = metadata_;
  return j;
}

HuboInstance HuboInstance::from_json(const nlohmann::json& j) {
  HuboInstance inst(j.at("num_vars").get<int>());
  for (const auto& t : j.at("linear"))
    inst.add_linear(t.at(0).get<int>(), t.at(1).get<double>());
  for (const auto& t : j.at("quadratic"))
    inst.add_quadratic(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
  for (const auto& t : j.at("cubic"))
    inst.add_cubic(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>(),
                   t.at(3).get<double>());
  inst.set_offset(j.at("offset").get<double>());
  inst.duplicates_ = 0;  // freshly parsed canonical form
  if (j.contains("metadata")) inst.metadata_ = j.at("metadata");
  return inst;
}

void HuboInstance::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_json().dump(2) << "\n";
}

HuboInstance HuboInstance::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

double BinaryPoly::value(const std::vector<std::uint8_t>& x) const {
  double v = offset;
  for (const auto& [i, c] : linear) v += c * x[i];
  for (const auto& [k, c] : quadratic) v += c * x[k[0]] * x[k[1]];
  for (const auto& [k, c] : cubic) v += c * x[k[0]] * x[k[1]] * x[k[2]];
  return v;
}

namespace {
void accumulate(std::map<int, double>& m, int i, double c) {
  if (c != 0.0) m[i] += c;
}
void accumulate(std::map<std::array<int, 2>, double>& m, int a, int b, double c) {
  if (a > b) std::swap(a, b);
  if (c != 0.0) m[{a, b}] += c;
}
}  // namespace

BinaryPoly to_binary(const HuboInstance& inst) {
  BinaryPoly p;
  p.num_vars = inst.num_vars();
  p.offset = inst.offset();
  // s = 1 - 2x, so: h s = h - 2h x;  J s s = J - 2J(x+x) + 4J xx;
  // K s s s = K - 2K(x+x+x) + 4K(xx+xx+xx) - 8K xxx.
  for (const auto& [i, h] : inst.linear_terms()) {
    p.offset += h;
    accumulate(p.linear, i, -2.0 * h);
  }
  for (const auto& [k, j] : inst.quadratic_terms()) {
    p.offset += j;
    accumulate(p.linear, k[0], -2.0 * j);
    accumulate(p.linear, k[1], -2.0 * j);
    accumulate(p.quadratic, k[0], k[1], 4.0 * j);
  }
  for (const auto& [k, c] : inst.cubic_terms()) {
    p.offset += c;
    for (int v : k) accumulate(p.linear, v, -2.0 * c);
    accumulate(p.quadratic, k[0], k[1], 4.0 * c);
    accumulate(p.quadratic, k[0], k[2], 4.0 * c);
    accumulate(p.quadratic, k[1], k[2], 4.0 * c);
    p.cubic[k] += -8.0 * c;
  }
  return p;
}

HuboInstance to_spin(const BinaryPoly& poly) {
  HuboInstance inst(poly.num_vars);
  double offset = poly.offset;
  std::map<int, double> lin;
  std::map<std::array<int, 2>, double> quad;
  std::map<std::array<int, 3>, double> cubic;
  // x = (1 - s)/2.
  double scale = std::abs(poly.offset);
  for (const auto& [i, c] : poly.linear) {
    offset += c / 2.0;
    lin[i] += -c / 2.0;
    scale = std::max(scale, std::abs(c));
  }
  for (const auto& [k, c] : poly.quadratic) {
    offset += c / 4.0;
    lin[k[0]] += -c / 4.0;
    lin[k[1]] += -c / 4.0;
    quad[k] += c / 4.0;
    scale = std::max(scale, std::abs(c));
  }
  for (const auto& [k, c] : poly.cubic) {
    offset += c / 8.0;
    for (int v : k) lin[v] += -c / 8.0;
    quad[{k[0], k[1]}] += c / 8.0;
    quad[{k[0], k[2]}] += c / 8.0;
    quad[{k[1], k[2]}] += c / 8.0;
    cubic[k] += -c / 8.0;
    scale = std::max(scale, std::abs(c));
  }
  // Terms that cancel algebraically can leave rounding residue behind;
  // drop anything at the noise floor of the accumulation.
  const double noise = scale * 1e-14;
  for (const auto& [i, c] : lin)
    if (std::abs(c) > noise) inst.add_linear(i, c);
  for (const auto& [k, c] : quad)
    if (std::abs(c) > noise) inst.add_quadratic(k[0], k[1], c);
  for (const auto& [k, c] : cubic)
    if (std::abs(c) > noise) inst.add_cubic(k[0], k[1], k[2], c);
  inst.set_offset(offset);
  return inst;
}

namespace {

// Scan a contiguous block of configurations with Gray-code single-flip
// updates; improvements are re-evaluated from scratch before they are
// accepted so accumulated rounding cannot skew ties.
GroundState scan_block(const HuboInstance& inst, std::uint64_t begin,
                       std::uint64_t end) {
  const int n = inst.num_vars();
  auto config_of = [&](std::uint64_t m) {
    SpinConfig s(n);
    for (int i = 0; i < n; ++i)
      s[i] = (m >> i) & 1 ? -1 : +1;
    return s;
  };
  // Gray code of m flips bit ctz(m+1) between step m and m+1.
  std::uint64_t gray = begin ^ (begin >> 1);
  SpinConfig s = config_of(gray);
  double e = inst.energy(s);
  GroundState best{s, e};
  for (std::uint64_t m = begin;;) {
    if (e <= best.energy + 1e-9) {
      double exact = inst.energy(s);
      if (exact < best.energy ||
          (exact == best.energy && s.bits_less(best.config))) {
        best = {s, exact};
      }
      e = exact;
    }
    if (++m >= end) break;
    int bit = static_cast<int>(__builtin_ctzll(m));
    e += inst.flip_delta(s, bit);
    s.flip(bit);
  }
  return best;
}

}  // namespace

GroundState brute_force_ground_state(const HuboInstance& inst, int cap,
                                     int num_workers) {
  const int n = inst.num_vars();
  if (n > cap)
    throw std::length_error("brute force capped at " + std::to_string(cap) +
                            " variables, got " + std::to_string(n));
  const std::uint64_t total = 1ULL << n;
  int workers = std::max(1, num_workers);
  if (total < 4096) workers = 1;
  if (workers == 1) return scan_block(inst, 0, total);

  std::vector<std::future<GroundState>> futures;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::uint64_t begin = w * chunk;
    std::uint64_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, scan_block,
                                 std::cref(inst), begin, end));
  }
  GroundState best = futures.front().get();
  for (std::size_t i = 1; i < futures.size(); ++i) {
    GroundState g = futures[i].get();
    if (g.energy < best.energy ||
        (g.energy == best.energy && g.config.bits_less(best.config)))
      best = g;
  }
  return best;
}

HuboInstance random_instance(int num_vars, int num_quad, int num_cubic,
                             const CoefficientSampler& sampler,
                             std::uint64_t seed) {
  const long long max_pairs = static_cast<long long>(num_vars) * (num_vars - 1) / 2;
  const long long max_triples =
      static_cast<long long>(num_vars) * (num_vars - 1) * (num_vars - 2) / 6;
  if (num_quad > max_pairs || num_cubic > max_triples)
    throw std::invalid_argument("requested more hyperedges than exist");

  Rng structure(derive_stream(seed, 0));
  Rng coeffs(derive_stream(seed, 1));
  HuboInstance inst(num_vars);
  for (int i = 0; i < num_vars; ++i) inst.add_linear(i, sampler.sample(coeffs));

  std::set<std::array<int, 2>> pairs;
  while (static_cast<int>(pairs.size()) < num_quad) {
    int a = static_cast<int>(structure.bounded(num_vars));
    int b = static_cast<int>(structure.bounded(num_vars));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    pairs.insert({a, b});
  }
  for (const auto& p : pairs) inst.add_quadratic(p[0], p[1], sampler.sample(coeffs));

  std::set<std::array<int, 3>> triples;
  while (static_cast<int>(triples.size()) < num_cubic) {
    int a = static_cast<int>(structure.bounded(num_vars));
    int b = static_cast<int>(structure.bounded(num_vars));
    int c = static_cast<int>(structure.bounded(num_vars));
    if (a == b || b == c || a == c) continue;
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    triples.insert(t);
  }
  for (const auto& t : triples)
    inst.add_cubic(t[0], t[1], t[2], sampler.sample(coeffs));

  inst.metadata()["generator"] = {{"kind", "random_hypergraph"},
                                  {"num_quad", num_quad},
                                  {"num_cubic", num_cubic},
                                  {"seed", seed}};
  inst.metadata()["sampler"] = sampler.describe();
  return inst;
}

}  // namespace hubo
