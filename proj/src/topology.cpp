#include "hubo/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "hubo/rng.hpp"

namespace hubo {

void CouplingMap::add_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("self-loop");
  if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits)
    throw std::out_of_range("edge endpoint out of range");
  if (a > b) std::swap(a, b);
  std::array<int, 2> e{a, b};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it != edges.end() && *it == e) return;
  edges.insert(it, e);
}

bool CouplingMap::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::array<int, 2>{a, b});
}

std::vector<std::vector<int>> CouplingMap::adjacency() const {
  std::vector<std::vector<int>> adj(num_qubits);
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

nlohmann::json CouplingMap::to_json() const {
  nlohmann::json j;
  j["num_qubits"] = num_qubits;
  auto arr = nlohmann::json::array();
  for (const auto& e : edges) arr.push_back({e[0], e[1]});
  j["edges"] = std::move(arr);
  return j;
}

CouplingMap CouplingMap::from_json(const nlohmann::json& j) {
  CouplingMap m;
  m.num_qubits = j.at("num_qubits").get<int>();
  for (const auto& e : j.at("edges"))
    m.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return m;
}

void CouplingMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_json().dump(2) << "\n";
}

CouplingMap CouplingMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

CouplingMap heavy_hex(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("heavy_hex needs rows, cols >= 1");
  // Brick row r spans columns [2*(r%2), 2*(r%2) + 4*cols]; rail g covers the
  // extents of the brick rows above and below it.
  auto brick_lo = [&](int r) { return 2 * (r % 2); };
  auto brick_hi = [&](int r) { return 2 * (r % 2) + 4 * cols; };
  auto rail_lo = [&](int g) {
    if (g == 0) return brick_lo(0);
    if (g == rows) return brick_lo(rows - 1);
    return std::min(brick_lo(g - 1), brick_lo(g));
  };
  auto rail_hi = [&](int g) {
    if (g == 0) return brick_hi(0);
    if (g == rows) return brick_hi(rows - 1);
    return std::max(brick_hi(g - 1), brick_hi(g));
  };

  std::map<std::pair<int, int>, int> id;  // (row, col) -> qubit; bridges at odd rows
  int next = 0;
  for (int g = 0; g <= rows; ++g) {
    for (int x = rail_lo(g); x <= rail_hi(g); ++x) id[{2 * g, x}] = next++;
    if (g < rows)
      for (int k = 0; k <= cols; ++k) id[{2 * g + 1, brick_lo(g) + 4 * k}] = next++;
  }

  CouplingMap map;
  map.num_qubits = next;
  for (int g = 0; g <= rows; ++g)
    for (int x = rail_lo(g); x < rail_hi(g); ++x)
      map.add_edge(id.at({2 * g, x}), id.at({2 * g, x + 1}));
  for (int g = 0; g < rows; ++g)
    for (int k = 0; k <= cols; ++k) {
      int x = brick_lo(g) + 4 * k;
      int bridge = id.at({2 * g + 1, x});
      map.add_edge(id.at({2 * g, x}), bridge);
      map.add_edge(bridge, id.at({2 * g + 2, x}));
    }
  return map;
}

CouplingMap heavy_hex_heron() {
  // 8 rails of 16 qubits, 7 bridge rows of 4; block of 20 per rail+bridge row.
  constexpr int kRails = 8, kWidth = 16;
  CouplingMap map;
  map.num_qubits = kRails * kWidth + (kRails - 1) * 4;
  auto rail = [&](int g, int x) { return 20 * g + x; };
  auto bridge = [&](int g, int j) { return 20 * g + kWidth + j; };
  for (int g = 0; g < kRails; ++g)
    for (int x = 0; x + 1 < kWidth; ++x) map.add_edge(rail(g, x), rail(g, x + 1));
  for (int g = 0; g + 1 < kRails; ++g)
    for (int j = 0; j < 4; ++j) {
      int x = (g % 2 ? 2 : 0) + 4 * j;
      map.add_edge(rail(g, x), bridge(g, j));
      map.add_edge(bridge(g, j), rail(g + 1, x));
    }
  return map;
}

CouplingMap crop(const CouplingMap& map, int num_qubits) {
  if (num_qubits < 1 || num_qubits > map.num_qubits)
    throw std::invalid_argument("crop size out of range");
  auto adj = map.adjacency();
  std::vector<int> order;
  std::vector<int> label(map.num_qubits, -1);
  std::deque<int> frontier{0};
  label[0] = 0;
  order.push_back(0);
  while (!frontier.empty() && static_cast<int>(order.size()) < num_qubits) {
    int v = frontier.front();
    frontier.pop_front();
    for (int w : adj[v]) {
      if (label[w] >= 0) continue;
      label[w] = static_cast<int>(order.size());
      order.push_back(w);
      frontier.push_back(w);
      if (static_cast<int>(order.size()) == num_qubits) break;
    }
  }
  if (static_cast<int>(order.size()) < num_qubits)
    throw std::invalid_argument("map is too disconnected for requested crop");
  CouplingMap out;
  out.num_qubits = num_qubits;
  for (const auto& e : map.edges) {
    int a = label[e[0]], b = label[e[1]];
    if (a >= 0 && a < num_qubits && b >= 0 && b < num_qubits) out.add_edge(a, b);
  }
  return out;
}

ParallelSets graph_coloring(const CouplingMap& map, std::uint64_t seed) {
  ParallelSets sets;

  // Edges: greedy first-fit into matchings.
  {
    std::vector<std::array<int, 2>> order = map.edges;
    Rng rng(derive_stream(seed, 0));
    rng.shuffle(order);
    std::vector<std::vector<std::uint8_t>> used;  // per set, per qubit
    for (const auto& e : order) {
      std::size_t slot = 0;
      for (; slot < sets.two_body.size(); ++slot)
        if (!used[slot][e[0]] && !used[slot][e[1]]) break;
      if (slot == sets.two_body.size()) {
        sets.two_body.emplace_back();
        used.emplace_back(map.num_qubits, 0);
      }
      sets.two_body[slot].push_back(e);
      used[slot][e[0]] = used[slot][e[1]] = 1;
    }
    for (auto& s : sets.two_body) std::sort(s.begin(), s.end());
  }

  // Ordered length-2 paths (p, q, r), q the centre; both orientations are
  // enumerated, so each covers every ordered path exactly once.
  {
    auto adj = map.adjacency();
    std::vector<std::array<int, 3>> paths;
    for (int q = 0; q < map.num_qubits; ++q)
      for (int p : adj[q])
        for (int r : adj[q])
          if (p != r) paths.push_back({p, q, r});
    Rng rng(derive_stream(seed, 1));
    rng.shuffle(paths);
    std::vector<std::vector<std::uint8_t>> used;
    for (const auto& t : paths) {
      std::size_t slot = 0;
      for (; slot < sets.three_body.size(); ++slot)
        if (!used[slot][t[0]] && !used[slot][t[1]] && !used[slot][t[2]]) break;
      if (slot == sets.three_body.size()) {
        sets.three_body.emplace_back();
        used.emplace_back(map.num_qubits, 0);
      }
      sets.three_body[slot].push_back(t);
      used[slot][t[0]] = used[slot][t[1]] = used[slot][t[2]] = 1;
    }
    for (auto& s : sets.three_body) std::sort(s.begin(), s.end());
  }
  return sets;
}

CouplingMap swap_register(const CouplingMap& map,
                          const std::vector<std::array<int, 2>>& swaps) {
  std::vector<int> perm(map.num_qubits);
  for (int i = 0; i < map.num_qubits; ++i) perm[i] = i;
  std::vector<std::uint8_t> touched(map.num_qubits, 0);
  for (const auto& pair : swaps) {
    if (!map.has_edge(pair[0], pair[1]))
      throw std::invalid_argument("swap pair is not an edge of the map");
    if (touched[pair[0]] || touched[pair[1]])
      throw std::invalid_argument("swap pairs overlap; not a matching");
    touched[pair[0]] = touched[pair[1]] = 1;
    std::swap(perm[pair[0]], perm[pair[1]]);
  }
  CouplingMap out;
  out.num_qubits = map.num_qubits;
  for (const auto& e : map.edges) out.add_edge(perm[e[0]], perm[e[1]]);
  return out;
}

int LayoutPlan::selected_pair_count() const {
  int n = 0;
  for (const auto& round : chosen_two_body)
    for (const auto& set : round) n += static_cast<int>(set.size());
  return n;
}

int LayoutPlan::selected_triple_count() const {
  int n = 0;
  for (const auto& round : chosen_three_body)
    for (const auto& set : round) n += static_cast<int>(set.size());
  return n;
}

namespace {

template <std::size_t K>
nlohmann::json tuples_to_json(const std::vector<std::array<int, K>>& tuples) {
  auto arr = nlohmann::json::array();
  for (const auto& t : tuples) {
    auto item = nlohmann::json::array();
    for (int v : t) item.push_back(v);
    arr.push_back(std::move(item));
  }
  return arr;
}

template <std::size_t K>
std::vector<std::array<int, K>> tuples_from_json(const nlohmann::json& arr) {
  std::vector<std::array<int, K>> out;
  for (const auto& item : arr) {
    std::array<int, K> t{};
    for (std::size_t i = 0; i < K; ++i) t[i] = item.at(i).get<int>();
    out.push_back(t);
  }
  return out;
}

}  // namespace

nlohmann::json LayoutPlan::to_json() const {
  nlohmann::json j;
  j["num_qubits"] = num_qubits;
  j["swap_rounds"] = params.swap_rounds;
  j["s2q"] = params.s2q;
  j["s3q"] = params.s3q;
  j["seed"] = params.seed;
  j["m2_per_round"] = m2_per_round;
  j["m3_per_round"] = m3_per_round;
  j["clamped"] = clamped;
  auto rounds2 = nlohmann::json::array();
  for (const auto& round : chosen_two_body) {
    auto sets = nlohmann::json::array();
    for (const auto& set : round) sets.push_back(tuples_to_json<2>(set));
    rounds2.push_back(std::move(sets));
  }
  j["two_body"] = std::move(rounds2);
  auto rounds3 = nlohmann::json::array();
  for (const auto& round : chosen_three_body) {
    auto sets = nlohmann::json::array();
    for (const auto& set : round) sets.push_back(tuples_to_json<3>(set));
    rounds3.push_back(std::move(sets));
  }
  j["three_body"] = std::move(rounds3);
  auto swaps = nlohmann::json::array();
  for (const auto& layer : swap_layers) swaps.push_back(tuples_to_json<2>(layer));
  j["swap_layers"] = std::move(swaps);
  return j;
}

LayoutPlan LayoutPlan::from_json(const nlohmann::json& j) {
  LayoutPlan plan;
  plan.num_qubits = j.at("num_qubits").get<int>();
  plan.params.swap_rounds = j.at("swap_rounds").get<int>();
  plan.params.s2q = j.at("s2q").get<int>();
  plan.params.s3q = j.at("s3q").get<int>();
  plan.params.seed = j.at("seed").get<std::uint64_t>();
  plan.m2_per_round = j.at("m2_per_round").get<std::vector<int>>();
  plan.m3_per_round = j.at("m3_per_round").get<std::vector<int>>();
  plan.clamped = j.at("clamped").get<bool>();
  for (const auto& round : j.at("two_body")) {
    plan.chosen_two_body.emplace_back();
    for (const auto& set : round)
      plan.chosen_two_body.back().push_back(tuples_from_json<2>(set));
  }
  for (const auto& round : j.at("three_body")) {
    plan.chosen_three_body.emplace_back();
    for (const auto& set : round)
      plan.chosen_three_body.back().push_back(tuples_from_json<3>(set));
  }
  for (const auto& layer : j.at("swap_layers"))
    plan.swap_layers.push_back(tuples_from_json<2>(layer));
  return plan;
}

void LayoutPlan::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_json().dump(2) << "\n";
}

LayoutPlan LayoutPlan::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

LayoutPlan generate_layout(const CouplingMap& c0, const LayoutParams& params) {
  if (params.swap_rounds < 1)
    throw std::invalid_argument("at least one round is required");
  if (params.s2q < 0 || params.s3q < 0)
    throw std::invalid_argument("set counts must be non-negative");

  LayoutPlan plan;
  plan.num_qubits = c0.num_qubits;
  plan.params = params;

  CouplingMap current = c0;
  for (int round = 0; round < params.swap_rounds; ++round) {
    ParallelSets sets =
        graph_coloring(current, derive_stream(params.seed, round));
    plan.m2_per_round.push_back(static_cast<int>(sets.two_body.size()));
    plan.m3_per_round.push_back(static_cast<int>(sets.three_body.size()));

    // The s largest sets, ties broken by colouring index.
    auto pick = [&](const auto& all, int want, auto& dest) {
      std::vector<int> idx(all.size());
      for (std::size_t i = 0; i < all.size(); ++i) idx[i] = static_cast<int>(i);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return all[a].size() > all[b].size();
      });
      int take = std::min<int>(want, static_cast<int>(all.size()));
      if (want > take) plan.clamped = true;
      dest.emplace_back();
      for (int i = 0; i < take; ++i) dest.back().push_back(all[idx[i]]);
    };
    pick(sets.two_body, params.s2q, plan.chosen_two_body);
    pick(sets.three_body, params.s3q, plan.chosen_three_body);

    if (round + 1 < params.swap_rounds) {
      if (sets.two_body.empty())
        throw std::runtime_error("no matching available for the SWAP layer");
      plan.swap_layers.push_back(sets.two_body.front());
      current = swap_register(current, sets.two_body.front());
    }
  }
  return plan;
}

HuboInstance instantiate(const LayoutPlan& layout,
                         const CoefficientSampler& sampler, std::uint64_t seed) {
  Rng stream(derive_stream(seed, 0));
  HuboInstance inst(layout.num_qubits);
  for (int i = 0; i < layout.num_qubits; ++i)
    inst.add_linear(i, sampler.sample(stream));
  for (int round = 0; round < layout.params.swap_rounds; ++round) {
    for (const auto& set : layout.chosen_two_body[round])
      for (const auto& pair : set)
        inst.add_quadratic(pair[0], pair[1], sampler.sample(stream));
    for (const auto& set : layout.chosen_three_body[round])
      for (const auto& triple : set)
        inst.add_cubic(triple[0], triple[1], triple[2], sampler.sample(stream));
  }
  inst.metadata()["generator"] = {{"kind", "layout"},
                                  {"coefficient_seed", seed},
                                  {"selected_pairs", layout.selected_pair_count()},
                                  {"selected_triples", layout.selected_triple_count()}};
  inst.metadata()["layout"] = layout.to_json();
  inst.metadata()["sampler"] = sampler.describe();
  inst.metadata()["duplicates_accumulated"] = inst.accumulated_duplicates();
  return inst;
}

}  // namespace hubo
