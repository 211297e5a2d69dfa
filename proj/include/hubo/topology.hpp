#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hubo/instance.hpp"
#include "hubo/sampler.hpp"

namespace hubo {

/// Simple undirected device connectivity graph.
struct CouplingMap {
  int num_qubits = 0;
  std::vector<std::array<int, 2>> edges;  // each {a,b} with a < b, sorted, unique

  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  std::vector<std::vector<int>> adjacency() const;

  nlohmann::json to_json() const;
  static CouplingMap from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static CouplingMap load(const std::string& path);

  bool operator==(const CouplingMap& other) const {
    return num_qubits == other.num_qubits && edges == other.edges;
  }
};

/// Heavy-hexagonal patch of `rows` x `cols` hexagon cells drawn as a brick
/// wall: horizontal rails of qubits joined by vertical bridge qubits, bricks
/// in odd rows offset by half a cell. heavy_hex(1, 1) is a single hexagon
/// with its bridge qubits, a 12-cycle.
CouplingMap heavy_hex(int rows, int cols);

/// Named preset for the 156-qubit Heron-class lattice: 8 rails of 16 qubits
/// with 7 interleaved rows of 4 bridge qubits, bridge columns alternating
/// {0,4,8,12} / {2,6,10,14}. Matches data/heron156.json, which ships as the
/// reference adjacency.
CouplingMap heavy_hex_heron();

/// Connected n-qubit subgraph: BFS from qubit 0 (neighbors in ascending
/// order), keep the first n qubits reached, relabel in visit order. Used to
/// cut desk-scale patches of arbitrary size out of a lattice.
CouplingMap crop(const CouplingMap& map, int num_qubits);

/// Interaction sets executable in parallel on a coupling map.
///
/// two_body:   matchings; together they cover every edge exactly once.
/// three_body: sets of qubit-disjoint ordered triples (p,q,r), where (p,q)
///             and (q,r) are edges (q is the centre); together they cover
///             every ordered length-2 path exactly once, so each underlying
///             path contributes both orientations across the collection.
struct ParallelSets {
  std::vector<std::vector<std::array<int, 2>>> two_body;
  std::vector<std::vector<std::array<int, 3>>> three_body;
};

/// Greedy first-fit colouring of edges and ordered length-2 paths; the seed
/// permutes iteration order. Deterministic for a fixed seed.
ParallelSets graph_coloring(const CouplingMap& map, std::uint64_t seed);

/// Relabel the map by the transpositions in `swaps`. Every pair must be an
/// existing edge and no qubit may appear twice. The result is isomorphic to
/// the input.
CouplingMap swap_register(const CouplingMap& map,
                          const std::vector<std::array<int, 2>>& swaps);

struct LayoutParams {
  int swap_rounds = 1;  // n: colour/select rounds; n-1 SWAP layers applied
  int s2q = 1;
  int s3q = 1;
  std::uint64_t seed = 0;
};

/// Selected interaction structure, per colour/select round.
struct LayoutPlan {
  int num_qubits = 0;
  LayoutParams params;
  // chosen_two_body[i] / chosen_three_body[i]: sets selected in round i,
  // largest set first. Labels are original qubit indices (the accumulated
  // SWAP permutations are already folded in by the relabelling step).
  std::vector<std::vector<std::vector<std::array<int, 2>>>> chosen_two_body;
  std::vector<std::vector<std::vector<std::array<int, 3>>>> chosen_three_body;
  std::vector<std::vector<std::array<int, 2>>> swap_layers;  // size n-1
  std::vector<int> m2_per_round;
  std::vector<int> m3_per_round;
  bool clamped = false;  // s2q/s3q exceeded available sets in some round

  int selected_pair_count() const;
  int selected_triple_count() const;
  /// One-body + selected pair + selected triple interaction total.
  int term_count() const { return num_qubits + selected_pair_count() + selected_triple_count(); }

  nlohmann::json to_json() const;
  static LayoutPlan from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static LayoutPlan load(const std::string& path);
};

/// One pass of the layout strategy: per round, colour the current map, take
/// the s2q/s3q largest pair/triple sets, then (except after the last round)
/// relabel the map by the first matching, which acts as the SWAP layer.
/// Oversized s2q/s3q are clamped to the available set count.
LayoutPlan generate_layout(const CouplingMap& c0, const LayoutParams& params);

/// Sample one coefficient for every qubit, every selected pair and every
/// selected triple (in layout order). Coefficients landing on an already
/// present hyperedge accumulate; the count is recorded in metadata.
HuboInstance instantiate(const LayoutPlan& layout,
                         const CoefficientSampler& sampler, std::uint64_t seed);

}  // namespace hubo
