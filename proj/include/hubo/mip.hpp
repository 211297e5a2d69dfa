#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hubo/instance.hpp"

namespace hubo {
namespace mip {

/// a <= x_i, a <= x_j, a >= x_i + x_j - 1 rendered as rows of a linear
/// inequality sum(coeff * var) <= rhs.
struct Constraint {
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  double rhs = 0.0;
  std::string name;
};

/// Linearized binary program equivalent to a cubic binary polynomial.
///
/// Variables are ordered: originals x0..x_{N-1}, then product auxiliaries
/// a{i}_{j} (one per distinct pair product), then b{i}_{j}_{k} (one per cubic
/// term). Each pair product costs 1 auxiliary + 3 constraints, each cubic
/// term 1 more auxiliary + 3 more constraints on top of its stage-1 pair.
/// A stage-1 pair (two lowest indices of the cubic) that already exists as a
/// quadratic auxiliary is reused rather than duplicated.
struct MipModel {
  int num_originals = 0;
  std::vector<std::string> var_names;
  std::vector<double> objective;  // linear coefficient per variable
  double objective_offset = 0.0;
  std::vector<Constraint> constraints;
  // pair_aux[(i,j)] -> variable index of a{i}_{j}
  std::map<std::array<int, 2>, int> pair_aux;
  // cubic_aux[(i,j,k)] -> variable index of b{i}_{j}_{k}
  std::map<std::array<int, 3>, int> cubic_aux;

  int num_vars() const { return static_cast<int>(var_names.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }

  /// Objective at a binary assignment of the originals with every auxiliary
  /// forced to the product it represents.
  double objective_at(const std::vector<std::uint8_t>& x) const;

  /// Completion of `x` with forced auxiliaries (originals first).
  std::vector<double> forced_assignment(const std::vector<std::uint8_t>& x) const;

  /// True when `assignment` (full variable vector) satisfies every
  /// constraint within tol.
  bool feasible(const std::vector<double>& assignment, double tol = 1e-9) const;
};

MipModel linearize(const BinaryPoly& poly);
MipModel linearize(const HuboInstance& inst);  // via to_binary

struct PredictedSize {
  long long vars = 0;
  long long constraints = 0;
};

/// Size of the unshared per-term linearization of a problem with
/// `num_quadratic` pair terms and `num_cubic` triple terms:
/// vars = N + Q + 2C, constraints = 3Q + 6C.
PredictedSize predicted_size(long long num_vars, long long num_quadratic,
                             long long num_cubic);

/// CPLEX-style LP text: minimize objective, subject-to rows, binary section.
/// Deterministic variable ordering; objective constant written inline.
void export_lp(const MipModel& model, const std::string& path);
std::string to_lp_string(const MipModel& model);

/// Warm-start file: one "name value" pair per line, originals assigned from
/// the spin configuration (x = (1-s)/2) and auxiliaries set to their implied
/// products. Feasible by construction.
void export_warm_start(const MipModel& model, const SpinConfig& s,
                       const std::string& path);
std::string to_warm_start_string(const MipModel& model, const SpinConfig& s);

/// Incumbent log of an external exact solver.
struct IncumbentTrace {
  std::vector<std::pair<double, double>> points;  // (wall seconds, objective)
  bool proven_optimal = false;

  /// Parse CSV lines "seconds,objective" with an optional final "optimal".
  /// Times must be strictly increasing and objectives non-increasing.
  /// Throws std::runtime_error naming the offending line otherwise.
  static IncumbentTrace parse(const std::string& text);
  static IncumbentTrace load(const std::string& path);
};

/// Earliest wall time at which the trace objective is <= e_ref (within 1e-9).
/// Empty optional when the level is never reached.
std::optional<double> time_to_reach(const IncumbentTrace& trace, double e_ref);

}  // namespace mip
}  // namespace hubo
