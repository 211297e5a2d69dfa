#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "hubo/rng.hpp"

namespace hubo {

/// Heavy-tailed coefficient distributions used to control instance hardness.
///
/// Cauchy:          standard Cauchy(0,1) via inverse CDF, tan(pi (u - 1/2)).
/// SymmetricPareto: magnitude from the standard Pareto (scale 1, shape alpha,
///                  density alpha / xi^(alpha+1) for xi >= 1), sign from a
///                  fair coin.
/// Constant:        fixed value, for tests and calibration runs.
///
/// An optional truncation bound B rejects and redraws until |value| <= B
/// (clamping would put probability atoms at +-B and distort hardness).
class CoefficientSampler {
 public:
  enum class Kind { Cauchy, SymmetricPareto, Constant };

  static CoefficientSampler cauchy(std::optional<double> truncation = {});
  static CoefficientSampler symmetric_pareto(double alpha,
                                             std::optional<double> truncation = {});
  static CoefficientSampler constant(double value);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::optional<double> truncation() const { return truncation_; }

  /// One draw from `rng`. Stateless w.r.t. the sampler itself; all stream
  /// state lives in the caller-owned generator.
  double sample(Rng& rng) const;

  nlohmann::json describe() const;  // embedded in instance metadata
  static CoefficientSampler from_json(const nlohmann::json& j);
  static std::string kind_name(Kind k);

 private:
  CoefficientSampler(Kind kind, double alpha, double value,
                     std::optional<double> truncation);

  Kind kind_;
  double alpha_ = 0.0;   // Pareto shape
  double value_ = 0.0;   // Constant value
  std::optional<double> truncation_;
};

}  // namespace hubo
