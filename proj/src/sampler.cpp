#include "hubo/sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hubo {

CoefficientSampler::CoefficientSampler(Kind kind, double alpha, double value,
                                       std::optional<double> truncation)
    : kind_(kind), alpha_(alpha), value_(value), truncation_(truncation) {
  if (kind == Kind::SymmetricPareto && alpha <= 0.0)
    throw std::invalid_argument("Pareto shape must be positive");
  if (truncation_ && *truncation_ <= 0.0)
    throw std::invalid_argument("truncation bound must be positive");
  if (kind == Kind::SymmetricPareto && truncation_ && *truncation_ < 1.0)
    throw std::invalid_argument("Pareto magnitudes are >= 1; bound below 1 never accepts");
}

CoefficientSampler CoefficientSampler::cauchy(std::optional<double> truncation) {
  return {Kind::Cauchy, 0.0, 0.0, truncation};
}

CoefficientSampler CoefficientSampler::symmetric_pareto(
    double alpha, std::optional<double> truncation) {
  return {Kind::SymmetricPareto, alpha, 0.0, truncation};
}

CoefficientSampler CoefficientSampler::constant(double value) {
  return {Kind::Constant, 0.0, value, {}};
}

double CoefficientSampler::sample(Rng& rng) const {
  if (kind_ == Kind::Constant) return value_;
  for (;;) {
    double v;
    if (kind_ == Kind::Cauchy) {
      // Inverse CDF; u = 1/2 maps to 0, the endpoints to the tails.
      double u = rng.uniform01();
      v = std::tan(std::numbers::pi * (u - 0.5));
    } else {
      // Magnitude by inverse CDF of F(m) = 1 - m^-alpha on [1, inf);
      // 1 - u lies in (0, 1] so the power stays finite.
      double u = rng.uniform01();
      double magnitude = std::pow(1.0 - u, -1.0 / alpha_);
      v = rng.coin() ? -magnitude : magnitude;
    }
    if (!truncation_ || std::abs(v) <= *truncation_) return v;
  }
}

nlohmann::json CoefficientSampler::describe() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind_);
  if (kind_ == Kind::SymmetricPareto) j["alpha"] = alpha_;
  if (kind_ == Kind::Constant) j["value"] = value_;
  if (truncation_) j["truncation"] = *truncation_;
  return j;
}

CoefficientSampler CoefficientSampler::from_json(const nlohmann::json& j) {
  std::optional<double> trunc;
  if (j.contains("truncation")) trunc = j.at("truncation").get<double>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cauchy") return cauchy(trunc);
  if (kind == "symmetric_pareto")
    return symmetric_pareto(j.at("alpha").get<double>(), trunc);
  if (kind == "constant") return constant(j.at("value").get<double>());
  throw std::invalid_argument("unknown sampler kind: " + kind);
}

std::string CoefficientSampler::kind_name(Kind k) {
  switch (k) {
    case Kind::Cauchy: return "cauchy";
    case Kind::SymmetricPareto: return "symmetric_pareto";
    case Kind::Constant: return "constant";
  }
  return "?";
}

}  // namespace hubo
