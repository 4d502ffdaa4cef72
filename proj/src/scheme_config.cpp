#include "hybridgen/scheme_config.hpp"

#include <cmath>

#include "hybridgen/errors.hpp"

namespace hybridgen {

namespace {

void require_transmittance(double t) {
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("t must lie in (0, 1)");
}

}  // namespace

Arm Arm::from_alpha(double alpha, double t) {
  require_transmittance(t);
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  return {alpha, alpha * t / std::sqrt(1.0 - t * t)};
}

Arm Arm::from_beta(double beta, double t) {
  require_transmittance(t);
  if (!std::isfinite(beta)) throw ConfigError("beta must be finite");
  return {beta * std::sqrt(1.0 - t * t) / t, beta};
}

SchemeConfig SchemeConfig::from_alpha(double alpha, double t, Complex a0,
                                      Complex a1) {
  SchemeConfig cfg;
  cfg.t = t;
  cfg.arm = Arm::from_alpha(alpha, t);
  cfg.aux_arm = cfg.arm;
  cfg.a0 = a0;
  cfg.a1 = a1;
  return cfg;
}

SchemeConfig SchemeConfig::from_beta(double beta, double t, Complex a0,
                                     Complex a1) {
  SchemeConfig cfg;
  cfg.t = t;
  cfg.arm = Arm::from_beta(beta, t);
  cfg.aux_arm = cfg.arm;
  cfg.a0 = a0;
  cfg.a1 = a1;
  return cfg;
}

SchemeConfig SchemeConfig::dual_from_alpha(double alpha, double alpha1,
                                           double t, Complex a0, Complex a1) {
  SchemeConfig cfg = from_alpha(alpha, t, a0, a1);
  cfg.aux_arm = Arm::from_alpha(alpha1, t);
  cfg.herald_max = 8;
  return cfg;
}

SchemeConfig SchemeConfig::with_amplitudes(Complex a0_, Complex a1_) const {
  SchemeConfig cfg = *this;
  cfg.a0 = a0_;
  cfg.a1 = a1_;
  return cfg;
}

void SchemeConfig::validate() const {
  require_transmittance(t);
  if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > 1e-12) {
    throw ConfigError("qubit amplitudes must satisfy |a0|^2 + |a1|^2 = 1");
  }
  const double rr = r();
  for (const Arm* a : {&arm, &aux_arm}) {
    if (!(a->beta > 0.0)) throw ConfigError("coherent amplitude beta must be positive");
    if (std::abs(a->alpha * t - a->beta * rr) > 1e-12 * (1.0 + a->beta)) {
      throw ConfigError("alpha and beta are inconsistent with alpha = beta r / t");
    }
  }
  if (herald_max < 0) throw ConfigError("herald_max must be non-negative");
}

}  // namespace hybridgen
