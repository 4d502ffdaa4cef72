#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "hybridgen/fock.hpp"

namespace hybridgen {

inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// One coherent arm: displacement alpha and input amplitude beta, tied by
// alpha = beta r / t.
struct Arm {
  double alpha = 0.0;
  double beta = 0.0;

  static Arm from_alpha(double alpha, double t);
  static Arm from_beta(double beta, double t);
};

// Per-mode truncation overrides; zero selects the automatic dimension.
struct TruncationOverrides {
  std::size_t coherent_dim = 0;
  std::size_t aux_dim = 0;
};

struct SchemeConfig {
  Complex a0{kInvSqrt2};
  Complex a1{kInvSqrt2};
  double t = 0.99;
  Arm arm{};      // SCS arm (mode 1)
  Arm aux_arm{};  // auxiliary coherent arm (mode 2, dual-rail scheme only)
  int herald_max = 10;
  double delta = 0.0;  // relative phase used by the balancing helpers
  TruncationOverrides truncation{};
  FockConfig fock{};

  double r() const { return std::sqrt(1.0 - t * t); }
  double alpha() const { return arm.alpha; }
  double beta() const { return arm.beta; }

  // Single-rail scheme parameterized by displacement alpha (or beta).
  static SchemeConfig from_alpha(double alpha, double t, Complex a0 = kInvSqrt2,
                                 Complex a1 = kInvSqrt2);
  static SchemeConfig from_beta(double beta, double t, Complex a0 = kInvSqrt2,
                                Complex a1 = kInvSqrt2);
  // Dual-rail scheme; alpha1 defaults to alpha.
  static SchemeConfig dual_from_alpha(double alpha, double alpha1, double t,
                                      Complex a0 = kInvSqrt2,
                                      Complex a1 = kInvSqrt2);

  SchemeConfig with_amplitudes(Complex a0, Complex a1) const;

  // Throws ConfigError when an invariant is violated.
  void validate() const;
};

}  // namespace hybridgen
