#pragma once

#include <cstddef>
#include <utility>

#include "hybridgen/fock.hpp"
#include "hybridgen/scheme_config.hpp"

namespace hybridgen {

// Two qubit amplitudes. Single-rail: (|0>, |1>). Dual-rail: (|01>, |10>).
struct QubitAmplitudes {
  Complex zero{};
  Complex one{};
};

// N_tot (|-beta>|q+> + sign |beta>|q->) with the single-rail qubit in mode 2.
struct HybridStateA {
  int n = 0;
  double beta = 0.0;
  QubitAmplitudes qubit_plus;
  QubitAmplitudes qubit_minus;
  double qubit_norm = 1.0;  // 0 at a pole (limit of the closed form)
  double total_norm = 1.0;
  int sign = -1;            // (-1)^(n-1)
  bool pole = false;
  bool degenerate = false;  // both branches vanish: the herald never fires

  // Modes (1, 2) with dims (dim, 2).
  MultiModeState materialize(std::size_t dim) const;
};

// Same structure with a dual-rail qubit on modes (3, 4).
struct HybridStateB {
  int n = 0;
  int m = 0;
  double beta = 0.0;
  QubitAmplitudes qubit_plus;
  QubitAmplitudes qubit_minus;
  double qubit_norm = 1.0;
  double total_norm = 1.0;
  int sign = 1;  // (-1)^n
  bool pole = false;
  bool degenerate = false;

  // Modes (1, 3, 4) with dims (dim, 2, 2).
  MultiModeState materialize(std::size_t dim) const;
};

HybridStateA hybrid_state_a(int n, const SchemeConfig& cfg);
HybridStateB hybrid_state_b(int n, int m, const SchemeConfig& cfg);

// Limit-case herald probabilities. Pole heralds use the regrouped form
// that never divides by c_1n.
double success_prob_a(int n, const SchemeConfig& cfg);
double success_prob_b(int n, int m, const SchemeConfig& cfg);

// Magnitudes (|a0|, |a1|) that make the heralded qubit weights equal.
std::pair<double, double> balanced_condition_a(int n, double alpha);
std::pair<double, double> balanced_condition_b(int n, int m, double alpha,
                                               double alpha1);

// cfg with balancing amplitudes; arg(a1) is chosen so that the relative
// phase of the heralded qubit equals cfg.delta.
SchemeConfig balanced_config_a(int n, const SchemeConfig& cfg);
SchemeConfig balanced_config_b(int n, int m, const SchemeConfig& cfg);

// 4 N+^2 F^2 |c_1n|^2 |A_n|^2 / (1 + |A_n|^2). Throws at a pole.
double success_prob_balanced_a(int n, const SchemeConfig& cfg);
// Same quantity written as 4 N+^2 F^2 |c_0n c_1n|^2 / (|c_0n|^2 + |c_1n|^2),
// continuous through the pole (where it vanishes).
double balanced_probability_a(int n, double alpha, double beta);

// 2 N+^2 F^4 |c_0n|^2 |c_1n|^2 for n = m and alpha1 = alpha.
double success_prob_balanced_b(int n, const SchemeConfig& cfg);
// Balanced dual-rail probability for n != m:
// 4 N+^2 F^2(alpha) F^2(alpha1) |c_0n(alpha) c_1m(alpha1)|^2 |A|^2 / (1 + |A|^2).
double success_prob_weighted_b(int n, int m, const SchemeConfig& cfg);

// Balanced dual-rail probability in the pole-free form
// 4 N+^2 F^2(alpha) F^2(alpha1) x y / (x + y), x = |c_0n(alpha) c_1m(alpha1)|^2,
// y = |c_1n(alpha) c_0m(alpha1)|^2. Vanishes at a pole.
double balanced_probability_b(int n, int m, double alpha, double alpha1,
                              double beta);

// Sum of the (0,0), (1,1), (0,1), (1,0) balanced probabilities at
// alpha = alpha1 = 1/sqrt(2).
double fig4_total_probability(double t);

// Roots of gamma^2 + gamma - n = 0.
std::pair<double, double> gamma_balancing_roots(int n);

// Two-mode squeezed ancilla N (|00> + lambda |11>) in the low-gain limit.
MultiModeState two_mode_squeezed_ancilla(double lambda);

struct SqueezedQubit {
  QubitAmplitudes plus;
  QubitAmplitudes minus;
  bool pole = false;  // c_1n = 0: only the vacuum component survives
};

// normalize(1, +-lambda / A_n).
SqueezedQubit squeezed_variant_qubit(int n, double lambda, Complex alpha);

// Heralded probability with the squeezed ancilla (branch sign (-1)^n).
double squeezed_success_prob(int n, double lambda, const SchemeConfig& cfg);

// Ideal heralded state of the squeezed variant on modes (1, 2), dims (dim, 2).
MultiModeState squeezed_hybrid_state(int n, double lambda,
                                     const SchemeConfig& cfg, std::size_t dim);

// N (w_minus |-beta> + w_plus |beta>).
struct CatQubit {
  double beta = 0.0;
  Complex minus_weight{};
  Complex plus_weight{};

  double normalization() const;
  MultiModeState materialize(std::size_t dim) const;
};

enum class ConverterReading { Corrected, Literal };

// States heralded on |01> and |10> after mixing the photon modes of the
// balanced dual-rail hybrid state. herald_parity selects the (-1)^n sign.
std::pair<CatQubit, CatQubit> converter_states(
    double beta, double t, ConverterReading reading = ConverterReading::Corrected,
    int herald_parity = 0);

// (|-beta>|01> + (-1)^n |beta>|10>) / sqrt(2) on modes (1, 2, 3).
MultiModeState converter_input_state(double beta, int herald_parity,
                                     std::size_t dim);

// Replaces the dual-rail pair (mode_a, mode_b) by one two-level mode at the
// position of mode_a: |01> -> level 0 (H), |10> -> level 1 (V).
MultiModeState relabel_polarization(const MultiModeState& s, std::size_t mode_a,
                                    std::size_t mode_b);
// Inverse map: splits a two-level mode into a dual-rail pair.
MultiModeState relabel_dual_rail(const MultiModeState& s, std::size_t mode);

// Abstract Hadamard on a single-rail qubit mode (support on levels 0, 1).
MultiModeState hadamard_qubit(const MultiModeState& s, std::size_t mode);
// Abstract Hadamard on a dual-rail qubit with logical 0 = |01>, 1 = |10>.
MultiModeState hadamard_dual_rail(const MultiModeState& s, std::size_t mode_a,
                                  std::size_t mode_b);

}  // namespace hybridgen
