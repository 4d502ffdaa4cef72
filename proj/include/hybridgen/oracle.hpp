#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "hybridgen/fock.hpp"
#include "hybridgen/scheme_config.hpp"

namespace hybridgen {

inline constexpr double kTailTol = 1e-10;
// Probability lost beyond the herald range that triggers a truncation flag.
inline constexpr double kHeraldTailThreshold = 1e-6;
// Minimum overlap of the auxiliary mode with its expected coherent state.
inline constexpr double kFactorizationThreshold = 1.0 - 1e-3;

// Mode transform a1+ -> t a1+ - r a2+, a2+ -> r a1+ + t a2+. `mirrored`
// flips the sign of r; it exists only as a negative control.
struct BeamSplitterSpec {
  double t = 1.0;
  double r = 0.0;
  bool mirrored = false;

  static BeamSplitterSpec from_transmittance(double t);
  void validate() const;
};

// ceil(|mu|^2 + 8|mu| + 20): Poisson tail past mean + 8 sigma.
std::size_t truncation_dim(Complex mu);

MultiModeState coherent_state(Complex alpha, std::size_t dim,
                              double tail_tol = kTailTol);

enum class Parity { Even, Odd };

// (2 (1 +- exp(-2 beta^2)))^(-1/2).
double scs_normalization(double beta, Parity parity);

MultiModeState scs_state(double beta, Parity parity, std::size_t dim,
                         double tail_tol = kTailTol);

// D(alpha)|l> truncated to dim levels.
MultiModeState displaced_number_state(int l, Complex alpha, std::size_t dim,
                                      double tail_tol = kTailTol);

// U|p,q> expanded over k = 0..p+q photons in the first output mode,
// built by iterating the creation-operator transform.
std::vector<double> bs_block_column(int p, int q, const BeamSplitterSpec& spec);

// <k,n|U|p,q> from the binomial closed form, summed in the log domain.
double bs_element(int k, int n, int p, int q, const BeamSplitterSpec& spec);

Operator bs_unitary(const BeamSplitterSpec& spec, std::size_t dim_a,
                    std::size_t dim_b);

Operator displacement_operator(Complex alpha, std::size_t dim);

// Applies the beam splitter to (mode_a, mode_b) and keeps the n-photon
// component of mode_b, which is removed. Mode_a is resized to out_dim_a.
// The result is unnormalized; its squared norm is the herald probability.
MultiModeState herald_after_beam_splitter(const MultiModeState& s,
                                          std::size_t mode_a,
                                          std::size_t mode_b,
                                          const BeamSplitterSpec& spec, int n,
                                          std::size_t out_dim_a);

enum HeraldFlag : unsigned {
  kFlagNone = 0u,
  kFlagPole = 1u,
  kFlagTruncation = 2u,
  kFlagFactorization = 4u,
  kFlagZeroProbability = 8u,
};

struct HeraldResult {
  int n = 0;
  int m = -1;  // second herald, dual-rail scheme only
  double probability = 0.0;
  MultiModeState state;
  double fidelity_vs_ideal = 0.0;
  double aux_overlap = std::numeric_limits<double>::quiet_NaN();
  unsigned flags = kFlagNone;
};

// Conditional states and probabilities of the single-rail scheme for an
// arbitrary ancilla on modes (2, 3); mode 3 enters the beam splitter.
std::vector<HeraldResult> run_heralds_a(const SchemeConfig& cfg,
                                        const MultiModeState& ancilla23);

std::vector<HeraldResult> run_scheme_a_exact(const SchemeConfig& cfg);

// Dual-rail scheme; results ordered n-major over (n, m) <= herald_max.
// Each state lives on modes (1, 3, 4): mode 2 is contracted against
// |-beta1 / t> and aux_overlap holds the squared norm of that contraction.
std::vector<HeraldResult> run_scheme_b_exact(const SchemeConfig& cfg);

// Mixes the photon modes of the balanced dual-rail hybrid state on a beam
// splitter and returns the normalized mode-1 states heralded on |01> and
// |10>. dim = 0 selects the automatic truncation.
std::pair<MultiModeState, MultiModeState> run_converter_exact(
    double beta, const BeamSplitterSpec& spec, int herald_parity,
    std::size_t dim = 0);

}  // namespace hybridgen
