#pragma once

#include <cstddef>
#include <limits>

#include "hybridgen/fock.hpp"
#include "hybridgen/scheme_config.hpp"

namespace hybridgen {

// exp(-|alpha|^2 (1 - t) / (1 + t)).
double fidelity_balanced(double alpha, double t);

// Overlap of the ideal heralded state at beta with the same state at
// beta / t, in closed form (zero order in r).
double fidelity_a_analytic(int n, const SchemeConfig& cfg);
double fidelity_b_analytic(int n, int m, const SchemeConfig& cfg);

// Heralded state to first order in r: normalize(zero_order + weight *
// first_order), both components normalized. The first-order component has
// mode 1 in displaced single-photon states |1, -+beta/t>.
struct FirstOrderExpansion {
  MultiModeState zero_order;
  MultiModeState first_order;
  double weight = 0.0;

  MultiModeState combined() const;
};

// Truncation used for the first-order states (covers beta / t).
std::size_t first_order_dim(const SchemeConfig& cfg);

FirstOrderExpansion first_order_expansion_a(int n, const SchemeConfig& cfg,
                                            std::size_t dim = 0);

MultiModeState first_order_state_a(int n, const SchemeConfig& cfg,
                                   std::size_t dim = 0);

// N_r^2 (|<ideal|0>|^2 + 2 Re(w <ideal|0>* <ideal|1>)) with
// N_r^2 = 1 / (1 + w^2 + 2 w Re<0|1>).
double first_order_fidelity(const FirstOrderExpansion& expansion,
                            const MultiModeState& ideal);

double fidelity_first_order(int n, const SchemeConfig& cfg);

struct FidelityReport {
  int n = 0;
  int m = -1;
  double r = 0.0;
  double zero_order = 0.0;
  double first_order = std::numeric_limits<double>::quiet_NaN();
  double oracle = std::numeric_limits<double>::quiet_NaN();
  // |closed form - direct overlap of materialized states|.
  double zero_order_residual = 0.0;
  bool pole = false;
};

FidelityReport fidelity_report_a(int n, const SchemeConfig& cfg,
                                 bool with_oracle);

}  // namespace hybridgen
