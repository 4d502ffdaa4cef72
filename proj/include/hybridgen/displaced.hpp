#pragma once

#include <cstddef>
#include <vector>

#include "hybridgen/fock.hpp"

namespace hybridgen {

inline constexpr double kPoleTol = 1e-9;

// exp(-|alpha|^2 / 2), the Gaussian factor shared by every row c_l(alpha).
double envelope(Complex alpha);

// Generalized Laguerre polynomial L_k^{(a)}(x) by the three-term recurrence.
double laguerre(int k, double a, double x);

// c_ln(alpha), defined by <n|D(alpha)|l> = envelope(alpha) * c_ln(alpha).
// Unscaled, so it overflows for very large |alpha|^n; use
// displaced_number_amplitudes there.
Complex matrix_element(int l, int n, Complex alpha);

// c_0n(alpha) = alpha^n / sqrt(n!).
Complex coherent_row(int n, Complex alpha);

// c_1n(alpha) = alpha^(n-1) (n - |alpha|^2) / sqrt(n!); -conj(alpha) at n = 0.
Complex displaced_single_row(int n, Complex alpha);

// <n|D(alpha)|l> for n = 0..dim-1, evaluated in the log domain so that
// large displacements neither overflow nor underflow.
std::vector<Complex> displaced_number_amplitudes(int l, Complex alpha,
                                                 std::size_t dim);

// Ratio c_0n / c_1n. `pole` is set when c_1n vanishes (n = |alpha|^2).
struct AmplitudeFactor {
  Complex value{};
  bool pole = false;
};

AmplitudeFactor amplitude_factor(int n, Complex alpha,
                                 double pole_tol = kPoleTol);

// Dual-rail ratio alpha1 (n - |alpha|^2) / (alpha (m - |alpha1|^2)).
AmplitudeFactor amplitude_factor_pair(int n, int m, Complex alpha,
                                      Complex alpha1,
                                      double pole_tol = kPoleTol);

struct MatrixElementTable {
  Complex alpha{};
  int l_max = 0;
  int n_max = 0;
  double envelope = 1.0;
  std::vector<std::vector<Complex>> c;  // c[l][n]

  Complex operator()(int l, int n) const { return c.at(l).at(n); }
  // envelope^2 * sum_n |c[l][n]|^2.
  double row_norm(int l) const;
};

// Smallest n_max whose tail bound for row l stays below tail_tol.
int required_n_max(Complex alpha, int l, double tail_tol);

MatrixElementTable build_table(Complex alpha, int l_max, int n_max,
                               double tail_tol = 1e-10);

}  // namespace hybridgen
