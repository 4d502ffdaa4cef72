#include "hybridgen/displaced.hpp"

#include <cmath>
#include <string>

#include "hybridgen/errors.hpp"

namespace hybridgen {

namespace {

void require_indices(int l, int n) {
  if (l < 0 || n < 0) {
    throw DomainError("matrix element indices must be non-negative");
  }
}

// <n|D(alpha)|l> for n >= l, log domain.
Complex lower_element(int l, int n, Complex alpha) {
  const double x = std::norm(alpha);
  const double log_mag = -0.5 * x + (n - l) * std::log(std::abs(alpha)) +
                         0.5 * (std::lgamma(l + 1.0) - std::lgamma(n + 1.0));
  const double lag = laguerre(l, n - l, x);
  if (alpha.imag() == 0.0) {
    const bool flip = alpha.real() < 0.0 && (n - l) % 2 != 0;
    return Complex{(flip ? -1.0 : 1.0) * std::exp(log_mag) * lag, 0.0};
  }
  return std::polar(std::exp(log_mag), (n - l) * std::arg(alpha)) * lag;
}

}  // namespace

double envelope(Complex alpha) { return std::exp(-0.5 * std::norm(alpha)); }

double laguerre(int k, double a, double x) {
  if (k < 0) throw DomainError("Laguerre degree must be non-negative");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + a - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex matrix_element(int l, int n, Complex alpha) {
  require_indices(l, n);
  if (alpha == Complex{}) return l == n ? 1.0 : 0.0;
  if (n < l) return std::conj(matrix_element(n, l, -alpha));
  Complex pref = 1.0;
  for (int j = l + 1; j <= n; ++j) pref *= alpha / std::sqrt(static_cast<double>(j));
  if (l == 0) return pref;
  return pref * laguerre(l, n - l, std::norm(alpha));
}

Complex coherent_row(int n, Complex alpha) { return matrix_element(0, n, alpha); }

Complex displaced_single_row(int n, Complex alpha) {
  return matrix_element(1, n, alpha);
}

std::vector<Complex> displaced_number_amplitudes(int l, Complex alpha,
                                                 std::size_t dim) {
  require_indices(l, 0);
  std::vector<Complex> out(dim, Complex{});
  if (alpha == Complex{}) {
    if (static_cast<std::size_t>(l) < dim) out[l] = 1.0;
    return out;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    const int n = static_cast<int>(k);
    out[k] = n >= l ? lower_element(l, n, alpha)
                    : std::conj(lower_element(n, l, -alpha));
  }
  return out;
}

AmplitudeFactor amplitude_factor(int n, Complex alpha, double pole_tol) {
  require_indices(0, n);
  if (alpha == Complex{}) {
    throw DomainError("amplitude factor is undefined for zero displacement");
  }
  const double d = n - std::norm(alpha);
  if (std::abs(d) < pole_tol) return {Complex{}, true};
  return {alpha / d, false};
}

AmplitudeFactor amplitude_factor_pair(int n, int m, Complex alpha,
                                      Complex alpha1, double pole_tol) {
  require_indices(n, m);
  if (alpha == Complex{}) {
    throw DomainError("amplitude factor is undefined for zero displacement");
  }
  const double d = m - std::norm(alpha1);
  if (std::abs(d) < pole_tol) return {Complex{}, true};
  return {alpha1 * (n - std::norm(alpha)) / (alpha * d), false};
}

double MatrixElementTable::row_norm(int l) const {
  double acc = 0.0;
  for (const Complex& z : c.at(l)) acc += std::norm(z);
  return envelope * envelope * acc;
}

int required_n_max(Complex alpha, int l, double tail_tol) {
  const double a = std::abs(alpha);
  const auto cap = static_cast<std::size_t>(
      std::ceil(4.0 * (a * a + l) + 12.0 * a + 60.0));
  const auto amps = displaced_number_amplitudes(l, alpha, cap);
  double acc = 0.0;
  for (std::size_t n = 0; n < cap; ++n) {
    acc += std::norm(amps[n]);
    if (1.0 - acc <= tail_tol) return static_cast<int>(n);
  }
  return static_cast<int>(cap);
}

MatrixElementTable build_table(Complex alpha, int l_max, int n_max,
                               double tail_tol) {
  if (l_max < 0 || n_max < 0) {
    throw DomainError("table bounds must be non-negative");
  }
  MatrixElementTable table;
  table.alpha = alpha;
  table.l_max = l_max;
  table.n_max = n_max;
  table.envelope = envelope(alpha);
  table.c.assign(l_max + 1, std::vector<Complex>(n_max + 1));
  for (int l = 0; l <= l_max; ++l) {
    for (int n = 0; n <= n_max; ++n) table.c[l][n] = matrix_element(l, n, alpha);
  }
  for (int l = 0; l <= l_max; ++l) {
    const double row = table.row_norm(l);
    if (!(row >= 1.0 - tail_tol)) {
      const int need = required_n_max(alpha, l, tail_tol);
      throw TruncationError("row " + std::to_string(l) +
                                " loses more than the tail bound; need n_max >= " +
                                std::to_string(need),
                            static_cast<std::size_t>(need));
    }
  }
  return table;
}

}  // namespace hybridgen
