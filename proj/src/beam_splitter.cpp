#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hybridgen/displaced.hpp"
#include "hybridgen/errors.hpp"
#include "hybridgen/oracle.hpp"

namespace hybridgen {

namespace {

double log_binomial(int a, int b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

double tail_mass(const std::vector<Complex>& amps) {
  double acc = 0.0;
  for (const Complex& z : amps) acc += std::norm(z);
  return 1.0 - acc;
}

}  // namespace

BeamSplitterSpec BeamSplitterSpec::from_transmittance(double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("transmittance must lie in (0, 1)");
  return {t, std::sqrt(1.0 - t * t), false};
}

void BeamSplitterSpec::validate() const {
  if (!(t > 0.0 && t < 1.0 && r > 0.0 && r < 1.0)) {
    throw DomainError("t and r must lie in (0, 1)");
  }
  if (std::abs(t * t + r * r - 1.0) > 1e-12) {
    throw DomainError("beam splitter requires t^2 + r^2 = 1");
  }
}

std::size_t truncation_dim(Complex mu) {
  const double a = std::abs(mu);
  return static_cast<std::size_t>(std::ceil(a * a + 8.0 * a + 20.0));
}

MultiModeState coherent_state(Complex alpha, std::size_t dim, double tail_tol) {
  auto amps = displaced_number_amplitudes(0, alpha, dim);
  if (tail_mass(amps) > tail_tol) {
    const std::size_t need = truncation_dim(alpha);
    throw TruncationError("coherent state truncated at dim " + std::to_string(dim) +
                              "; use dim >= " + std::to_string(need),
                          need);
  }
  return MultiModeState::single_mode(std::move(amps));
}

double scs_normalization(double beta, Parity parity) {
  const double e = std::exp(-2.0 * beta * beta);
  return 1.0 / std::sqrt(2.0 * (parity == Parity::Even ? 1.0 + e : 1.0 - e));
}

MultiModeState scs_state(double beta, Parity parity, std::size_t dim,
                         double tail_tol) {
  if (!(beta > 0.0)) throw DomainError("cat amplitude beta must be positive");
  const auto plus = displaced_number_amplitudes(0, beta, dim);
  const double norm = scs_normalization(beta, parity);
  const std::size_t keep = parity == Parity::Even ? 0 : 1;
  std::vector<Complex> amps(dim, Complex{});
  for (std::size_t n = keep; n < dim; n += 2) amps[n] = 2.0 * norm * plus[n];
  if (tail_mass(amps) > tail_tol) {
    const std::size_t need = truncation_dim(beta);
    throw TruncationError("cat state truncated at dim " + std::to_string(dim) +
                              "; use dim >= " + std::to_string(need),
                          need);
  }
  return MultiModeState::single_mode(std::move(amps));
}

MultiModeState displaced_number_state(int l, Complex alpha, std::size_t dim,
                                      double tail_tol) {
  auto amps = displaced_number_amplitudes(l, alpha, dim);
  if (tail_mass(amps) > tail_tol) {
    const std::size_t need = truncation_dim(alpha) + 4 * static_cast<std::size_t>(l);
    throw TruncationError("displaced number state truncated at dim " +
                              std::to_string(dim) + "; use dim >= " +
                              std::to_string(need),
                          need);
  }
  return MultiModeState::single_mode(std::move(amps));
}

std::vector<double> bs_block_column(int p, int q, const BeamSplitterSpec& spec) {
  if (p < 0 || q < 0) throw DomainError("photon numbers must be non-negative");
  const double t = spec.t;
  const double r = spec.mirrored ? -spec.r : spec.r;
  const int total = p + q;
  std::vector<double> v(total + 1, 0.0);
  std::vector<double> w(total + 1, 0.0);
  v[0] = 1.0;
  int cur = 0;
  // One creation operator c1 a1+ + c2 a2+ acting on sum_k v_k |k, cur-k>.
  auto raise = [&](double c1, double c2, int step) {
    std::fill(w.begin(), w.end(), 0.0);
    for (int k = 0; k <= cur; ++k) {
      if (v[k] == 0.0) continue;
      w[k + 1] += c1 * v[k] * std::sqrt(k + 1.0);
      w[k] += c2 * v[k] * std::sqrt(cur - k + 1.0);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(step));
    for (int k = 0; k <= cur + 1; ++k) v[k] = w[k] * scale;
    ++cur;
  };
  for (int j = 1; j <= q; ++j) raise(r, t, j);
  for (int j = 1; j <= p; ++j) raise(t, -r, j);
  return v;
}

double bs_element(int k, int n, int p, int q, const BeamSplitterSpec& spec) {
  if (k < 0 || n < 0 || p < 0 || q < 0) {
    throw DomainError("photon numbers must be non-negative");
  }
  if (k + n != p + q) return 0.0;
  const double lt = std::log(spec.t);
  const double lr = std::log(spec.r);
  const double pref = 0.5 * (std::lgamma(k + 1.0) + std::lgamma(n + 1.0) -
                             std::lgamma(p + 1.0) - std::lgamma(q + 1.0));
  double acc = 0.0;
  for (int i = std::max(0, k - q); i <= std::min(p, k); ++i) {
    const int rpow = p + k - 2 * i;
    const double mag = std::exp(pref + log_binomial(p, i) + log_binomial(q, k - i) +
                                (2 * i + q - k) * lt + rpow * lr);
    bool negative = (p - i) % 2 != 0;
    if (spec.mirrored && rpow % 2 != 0) negative = !negative;
    acc += negative ? -mag : mag;
  }
  return acc;
}

Operator bs_unitary(const BeamSplitterSpec& spec, std::size_t dim_a,
                    std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0) throw DimensionError("mode dimension must be >= 1");
  const std::size_t d = dim_a * dim_b;
  Operator op{d, d, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                           static_cast<Eigen::Index>(d)),
              true};
  for (std::size_t p = 0; p < dim_a; ++p) {
    for (std::size_t q = 0; q < dim_b; ++q) {
      const auto col = bs_block_column(static_cast<int>(p), static_cast<int>(q), spec);
      const std::size_t total = p + q;
      for (std::size_t k = 0; k <= total; ++k) {
        const std::size_t rest = total - k;
        if (k >= dim_a || rest >= dim_b) continue;
        op.entries(static_cast<Eigen::Index>(k * dim_b + rest),
                   static_cast<Eigen::Index>(p * dim_b + q)) = col[k];
      }
    }
  }
  return op;
}

Operator displacement_operator(Complex alpha, std::size_t dim) {
  if (dim == 0) throw DimensionError("mode dimension must be >= 1");
  const auto d = static_cast<Eigen::Index>(dim);
  Operator op{dim, dim, Eigen::MatrixXcd::Zero(d, d), true};
  for (std::size_t l = 0; l < dim; ++l) {
    const auto col = displaced_number_amplitudes(static_cast<int>(l), alpha, dim);
    for (std::size_t n = 0; n < dim; ++n) {
      op.entries(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(l)) = col[n];
    }
  }
  return op;
}

MultiModeState herald_after_beam_splitter(const MultiModeState& s,
                                          std::size_t mode_a,
                                          std::size_t mode_b,
                                          const BeamSplitterSpec& spec, int n,
                                          std::size_t out_dim_a) {
  if (mode_a >= s.num_modes() || mode_b >= s.num_modes()) {
    throw std::out_of_range("mode index out of range");
  }
  if (mode_a == mode_b) throw ShapeError("beam splitter needs two distinct modes");
  if (n < 0) throw std::out_of_range("herald photon number must be non-negative");
  if (out_dim_a == 0) throw DimensionError("mode dimension must be >= 1");
  spec.validate();

  const std::size_t dim_a = s.dims()[mode_a];
  const std::size_t dim_b = s.dims()[mode_b];
  // kernel[p * dim_b + q] = <p+q-n, n|U|p, q>, or 0 outside the output range.
  std::vector<double> kernel(dim_a * dim_b, 0.0);
  for (std::size_t p = 0; p < dim_a; ++p) {
    for (std::size_t q = 0; q < dim_b; ++q) {
      const long k = static_cast<long>(p + q) - n;
      if (k < 0 || k >= static_cast<long>(out_dim_a)) continue;
      kernel[p * dim_b + q] = bs_element(static_cast<int>(k), n, static_cast<int>(p),
                                         static_cast<int>(q), spec);
    }
  }

  std::vector<std::size_t> out_dims;
  for (std::size_t m = 0; m < s.num_modes(); ++m) {
    if (m == mode_b) continue;
    out_dims.push_back(m == mode_a ? out_dim_a : s.dims()[m]);
  }
  MultiModeState proto(out_dims);
  const auto proto_strides = proto.strides();
  std::vector<std::size_t> out_stride(s.num_modes(), 0);
  for (std::size_t m = 0, o = 0; m < s.num_modes(); ++m) {
    if (m == mode_b) continue;
    out_stride[m] = proto_strides[o++];
  }

  std::vector<Complex> out(proto.size(), Complex{});
  std::vector<std::size_t> digits(s.num_modes(), 0);
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    const Complex amp = s[flat];
    if (amp != Complex{}) {
      const std::size_t p = digits[mode_a];
      const std::size_t q = digits[mode_b];
      const double kv = kernel[p * dim_b + q];
      if (kv != 0.0) {
        std::size_t idx = 0;
        for (std::size_t m = 0; m < s.num_modes(); ++m) {
          if (m == mode_b) continue;
          const std::size_t level = m == mode_a ? p + q - n : digits[m];
          idx += level * out_stride[m];
        }
        out[idx] += kv * amp;
      }
    }
    for (std::size_t m = s.num_modes(); m-- > 0;) {
      if (++digits[m] < s.dims()[m]) break;
      digits[m] = 0;
    }
  }
  return MultiModeState(std::move(out_dims), std::move(out));
}

}  // namespace hybridgen
