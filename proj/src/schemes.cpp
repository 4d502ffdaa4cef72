#include "hybridgen/schemes.hpp"

#include <cmath>
#include <vector>

#include "hybridgen/displaced.hpp"
#include "hybridgen/errors.hpp"
#include "hybridgen/oracle.hpp"

namespace hybridgen {

namespace {

int parity_sign(int k) { return k % 2 == 0 ? 1 : -1; }

double cat_overlap(double beta) { return std::exp(-2.0 * beta * beta); }

double nplus_squared(double beta) {
  return 1.0 / (2.0 * (1.0 + cat_overlap(beta)));
}

// Norm of N+ F (|-b>|u0, u1> + sign |b>|u0, -u1>) with x0 = |u0|^2,
// x1 = |u1|^2 and pref = N+^2 F^2.
double regrouped_probability(double pref, double x0, double x1, int sign,
                             double beta) {
  return pref * 2.0 * ((x0 + x1) + sign * cat_overlap(beta) * (x0 - x1));
}

double total_norm(double kappa, int sign, double beta) {
  return 1.0 / std::sqrt(2.0 * (1.0 + sign * kappa * cat_overlap(beta)));
}

// Normalized qubit pair from unnormalized (u0, +-u1).
void fill_qubits(Complex u0, Complex u1, QubitAmplitudes& plus,
                 QubitAmplitudes& minus, bool& degenerate) {
  const double nrm = std::sqrt(std::norm(u0) + std::norm(u1));
  if (nrm == 0.0) {
    degenerate = true;
    return;
  }
  plus = {u0 / nrm, u1 / nrm};
  minus = {u0 / nrm, -u1 / nrm};
}

double branch_overlap(const QubitAmplitudes& plus) {
  return std::norm(plus.zero) - std::norm(plus.one);
}

// Off-pole closed form: pref |c|^2 / (N^2 N_tot^2) with the qubit weight A.
double closed_form_probability(double pref, double c_sq, Complex a1,
                               Complex factor, int sign, double beta) {
  const double a2 = std::norm(factor);
  const double nn_sq = 1.0 / (1.0 + (a2 - 1.0) * std::norm(a1));
  const double kappa = nn_sq * (1.0 - (1.0 + a2) * std::norm(a1));
  const double ntot_sq = 1.0 / (2.0 * (1.0 + sign * kappa * cat_overlap(beta)));
  return pref * c_sq / (nn_sq * ntot_sq);
}

void require_dual_rail_pair(const MultiModeState& s, std::size_t a,
                            std::size_t b) {
  if (a >= s.num_modes() || b >= s.num_modes()) {
    throw std::out_of_range("mode index out of range");
  }
  if (a == b) throw ShapeError("dual-rail pair needs two distinct modes");
  if (s.dims()[a] < 2 || s.dims()[b] < 2) {
    throw ShapeError("dual-rail modes need dimension >= 2");
  }
}

constexpr double kSupportTol = 1e-12;

}  // namespace

MultiModeState HybridStateA::materialize(std::size_t dim) const {
  if (degenerate) throw DomainError("herald has zero probability; no state");
  const auto minus_beta = coherent_state(-beta, dim);
  const auto plus_beta = coherent_state(beta, dim);
  std::vector<Complex> amps(dim * 2);
  for (std::size_t k = 0; k < dim; ++k) {
    amps[2 * k] = total_norm * (minus_beta[k] * qubit_plus.zero +
                                double(sign) * plus_beta[k] * qubit_minus.zero);
    amps[2 * k + 1] = total_norm * (minus_beta[k] * qubit_plus.one +
                                    double(sign) * plus_beta[k] * qubit_minus.one);
  }
  return MultiModeState({dim, 2}, std::move(amps));
}

MultiModeState HybridStateB::materialize(std::size_t dim) const {
  if (degenerate) throw DomainError("herald has zero probability; no state");
  const auto minus_beta = coherent_state(-beta, dim);
  const auto plus_beta = coherent_state(beta, dim);
  MultiModeState proto({dim, 2, 2});
  std::vector<Complex> amps(proto.size(), Complex{});
  for (std::size_t k = 0; k < dim; ++k) {
    amps[4 * k + 1] = total_norm * (minus_beta[k] * qubit_plus.zero +
                                    double(sign) * plus_beta[k] * qubit_minus.zero);
    amps[4 * k + 2] = total_norm * (minus_beta[k] * qubit_plus.one +
                                    double(sign) * plus_beta[k] * qubit_minus.one);
  }
  return MultiModeState({dim, 2, 2}, std::move(amps));
}

HybridStateA hybrid_state_a(int n, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.alpha();
  HybridStateA st;
  st.n = n;
  st.beta = cfg.beta();
  st.sign = parity_sign(n - 1);
  const auto af = amplitude_factor(n, alpha);
  if (!af.pole) {
    const double a2 = std::norm(af.value);
    st.qubit_norm = 1.0 / std::sqrt(1.0 + (a2 - 1.0) * std::norm(cfg.a1));
    st.qubit_plus = {st.qubit_norm * cfg.a0, st.qubit_norm * cfg.a1 * af.value};
    st.qubit_minus = {st.qubit_norm * cfg.a0, -st.qubit_norm * cfg.a1 * af.value};
  } else {
    st.pole = true;
    st.qubit_norm = 0.0;
    fill_qubits(Complex{}, cfg.a1 * coherent_row(n, alpha), st.qubit_plus,
                st.qubit_minus, st.degenerate);
  }
  if (!st.degenerate) {
    st.total_norm = total_norm(branch_overlap(st.qubit_plus), st.sign, st.beta);
  }
  return st;
}

HybridStateB hybrid_state_b(int n, int m, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.arm.alpha;
  const double alpha1 = cfg.aux_arm.alpha;
  HybridStateB st;
  st.n = n;
  st.m = m;
  st.beta = cfg.beta();
  st.sign = parity_sign(n);
  const auto af = amplitude_factor_pair(n, m, alpha, alpha1);
  if (!af.pole) {
    const double a2 = std::norm(af.value);
    st.qubit_norm = 1.0 / std::sqrt(1.0 + (a2 - 1.0) * std::norm(cfg.a1));
    st.qubit_plus = {st.qubit_norm * cfg.a0, st.qubit_norm * cfg.a1 * af.value};
    st.qubit_minus = {st.qubit_norm * cfg.a0, -st.qubit_norm * cfg.a1 * af.value};
  } else {
    st.pole = true;
    st.qubit_norm = 0.0;
    fill_qubits(Complex{},
                cfg.a1 * displaced_single_row(n, alpha) * coherent_row(m, alpha1),
                st.qubit_plus, st.qubit_minus, st.degenerate);
  }
  if (!st.degenerate) {
    st.total_norm = total_norm(branch_overlap(st.qubit_plus), st.sign, st.beta);
  }
  return st;
}

double success_prob_a(int n, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.alpha();
  const double beta = cfg.beta();
  const Complex c0 = coherent_row(n, alpha);
  const Complex c1 = displaced_single_row(n, alpha);
  const double pref = nplus_squared(beta) * std::exp(-alpha * alpha);
  const int sign = parity_sign(n - 1);
  const auto af = amplitude_factor(n, alpha);
  if (af.pole) {
    return regrouped_probability(pref, std::norm(cfg.a0 * c1),
                                 std::norm(cfg.a1 * c0), sign, beta);
  }
  return closed_form_probability(pref, std::norm(c1), cfg.a1, af.value, sign, beta);
}

double success_prob_b(int n, int m, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.arm.alpha;
  const double alpha1 = cfg.aux_arm.alpha;
  const double beta = cfg.beta();
  const Complex c0n = coherent_row(n, alpha);
  const Complex c1n = displaced_single_row(n, alpha);
  const Complex c0m = coherent_row(m, alpha1);
  const Complex c1m = displaced_single_row(m, alpha1);
  const double pref =
      nplus_squared(beta) * std::exp(-alpha * alpha) * std::exp(-alpha1 * alpha1);
  const int sign = parity_sign(n);
  const auto af = amplitude_factor_pair(n, m, alpha, alpha1);
  if (af.pole) {
    return regrouped_probability(pref, std::norm(cfg.a0 * c0n * c1m),
                                 std::norm(cfg.a1 * c1n * c0m), sign, beta);
  }
  return closed_form_probability(pref, std::norm(c0n * c1m), cfg.a1, af.value,
                                 sign, beta);
}

std::pair<double, double> balanced_condition_a(int n, double alpha) {
  const auto af = amplitude_factor(n, alpha);
  if (af.pole) {
    throw DomainError("no balanced amplitudes at a pole herald (c_1n = 0)");
  }
  const double a2 = std::norm(af.value);
  return {std::sqrt(a2 / (1.0 + a2)), std::sqrt(1.0 / (1.0 + a2))};
}

std::pair<double, double> balanced_condition_b(int n, int m, double alpha,
                                               double alpha1) {
  const auto af = amplitude_factor_pair(n, m, alpha, alpha1);
  if (af.pole) {
    throw DomainError("no balanced amplitudes at a pole herald (c_1m = 0)");
  }
  const double a2 = std::norm(af.value);
  return {std::sqrt(a2 / (1.0 + a2)), std::sqrt(1.0 / (1.0 + a2))};
}

SchemeConfig balanced_config_a(int n, const SchemeConfig& cfg) {
  const auto [m0, m1] = balanced_condition_a(n, cfg.alpha());
  const double phase = std::arg(amplitude_factor(n, cfg.alpha()).value);
  return cfg.with_amplitudes(m0, std::polar(m1, cfg.delta - phase));
}

SchemeConfig balanced_config_b(int n, int m, const SchemeConfig& cfg) {
  const auto [m0, m1] = balanced_condition_b(n, m, cfg.arm.alpha, cfg.aux_arm.alpha);
  const double phase =
      std::arg(amplitude_factor_pair(n, m, cfg.arm.alpha, cfg.aux_arm.alpha).value);
  return cfg.with_amplitudes(m0, std::polar(m1, cfg.delta - phase));
}

double success_prob_balanced_a(int n, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.alpha();
  const auto af = amplitude_factor(n, alpha);
  if (af.pole) {
    throw DomainError("no balanced amplitudes at a pole herald (c_1n = 0)");
  }
  const double a2 = std::norm(af.value);
  return 4.0 * nplus_squared(cfg.beta()) * std::exp(-alpha * alpha) *
         std::norm(displaced_single_row(n, alpha)) * a2 / (1.0 + a2);
}

double balanced_probability_a(int n, double alpha, double beta) {
  const double c0 = std::norm(coherent_row(n, alpha));
  const double c1 = std::norm(displaced_single_row(n, alpha));
  return 4.0 * nplus_squared(beta) * std::exp(-alpha * alpha) * c0 * c1 / (c0 + c1);
}

double success_prob_balanced_b(int n, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.alpha();
  return 2.0 * nplus_squared(cfg.beta()) * std::exp(-2.0 * alpha * alpha) *
         std::norm(coherent_row(n, alpha)) * std::norm(displaced_single_row(n, alpha));
}

double success_prob_weighted_b(int n, int m, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.arm.alpha;
  const double alpha1 = cfg.aux_arm.alpha;
  const auto af = amplitude_factor_pair(n, m, alpha, alpha1);
  if (af.pole) {
    throw DomainError("no balanced amplitudes at a pole herald (c_1m = 0)");
  }
  const double a2 = std::norm(af.value);
  return 4.0 * nplus_squared(cfg.beta()) * std::exp(-alpha * alpha) *
         std::exp(-alpha1 * alpha1) *
         std::norm(coherent_row(n, alpha) * displaced_single_row(m, alpha1)) * a2 /
         (1.0 + a2);
}

double balanced_probability_b(int n, int m, double alpha, double alpha1,
                              double beta) {
  const double x =
      std::norm(coherent_row(n, alpha) * displaced_single_row(m, alpha1));
  const double y =
      std::norm(displaced_single_row(n, alpha) * coherent_row(m, alpha1));
  if (x + y == 0.0) return 0.0;
  return 4.0 * nplus_squared(beta) * std::exp(-alpha * alpha) *
         std::exp(-alpha1 * alpha1) * x * y / (x + y);
}

double fig4_total_probability(double t) {
  const auto cfg = SchemeConfig::dual_from_alpha(kInvSqrt2, kInvSqrt2, t);
  return success_prob_balanced_b(0, cfg) + success_prob_balanced_b(1, cfg) +
         success_prob_weighted_b(0, 1, cfg) + success_prob_weighted_b(1, 0, cfg);
}

std::pair<double, double> gamma_balancing_roots(int n) {
  if (n < 0) throw DomainError("herald photon number must be non-negative");
  const double root = std::sqrt(1.0 + 4.0 * n);
  return {(-1.0 + root) / 2.0, (-1.0 - root) / 2.0};
}

MultiModeState two_mode_squeezed_ancilla(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  const double norm = 1.0 / std::sqrt(1.0 + lambda * lambda);
  return MultiModeState({2, 2}, {norm, 0.0, 0.0, norm * lambda});
}

SqueezedQubit squeezed_variant_qubit(int n, double lambda, Complex alpha) {
  const auto af = amplitude_factor(n, alpha);
  const Complex inv = lambda * (static_cast<double>(n) - std::norm(alpha)) / alpha;
  const double nrm = std::sqrt(1.0 + std::norm(inv));
  SqueezedQubit q;
  q.plus = {1.0 / nrm, inv / nrm};
  q.minus = {1.0 / nrm, -inv / nrm};
  q.pole = af.pole;
  return q;
}

double squeezed_success_prob(int n, double lambda, const SchemeConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.alpha();
  const double norm_sq = 1.0 / (1.0 + lambda * lambda);
  const double x0 = norm_sq * std::norm(coherent_row(n, alpha));
  const double x1 = norm_sq * lambda * lambda * std::norm(displaced_single_row(n, alpha));
  const double pref = nplus_squared(cfg.beta()) * std::exp(-alpha * alpha);
  return regrouped_probability(pref, x0, x1, parity_sign(n), cfg.beta());
}

MultiModeState squeezed_hybrid_state(int n, double lambda,
                                     const SchemeConfig& cfg, std::size_t dim) {
  cfg.validate();
  const auto q = squeezed_variant_qubit(n, lambda, cfg.alpha());
  const auto minus_beta = coherent_state(-cfg.beta(), dim);
  const auto plus_beta = coherent_state(cfg.beta(), dim);
  const double sign = parity_sign(n);
  std::vector<Complex> amps(dim * 2);
  for (std::size_t k = 0; k < dim; ++k) {
    amps[2 * k] = minus_beta[k] * q.plus.zero + sign * plus_beta[k] * q.minus.zero;
    amps[2 * k + 1] = minus_beta[k] * q.plus.one + sign * plus_beta[k] * q.minus.one;
  }
  return MultiModeState({dim, 2}, std::move(amps)).normalized();
}

double CatQubit::normalization() const {
  const double sq = std::norm(minus_weight) + std::norm(plus_weight) +
                    2.0 * std::real(std::conj(minus_weight) * plus_weight) *
                        cat_overlap(beta);
  if (!(sq > 0.0)) throw DomainError("cat qubit has zero norm");
  return 1.0 / std::sqrt(sq);
}

MultiModeState CatQubit::materialize(std::size_t dim) const {
  const double norm = normalization();
  const auto minus_beta = coherent_state(-beta, dim);
  const auto plus_beta = coherent_state(beta, dim);
  std::vector<Complex> amps(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    amps[k] = norm * (minus_weight * minus_beta[k] + plus_weight * plus_beta[k]);
  }
  return MultiModeState::single_mode(std::move(amps));
}

std::pair<CatQubit, CatQubit> converter_states(double beta, double t,
                                               ConverterReading reading,
                                               int herald_parity) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(t > 0.0 && t < 1.0)) throw DomainError("t must lie in (0, 1)");
  const double r = std::sqrt(1.0 - t * t);
  if (reading == ConverterReading::Literal) {
    return {CatQubit{beta, 0.0, t - r}, CatQubit{beta, 0.0, r + t}};
  }
  const double s = parity_sign(herald_parity);
  return {CatQubit{beta, t, -s * r}, CatQubit{beta, r, s * t}};
}

MultiModeState converter_input_state(double beta, int herald_parity,
                                     std::size_t dim) {
  const auto minus_beta = coherent_state(-beta, dim);
  const auto plus_beta = coherent_state(beta, dim);
  const double s = parity_sign(herald_parity);
  std::vector<Complex> amps(dim * 4, Complex{});
  for (std::size_t k = 0; k < dim; ++k) {
    amps[4 * k + 1] = kInvSqrt2 * minus_beta[k];
    amps[4 * k + 2] = kInvSqrt2 * s * plus_beta[k];
  }
  return MultiModeState({dim, 2, 2}, std::move(amps));
}

MultiModeState relabel_polarization(const MultiModeState& s, std::size_t mode_a,
                                    std::size_t mode_b) {
  require_dual_rail_pair(s, mode_a, mode_b);
  std::vector<std::size_t> out_dims;
  std::vector<std::size_t> out_mode(s.num_modes(), 0);
  for (std::size_t m = 0; m < s.num_modes(); ++m) {
    if (m == mode_b) continue;
    out_mode[m] = out_dims.size();
    out_dims.push_back(m == mode_a ? 2 : s.dims()[m]);
  }
  MultiModeState proto(out_dims);
  const auto strides = proto.strides();
  std::vector<Complex> out(proto.size(), Complex{});
  std::vector<std::size_t> digits(s.num_modes(), 0);
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    const std::size_t la = digits[mode_a];
    const std::size_t lb = digits[mode_b];
    const bool h = la == 0 && lb == 1;
    const bool v = la == 1 && lb == 0;
    if (h || v) {
      std::size_t idx = 0;
      for (std::size_t m = 0; m < s.num_modes(); ++m) {
        if (m == mode_b) continue;
        const std::size_t level = m == mode_a ? (h ? 0 : 1) : digits[m];
        idx += level * strides[out_mode[m]];
      }
      out[idx] = s[flat];
    } else if (std::abs(s[flat]) > kSupportTol) {
      throw DomainError("state has support outside the dual-rail subspace");
    }
    for (std::size_t m = s.num_modes(); m-- > 0;) {
      if (++digits[m] < s.dims()[m]) break;
      digits[m] = 0;
    }
  }
  return MultiModeState(std::move(out_dims), std::move(out));
}

MultiModeState relabel_dual_rail(const MultiModeState& s, std::size_t mode) {
  if (mode >= s.num_modes()) throw std::out_of_range("mode index out of range");
  if (s.dims()[mode] < 2) throw ShapeError("polarization mode needs dimension >= 2");
  std::vector<std::size_t> out_dims;
  for (std::size_t m = 0; m < s.num_modes(); ++m) {
    if (m == mode) {
      out_dims.push_back(2);
      out_dims.push_back(2);
    } else {
      out_dims.push_back(s.dims()[m]);
    }
  }
  MultiModeState proto(out_dims);
  const auto strides = proto.strides();
  std::vector<Complex> out(proto.size(), Complex{});
  std::vector<std::size_t> digits(s.num_modes(), 0);
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    const std::size_t level = digits[mode];
    if (level <= 1) {
      std::size_t idx = 0;
      for (std::size_t m = 0, o = 0; m < s.num_modes(); ++m) {
        if (m == mode) {
          idx += (level == 0 ? 0 : 1) * strides[o] + (level == 0 ? 1 : 0) * strides[o + 1];
          o += 2;
        } else {
          idx += digits[m] * strides[o++];
        }
      }
      out[idx] = s[flat];
    } else if (std::abs(s[flat]) > kSupportTol) {
      throw DomainError("polarization mode has support above level 1");
    }
    for (std::size_t m = s.num_modes(); m-- > 0;) {
      if (++digits[m] < s.dims()[m]) break;
      digits[m] = 0;
    }
  }
  return MultiModeState(std::move(out_dims), std::move(out));
}

MultiModeState hadamard_qubit(const MultiModeState& s, std::size_t mode) {
  if (mode >= s.num_modes()) throw std::out_of_range("mode index out of range");
  const std::size_t d = s.dims()[mode];
  if (d < 2) throw ShapeError("qubit mode needs dimension >= 2");
  for (std::size_t level = 2; level < d; ++level) {
    const auto above = slice_mode(s, mode, level);
    if (above.norm() > kSupportTol) {
      throw DomainError("single-rail qubit mode has support above level 1");
    }
  }
  const auto di = static_cast<Eigen::Index>(d);
  Operator h{d, d, Eigen::MatrixXcd::Identity(di, di), true};
  h.entries(0, 0) = kInvSqrt2;
  h.entries(0, 1) = kInvSqrt2;
  h.entries(1, 0) = kInvSqrt2;
  h.entries(1, 1) = -kInvSqrt2;
  return apply(h, s, mode);
}

MultiModeState hadamard_dual_rail(const MultiModeState& s, std::size_t mode_a,
                                  std::size_t mode_b) {
  require_dual_rail_pair(s, mode_a, mode_b);
  relabel_polarization(s, mode_a, mode_b);  // support check only
  const std::size_t da = s.dims()[mode_a];
  const std::size_t db = s.dims()[mode_b];
  const auto d = static_cast<Eigen::Index>(da * db);
  Operator h{da * db, da * db, Eigen::MatrixXcd::Identity(d, d), true};
  const auto zero = static_cast<Eigen::Index>(1);        // |01>
  const auto one = static_cast<Eigen::Index>(db);        // |10>
  h.entries(zero, zero) = kInvSqrt2;
  h.entries(zero, one) = kInvSqrt2;
  h.entries(one, zero) = kInvSqrt2;
  h.entries(one, one) = -kInvSqrt2;
  return apply(h, s, {mode_a, mode_b}, {da, db});
}

}  // namespace hybridgen
