#include "hybridgen/fidelity.hpp"

#include <cmath>
#include <vector>

#include "hybridgen/displaced.hpp"
#include "hybridgen/errors.hpp"
#include "hybridgen/oracle.hpp"
#include "hybridgen/schemes.hpp"

namespace hybridgen {

namespace {

double total_norm(double kappa, int sign, double beta) {
  return 1.0 / std::sqrt(2.0 * (1.0 + sign * kappa * std::exp(-2.0 * beta * beta)));
}

// Closed-form overlap between N(|-b>q+ + s|b>q-) at b = beta and b = beta/t,
// where kappa = <q+|q->.
double zero_order_fidelity(double kappa, int sign, double beta, double t) {
  const double scaled = beta / t;
  const double near = std::exp(-0.5 * beta * beta * std::pow(1.0 - 1.0 / t, 2));
  const double far = std::exp(-0.5 * beta * beta * std::pow(1.0 + 1.0 / t, 2));
  const double mixed = 2.0 * (near + sign * kappa * far);
  const double amp =
      total_norm(kappa, sign, beta) * total_norm(kappa, sign, scaled) * mixed;
  return amp * amp;
}

double qubit_overlap(Complex zero, Complex one) {
  return std::norm(zero) - std::norm(one);
}

}  // namespace

double fidelity_balanced(double alpha, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("t must lie in (0, 1]");
  return std::exp(-alpha * alpha * (1.0 - t) / (1.0 + t));
}

double fidelity_a_analytic(int n, const SchemeConfig& cfg) {
  const auto st = hybrid_state_a(n, cfg);
  if (st.degenerate) throw DomainError("herald has zero probability");
  return zero_order_fidelity(qubit_overlap(st.qubit_plus.zero, st.qubit_plus.one),
                             st.sign, st.beta, cfg.t);
}

double fidelity_b_analytic(int n, int m, const SchemeConfig& cfg) {
  const auto st = hybrid_state_b(n, m, cfg);
  if (st.degenerate) throw DomainError("herald has zero probability");
  return zero_order_fidelity(qubit_overlap(st.qubit_plus.zero, st.qubit_plus.one),
                             st.sign, st.beta, cfg.t);
}

MultiModeState FirstOrderExpansion::combined() const {
  return superpose(1.0, zero_order, weight, first_order).normalized();
}

std::size_t first_order_dim(const SchemeConfig& cfg) {
  return truncation_dim(cfg.beta() / cfg.t) + 4;
}

FirstOrderExpansion first_order_expansion_a(int n, const SchemeConfig& cfg,
                                            std::size_t dim) {
  cfg.validate();
  if (n < 0) throw DomainError("herald photon number must be non-negative");
  if (dim == 0) dim = first_order_dim(cfg);
  const double alpha = cfg.alpha();
  const double b = cfg.beta() / cfg.t;
  const double s = n % 2 == 1 ? 1.0 : -1.0;  // (-1)^(n-1)

  const Complex u0 = cfg.a0 * displaced_single_row(n, alpha);
  const Complex u1 = cfg.a1 * coherent_row(n, alpha);
  const Complex v0 = cfg.a0 * displaced_single_row(n + 1, alpha);
  const Complex v1 = cfg.a1 * coherent_row(n + 1, alpha);

  const auto vac_minus = displaced_number_state(0, -b, dim);
  const auto vac_plus = displaced_number_state(0, b, dim);
  const auto one_minus = displaced_number_state(1, -b, dim);
  const auto one_plus = displaced_number_state(1, b, dim);

  std::vector<Complex> zero(2 * dim);
  std::vector<Complex> first(2 * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    zero[2 * k] = (vac_minus[k] + s * vac_plus[k]) * u0;
    zero[2 * k + 1] = (vac_minus[k] - s * vac_plus[k]) * u1;
    first[2 * k] = (one_minus[k] - s * one_plus[k]) * v0;
    first[2 * k + 1] = (one_minus[k] + s * one_plus[k]) * v1;
  }
  MultiModeState zero_state({dim, 2}, std::move(zero));
  MultiModeState first_state({dim, 2}, std::move(first));
  const double n0 = zero_state.norm();
  const double n1 = first_state.norm();
  if (n0 == 0.0) throw DomainError("herald has zero probability");

  FirstOrderExpansion out;
  out.zero_order = zero_state.scaled(1.0 / n0);
  if (n1 == 0.0) {
    out.first_order = out.zero_order;
    out.weight = 0.0;
  } else {
    out.first_order = first_state.scaled(1.0 / n1);
    out.weight = cfg.r() * std::sqrt(n + 1.0) * n1 / n0;
  }
  return out;
}

MultiModeState first_order_state_a(int n, const SchemeConfig& cfg,
                                   std::size_t dim) {
  return first_order_expansion_a(n, cfg, dim).combined();
}

double first_order_fidelity(const FirstOrderExpansion& expansion,
                            const MultiModeState& ideal) {
  const Complex g0 = inner(ideal, expansion.zero_order);
  const Complex g1 = inner(ideal, expansion.first_order);
  const Complex x01 = inner(expansion.zero_order, expansion.first_order);
  const double w = expansion.weight;
  const double nr_sq = 1.0 / (1.0 + w * w + 2.0 * w * x01.real());
  return nr_sq * (std::norm(g0) + 2.0 * w * std::real(std::conj(g0) * g1));
}

double fidelity_first_order(int n, const SchemeConfig& cfg) {
  const std::size_t dim = first_order_dim(cfg);
  const auto expansion = first_order_expansion_a(n, cfg, dim);
  const auto ideal = hybrid_state_a(n, cfg).materialize(dim);
  return first_order_fidelity(expansion, ideal);
}

FidelityReport fidelity_report_a(int n, const SchemeConfig& cfg,
                                 bool with_oracle) {
  FidelityReport report;
  report.n = n;
  report.r = cfg.r();
  const auto st = hybrid_state_a(n, cfg);
  report.pole = st.pole;
  report.zero_order = fidelity_a_analytic(n, cfg);

  const std::size_t dim = first_order_dim(cfg);
  HybridStateA scaled = st;
  scaled.beta = st.beta / cfg.t;
  scaled.total_norm = 1.0 / std::sqrt(
      2.0 * (1.0 + st.sign * qubit_overlap(st.qubit_plus.zero, st.qubit_plus.one) *
                       std::exp(-2.0 * scaled.beta * scaled.beta)));
  const double direct = fidelity_pure(st.materialize(dim), scaled.materialize(dim));
  report.zero_order_residual = std::abs(direct - report.zero_order);
  report.first_order = fidelity_first_order(n, cfg);

  if (with_oracle) {
    SchemeConfig run = cfg;
    run.herald_max = n;
    const auto results = run_scheme_a_exact(run);
    report.oracle = results.at(static_cast<std::size_t>(n)).fidelity_vs_ideal;
  }
  return report;
}

}  // namespace hybridgen
