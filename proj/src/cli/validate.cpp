#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"

#include "hybridgen/cli.hpp"
#include "hybridgen/displaced.hpp"
#include "hybridgen/fidelity.hpp"
#include "hybridgen/oracle.hpp"
#include "hybridgen/schemes.hpp"

namespace hybridgen::cli {

namespace {

constexpr int kLMax = 4;
constexpr int kNMax = 40;
constexpr double kMaxSampleAlpha = 2.0;

std::vector<Complex> sample_alphas(const ValidateParams& p) {
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  std::vector<Complex> out;
  for (int i = 0; i < p.samples; ++i) {
    // Uniform over the disk |alpha| <= 2.
    out.push_back(std::polar(kMaxSampleAlpha * std::sqrt(radius(rng)), phase(rng)));
  }
  return out;
}

CheckResult make(const std::string& name, double tol, double residual) {
  return {name, tol, residual, residual <= tol};
}

// Laguerre path against the log-domain amplitudes of D(alpha)|l>.
CheckResult matrix_element_paths(const std::vector<Complex>& alphas) {
  double worst = 0.0;
  for (const auto& a : alphas) {
    const double f = envelope(a);
    for (int l = 0; l <= kLMax; ++l) {
      const auto amps = displaced_number_amplitudes(l, a, kNMax + 1);
      for (int n = 0; n <= kNMax; ++n) {
        worst = std::max(worst, std::abs(f * matrix_element(l, n, a) - amps[n]));
      }
    }
  }
  return make("matrix_element_paths", 1e-8, worst);
}

CheckResult row_normalization(const std::vector<Complex>& alphas) {
  double worst = 0.0;
  for (const auto& a : alphas) {
    int n_max = 0;
    for (int l = 0; l <= kLMax; ++l) n_max = std::max(n_max, required_n_max(a, l, 1e-12));
    const auto table = build_table(a, kLMax, n_max);
    for (int l = 0; l <= kLMax; ++l) worst = std::max(worst, std::abs(table.row_norm(l) - 1.0));
  }
  return make("row_normalization", 1e-9, worst);
}

CheckResult parity_rule(const std::vector<Complex>& alphas) {
  double worst = 0.0;
  for (const auto& a : alphas) {
    for (int l = 0; l <= kLMax; ++l) {
      for (int n = 0; n <= kNMax; ++n) {
        const Complex plus = matrix_element(l, n, a);
        const Complex minus = matrix_element(l, n, -a);
        const double sign = (n - l) % 2 == 0 ? 1.0 : -1.0;
        const double scale = std::abs(plus);
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(minus - sign * plus) / scale);
      }
    }
  }
  return make("parity_rule", 1e-12, worst);
}

BeamSplitterSpec test_spec(const ValidateParams& p, double t) {
  auto spec = BeamSplitterSpec::from_transmittance(t);
  spec.mirrored = p.mirrored_bs;
  return spec;
}

CheckResult bs_unitarity(const ValidateParams& p) {
  constexpr std::size_t d = 12;
  const auto op = bs_unitary(test_spec(p, 0.9), d, d);
  std::vector<std::size_t> columns;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; a + b < d; ++b) columns.push_back(a * d + b);
  }
  return make("bs_unitarity", 1e-8, unitarity_defect(op, columns));
}

// |alpha>|0> leaves as |t alpha>|-r alpha>.
CheckResult coherent_contract(const ValidateParams& p) {
  constexpr std::size_t d = 40;
  constexpr double t = 0.9;
  const Complex alpha{1.0, 0.5};
  const double r = std::sqrt(1.0 - t * t);
  const auto in = tensor(coherent_state(alpha, d), coherent_state(0.0, d));
  const auto out = apply(bs_unitary(test_spec(p, t), d, d), in, {0, 1}, {d, d});
  const auto expected = tensor(coherent_state(t * alpha, d), coherent_state(-r * alpha, d));
  return make("coherent_contract", 1e-9, 1.0 - fidelity_pure(expected, out));
}

CheckResult oracle_completeness() {
  auto cfg = SchemeConfig::from_alpha(1.0, 0.99);
  cfg.herald_max = 40;
  double total = 0.0;
  for (const auto& r : run_scheme_a_exact(cfg)) total += r.probability;
  return make("oracle_probability_completeness", 1e-8, std::abs(1.0 - total));
}

CheckResult oracle_convergence() {
  auto cfg = SchemeConfig::from_alpha(1.0, 0.999);
  cfg.herald_max = 2;
  const auto results = run_scheme_a_exact(cfg);
  double worst = 0.0;
  for (const auto& r : results) {
    worst = std::max(worst, std::abs(r.probability - success_prob_a(r.n, cfg)));
  }
  return make("oracle_probability_convergence", 3e-3, worst);
}

// Oracle infidelity of the vacuum herald against 1 - exp(-a^2 (1-t)/(1+t)),
// measured as |log2(ratio)| so that a factor of two maps to 1.
CheckResult infidelity_scaling() {
  double worst = 0.0;
  for (double t : {0.99, 0.999}) {
    auto cfg = balanced_config_a(0, SchemeConfig::from_alpha(1.0, t));
    cfg.herald_max = 0;
    const double oracle = 1.0 - run_scheme_a_exact(cfg).front().fidelity_vs_ideal;
    const double predicted = 1.0 - fidelity_balanced(1.0, t);
    worst = std::max(worst, std::abs(std::log2(oracle / predicted)));
  }
  return make("infidelity_scaling", 1.0, worst);
}

CheckResult balanced_identity() {
  double worst = 0.0;
  for (double alpha : {0.5, 1.5}) {
    for (int n = 0; n <= 5; ++n) {
      const auto cfg = balanced_config_a(n, SchemeConfig::from_alpha(alpha, 0.99));
      worst = std::max(worst, std::abs(success_prob_balanced_a(n, cfg) - success_prob_a(n, cfg)));
    }
  }
  return make("balanced_identity", 1e-12, worst);
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateParams& p) {
  const auto alphas = sample_alphas(p);
  return {matrix_element_paths(alphas), row_normalization(alphas), parity_rule(alphas),
          bs_unitarity(p),              coherent_contract(p),      oracle_completeness(),
          oracle_convergence(),         infidelity_scaling(),      balanced_identity()};
}

std::string validation_report_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json doc;
  bool all = true;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    doc["checks"].push_back({{"name", c.name},
                             {"tolerance", c.tolerance},
                             {"residual", c.residual},
                             {"pass", c.pass}});
  }
  doc["pass"] = all;
  return doc.dump(2) + "\n";
}

}  // namespace hybridgen::cli
