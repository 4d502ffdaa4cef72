#include <cmath>

#include <gtest/gtest.h>

#include "hybridgen/errors.hpp"
#include "hybridgen/fidelity.hpp"
#include "hybridgen/oracle.hpp"
#include "hybridgen/schemes.hpp"

using namespace hybridgen;

namespace {

// Ideal state re-materialized at beta / t and renormalized numerically.
template <class State>
MultiModeState rescaled(State st, double t, std::size_t dim) {
  st.beta /= t;
  st.total_norm = 1.0;
  return st.materialize(dim).normalized();
}

}  // namespace

TEST(BalancedFidelity, Values) {
  EXPECT_EQ(fidelity_balanced(1.3, 1.0), 1.0);
  EXPECT_EQ(fidelity_balanced(0.0, 0.7), 1.0);
  EXPECT_NEAR(fidelity_balanced(1.0, 0.8), std::exp(-1.0 / 9.0), 1e-15);
  EXPECT_NEAR(fidelity_balanced(1.0, 0.8), 0.8948, 5e-5);
  EXPECT_THROW(fidelity_balanced(1.0, 0.0), DomainError);
}

TEST(ZeroOrderFidelity, BalancedReducesToClosedForm) {
  for (double t : {0.8, 0.9, 0.99}) {
    for (int n : {0, 2, 3}) {
      const auto cfg = balanced_config_a(n, SchemeConfig::from_alpha(1.0, t));
      EXPECT_NEAR(fidelity_a_analytic(n, cfg), fidelity_balanced(1.0, t), 1e-12);
    }
    const auto cfg_b = SchemeConfig::dual_from_alpha(1.0, 1.0, t);
    EXPECT_NEAR(fidelity_b_analytic(0, 0, cfg_b), fidelity_balanced(1.0, t), 1e-12);
  }
}

TEST(ZeroOrderFidelity, MatchesDirectOverlapSingleRail) {
  const auto cfg = SchemeConfig::from_alpha(1.0, 0.9, 0.8, 0.6);
  const std::size_t d = truncation_dim(cfg.beta() / cfg.t);
  const auto st = hybrid_state_a(0, cfg);
  const double direct = fidelity_pure(st.materialize(d), rescaled(st, cfg.t, d));
  EXPECT_NEAR(fidelity_a_analytic(0, cfg), direct, 1e-9);
  EXPECT_LT(fidelity_report_a(0, cfg, false).zero_order_residual, 1e-9);
}

TEST(ZeroOrderFidelity, MatchesDirectOverlapDualRail) {
  const auto cfg = SchemeConfig::dual_from_alpha(0.7, 0.7, 0.95);
  const std::size_t d = truncation_dim(cfg.beta() / cfg.t);
  const auto st = hybrid_state_b(0, 1, cfg);
  const double direct = fidelity_pure(st.materialize(d), rescaled(st, cfg.t, d));
  EXPECT_NEAR(fidelity_b_analytic(0, 1, cfg), direct, 1e-9);
}

TEST(ZeroOrderFidelity, TransparentLimit) {
  const auto cfg = SchemeConfig::from_alpha(0.8, 1.0 - 1e-9, 0.6, 0.8);
  EXPECT_NEAR(fidelity_a_analytic(2, cfg), 1.0, 1e-6);
}

TEST(FirstOrder, VanishingReflectivityKeepsZeroOrder) {
  const auto cfg = SchemeConfig::from_alpha(0.05, std::sqrt(1.0 - 1e-6));
  const auto e = first_order_expansion_a(0, cfg);
  EXPECT_LT(std::abs(e.weight), 2e-3);
  EXPECT_NEAR(fidelity_first_order(0, cfg), fidelity_a_analytic(0, cfg), 1e-5);
}

TEST(FirstOrder, ImprovesAgreementWithOracle) {
  auto cfg = SchemeConfig::from_alpha(1.0, 0.95);
  cfg.herald_max = 0;
  const auto oracle = run_scheme_a_exact(cfg).front().state;
  const std::size_t d = oracle.dims()[0];
  const auto e = first_order_expansion_a(0, cfg, d);
  EXPECT_GE(fidelity_pure(e.combined(), oracle), fidelity_pure(e.zero_order, oracle));
}

TEST(FirstOrder, FormulaDiffersFromOverlapByDroppedTerm) {
  for (int n : {0, 2}) {
    const auto cfg = SchemeConfig::from_alpha(1.0, 0.95, 0.8, 0.6);
    const std::size_t d = first_order_dim(cfg);
    const auto e = first_order_expansion_a(n, cfg, d);
    const auto ideal = hybrid_state_a(n, cfg).materialize(d);
    const double direct = fidelity_pure(ideal, e.combined());
    const double x01 = inner(e.zero_order, e.first_order).real();
    const double nr_sq = 1.0 / (1.0 + e.weight * e.weight + 2.0 * e.weight * x01);
    const double dropped = nr_sq * e.weight * e.weight * std::norm(inner(ideal, e.first_order));
    EXPECT_NEAR(first_order_fidelity(e, ideal) + dropped, direct, 1e-12);
  }
}

TEST(FirstOrder, PoleHeraldIsFinite) {
  const auto cfg = SchemeConfig::from_alpha(1.0, 0.99);
  const double f = fidelity_first_order(1, cfg);
  EXPECT_TRUE(std::isfinite(f));
  EXPECT_GT(f, 0.9);
}

TEST(FirstOrder, BalancedDeviationBoundedByRSquared) {
  for (int n : {0, 2}) {
    for (double r : {0.05, 0.1, 0.15, 0.2}) {
      const double t = std::sqrt(1.0 - r * r);
      const auto cfg = balanced_config_a(n, SchemeConfig::from_alpha(1.0, t));
      EXPECT_LE(std::abs(fidelity_first_order(n, cfg) - fidelity_balanced(1.0, t)), 1.5 * r * r)
          << "n=" << n << " r=" << r;
    }
  }
}

TEST(Report, CollectsAllColumns) {
  const auto cfg = SchemeConfig::from_alpha(1.0, 0.99);
  const auto rep = fidelity_report_a(0, cfg, true);
  EXPECT_FALSE(rep.pole);
  EXPECT_NEAR(rep.r, cfg.r(), 1e-15);
  EXPECT_NEAR(rep.oracle, 0.99486, 1e-5);
  EXPECT_NEAR(rep.first_order, fidelity_first_order(0, cfg), 1e-15);
  EXPECT_TRUE(fidelity_report_a(1, cfg, false).pole);
}
