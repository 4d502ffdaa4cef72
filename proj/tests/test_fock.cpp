#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hybridgen/errors.hpp"
#include "hybridgen/fock.hpp"
#include "support.hpp"

using namespace hybridgen;

namespace {

constexpr double kInv2 = std::numbers::sqrt2 / 2.0;

Operator hadamard2() {
  Operator op;
  op.dim_in = op.dim_out = 2;
  op.entries = Eigen::MatrixXcd(2, 2);
  op.entries << kInv2, kInv2, kInv2, -kInv2;
  op.unitary = true;
  return op;
}

}  // namespace

TEST(Tensor, BasisStatesPlaceSingleAmplitude) {
  const auto s = tensor(MultiModeState::basis({2}, {0}), MultiModeState::basis({2}, {1}));
  ASSERT_EQ(s.dims(), (std::vector<std::size_t>{2, 2}));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(s[i], (i == s.flat_index({0, 1}) ? Complex{1.0} : Complex{}));
  }
}

TEST(Tensor, Linearity) {
  const auto plus = MultiModeState::single_mode({kInv2, kInv2});
  const auto s = tensor(plus, MultiModeState::basis({2}, {0}));
  EXPECT_NEAR(std::abs(s.at({0, 0}) - kInv2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.at({1, 0}) - kInv2), 0.0, 1e-15);
  EXPECT_EQ(s.at({0, 1}), Complex{});
  EXPECT_EQ(s.at({1, 1}), Complex{});
}

TEST(Tensor, NormIsMultiplicative) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto a = oracle_support::random_state({3, 4}, rng);
    const auto b = oracle_support::random_state({5}, rng);
    EXPECT_NEAR(tensor(a, b).norm(), 1.0, 1e-12);
  }
}

TEST(Tensor, RejectsOversizedProducts) {
  FockConfig small;
  small.max_total_dim = 100;
  const MultiModeState a({20});
  EXPECT_THROW(tensor(a, a, small), DimensionError);
}

TEST(State, RejectsBadShapes) {
  EXPECT_THROW(MultiModeState({2, 2}, std::vector<Complex>{1.0, 0.0}), ShapeError);
  EXPECT_THROW(MultiModeState({2}, std::vector<Complex>{std::nan(""), 0.0}), DomainError);
  EXPECT_THROW(MultiModeState::basis({2}, {2}), std::out_of_range);
}

TEST(State, RowMajorLayout) {
  const MultiModeState s({2, 3});
  EXPECT_EQ(s.flat_index({1, 2}), 5u);
  EXPECT_EQ(s.strides(), (std::vector<std::size_t>{3, 1}));
}

TEST(State, NormalizingZeroThrows) {
  EXPECT_THROW(MultiModeState({3}).normalized(), DomainError);
}

TEST(Project, DeterministicOutcome) {
  const auto s = MultiModeState::basis({2, 2}, {0, 1});
  const auto p = project_mode(s, 1, 1);
  EXPECT_NEAR(p.probability, 1.0, 1e-15);
  EXPECT_EQ(p.state.dims(), (std::vector<std::size_t>{2}));
  EXPECT_NEAR(std::abs(p.state[0]), 1.0, 1e-15);
}

TEST(Project, BellSlice) {
  const MultiModeState bell({2, 2}, std::vector<Complex>{kInv2, 0.0, 0.0, kInv2});
  const auto p = project_mode(bell, 1, 0);
  EXPECT_NEAR(p.probability, 0.5, 1e-15);
  EXPECT_NEAR(fidelity_pure(p.state, MultiModeState::basis({2}, {0})), 1.0, 1e-15);
}

TEST(Project, CompletenessOverOutcomes) {
  std::mt19937_64 rng(11);
  const auto s = oracle_support::random_state({3, 4, 5}, rng);
  double total = 0.0;
  for (std::size_t n = 0; n < 4; ++n) total += project_mode(s, 1, n).probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Project, ZeroProbabilityReturnsSentinel) {
  const auto s = MultiModeState::basis({2, 2}, {0, 0});
  const auto p = project_mode(s, 1, 1);
  EXPECT_EQ(p.probability, 0.0);
  EXPECT_TRUE(p.empty());
}

TEST(Project, OutOfRangeLevel) {
  const MultiModeState s({2, 2}, std::vector<Complex>{1.0, 0.0, 0.0, 0.0});
  EXPECT_THROW(project_mode(s, 1, 2), std::out_of_range);
  EXPECT_THROW(project_mode(s, 2, 0), std::out_of_range);
}

TEST(Inner, Orthonormality) {
  const auto two = MultiModeState::basis({4}, {2});
  const auto one = MultiModeState::basis({4}, {1});
  EXPECT_EQ(inner(two, two), Complex{1.0});
  EXPECT_EQ(inner(one, two), Complex{});
}

TEST(Inner, GramFormIsPositive) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto s = oracle_support::random_state({6}, rng).scaled(Complex{0.3, 1.7});
    const Complex v = inner(s, s);
    EXPECT_EQ(v.imag(), 0.0);
    EXPECT_GE(v.real(), 0.0);
  }
}

TEST(Fidelity, SelfOrthogonalAndPhase) {
  std::mt19937_64 rng(5);
  const auto s = oracle_support::random_state({3, 3}, rng);
  EXPECT_NEAR(fidelity_pure(s, s), 1.0, 1e-14);
  EXPECT_EQ(fidelity_pure(MultiModeState::basis({2}, {0}), MultiModeState::basis({2}, {1})), 0.0);
  EXPECT_NEAR(fidelity_pure(s, s.scaled(std::polar(1.0, 0.77))), 1.0, 1e-14);
}

TEST(Fidelity, ShapeMismatchThrows) {
  EXPECT_THROW(fidelity_pure(MultiModeState::basis({2}, {0}), MultiModeState::basis({3}, {0})),
               ShapeError);
}

TEST(PartialInner, ContractsProductFactor) {
  std::mt19937_64 rng(9);
  const auto a = oracle_support::random_state({3}, rng);
  const auto b = oracle_support::random_state({4}, rng);
  const auto c = oracle_support::random_state({2}, rng);
  const auto abc = tensor(tensor(a, b), c);
  const auto rest = partial_inner(b, abc, {1});
  EXPECT_NEAR(fidelity_pure(rest, tensor(a, c)), 1.0, 1e-12);
  EXPECT_NEAR(rest.norm(), 1.0, 1e-12);
}

TEST(Resized, PadsAndTruncates) {
  const MultiModeState s({2}, std::vector<Complex>{0.6, 0.8});
  const auto big = resized(s, {4});
  EXPECT_EQ(big.size(), 4u);
  EXPECT_EQ(big[1], Complex{0.8});
  EXPECT_EQ(big[3], Complex{});
  EXPECT_EQ(resized(big, {1})[0], Complex{0.6});
}

TEST(Apply, UnitaryPreservesNorm) {
  std::mt19937_64 rng(13);
  const auto s = oracle_support::random_state({2, 3, 2}, rng);
  const auto out = apply(hadamard2(), s, 2);
  EXPECT_NEAR(out.norm(), 1.0, FockConfig{}.unitary_tol);
  const auto back = apply(hadamard2(), out, 2);
  EXPECT_NEAR(fidelity_pure(back, s), 1.0, 1e-13);
}

TEST(Apply, ActsOnListedModesInOrder) {
  // Swap on modes (2, 0) of |0,0,1>: the photon moves to mode 0.
  Operator swap;
  swap.dim_in = swap.dim_out = 4;
  swap.entries = Eigen::MatrixXcd::Zero(4, 4);
  swap.entries(0, 0) = swap.entries(3, 3) = 1.0;
  swap.entries(1, 2) = swap.entries(2, 1) = 1.0;
  const auto s = MultiModeState::basis({2, 2, 2}, {0, 0, 1});
  const auto out = apply(swap, s, {2, 0}, {2, 2});
  EXPECT_EQ(out.at({1, 0, 0}), Complex{1.0});
}

TEST(Apply, WrongOperatorSizeThrows) {
  const MultiModeState s({3}, std::vector<Complex>{1.0, 0.0, 0.0});
  EXPECT_THROW(apply(hadamard2(), s, 0), ShapeError);
}

TEST(Unitarity, DefectOfHadamardVanishes) {
  EXPECT_LT(unitarity_defect(hadamard2(), 2), 1e-15);
}
