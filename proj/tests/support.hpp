#pragma once

// Independent reference implementations used only by the tests: dense
// matrix exponentials of the displacement and beam-splitter generators.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "hybridgen/fock.hpp"

namespace hybridgen::oracle_support {

inline Eigen::MatrixXcd annihilation(std::size_t dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// exp(alpha a^dagger - conj(alpha) a) on a truncated space.
inline Eigen::MatrixXcd displacement_expm(Complex alpha, std::size_t dim) {
  const Eigen::MatrixXcd a = annihilation(dim);
  const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

// exp(theta (a1^dagger a2 - a1 a2^dagger)) with cos(theta) = t, which sends
// a1^dagger to t a1^dagger - r a2^dagger. Index p * dim + q for |p, q>.
inline Eigen::MatrixXcd beam_splitter_expm(double t, std::size_t dim) {
  const Eigen::MatrixXcd a = annihilation(dim);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd a1 = Eigen::kroneckerProduct(a, id);
  const Eigen::MatrixXcd a2 = Eigen::kroneckerProduct(id, a);
  const Eigen::MatrixXcd gen = a1.adjoint() * a2 - a1 * a2.adjoint();
  return (std::acos(t) * gen).exp();
}

inline MultiModeState random_state(const std::vector<std::size_t>& dims,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::vector<Complex> amps(total);
  for (auto& x : amps) x = {g(rng), g(rng)};
  return MultiModeState(dims, std::move(amps)).normalized();
}

}  // namespace hybridgen::oracle_support
