#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace hybridgen {

using Complex = std::complex<double>;

struct FockConfig {
  double norm_tol = 1e-9;
  double unitary_tol = 1e-8;
  std::size_t max_total_dim = std::size_t{1} << 20;
};

// Dense amplitude tensor over truncated Fock modes, row-major in the mode
// order (the last mode varies fastest). Immutable once built.
class MultiModeState {
 public:
  MultiModeState() = default;
  explicit MultiModeState(std::vector<std::size_t> dims,
                          const FockConfig& cfg = {});
  MultiModeState(std::vector<std::size_t> dims, std::vector<Complex> amps,
                 const FockConfig& cfg = {});

  static MultiModeState basis(std::vector<std::size_t> dims,
                              const std::vector<std::size_t>& levels);
  static MultiModeState single_mode(std::vector<Complex> amps);
  // Placeholder returned by projections with zero probability.
  static MultiModeState empty_sentinel(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t num_modes() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
  bool is_empty() const noexcept { return empty_; }

  Complex operator[](std::size_t flat) const { return amps_[flat]; }
  Complex at(const std::vector<std::size_t>& levels) const;
  std::size_t flat_index(const std::vector<std::size_t>& levels) const;
  std::vector<std::size_t> strides() const;

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = FockConfig{}.norm_tol) const;
  MultiModeState normalized() const;
  MultiModeState scaled(Complex factor) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Complex> amps_;
  bool empty_ = false;
};

// Linear map between the product space of one or more modes.
struct Operator {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  Eigen::MatrixXcd entries;
  bool unitary = false;
};

struct Projection {
  MultiModeState state;
  double probability = 0.0;
  bool empty() const noexcept { return state.is_empty(); }
};

std::size_t checked_total_dim(const std::vector<std::size_t>& dims,
                              const FockConfig& cfg = {});

MultiModeState tensor(const MultiModeState& a, const MultiModeState& b,
                      const FockConfig& cfg = {});

// ca*a + cb*b for states on identical mode lists.
MultiModeState superpose(Complex ca, const MultiModeState& a, Complex cb,
                         const MultiModeState& b);

// Unnormalized slice with `mode` fixed at level n; the mode is removed.
MultiModeState slice_mode(const MultiModeState& s, std::size_t mode,
                          std::size_t n);

Projection project_mode(const MultiModeState& s, std::size_t mode,
                        std::size_t n);

Complex inner(const MultiModeState& a, const MultiModeState& b);

double fidelity_pure(const MultiModeState& a, const MultiModeState& b);

// <bra| contracted on `modes` of s; the remaining modes keep their order.
MultiModeState partial_inner(const MultiModeState& bra,
                             const MultiModeState& s,
                             const std::vector<std::size_t>& modes);

// Zero-pads or truncates every mode to the requested dimensions.
MultiModeState resized(const MultiModeState& s,
                       const std::vector<std::size_t>& dims);

// Applies op to the product space of `modes` (in the listed order). The
// listed modes take the dimensions `out_dims` afterwards.
MultiModeState apply(const Operator& op, const MultiModeState& s,
                     const std::vector<std::size_t>& modes,
                     const std::vector<std::size_t>& out_dims);

MultiModeState apply(const Operator& op, const MultiModeState& s,
                     std::size_t mode);

// max |(U^dagger U - I)_{ij}| over the listed columns.
double unitarity_defect(const Operator& op,
                        const std::vector<std::size_t>& columns);
// Same, over the leading `interior` columns.
double unitarity_defect(const Operator& op, std::size_t interior);

}  // namespace hybridgen
