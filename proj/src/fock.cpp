#include "hybridgen/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "hybridgen/errors.hpp"

namespace hybridgen {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const MultiModeState& a, const MultiModeState& b,
                        const char* what) {
  if (a.dims() != b.dims()) {
    throw ShapeError(std::string(what) + ": mode lists differ");
  }
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) out[i - 1] = out[i] * dims[i];
  return out;
}

}  // namespace

std::size_t checked_total_dim(const std::vector<std::size_t>& dims,
                              const FockConfig& cfg) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError("mode dimension must be >= 1");
    if (total > cfg.max_total_dim / d) {
      throw DimensionError("total dimension exceeds max_total_dim (" +
                           std::to_string(cfg.max_total_dim) + ")");
    }
    total *= d;
  }
  if (total > cfg.max_total_dim) {
    throw DimensionError("total dimension exceeds max_total_dim (" +
                         std::to_string(cfg.max_total_dim) + ")");
  }
  return total;
}

MultiModeState::MultiModeState(std::vector<std::size_t> dims,
                               const FockConfig& cfg)
    : dims_(std::move(dims)) {
  amps_.assign(checked_total_dim(dims_, cfg), Complex{});
}

MultiModeState::MultiModeState(std::vector<std::size_t> dims,
                               std::vector<Complex> amps,
                               const FockConfig& cfg)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
  if (amps_.size() != checked_total_dim(dims_, cfg)) {
    throw ShapeError("amplitude count does not match the product of dims");
  }
  for (const Complex& z : amps_) {
    if (!finite(z)) throw DomainError("state amplitudes must be finite");
  }
}

MultiModeState MultiModeState::basis(std::vector<std::size_t> dims,
                                     const std::vector<std::size_t>& levels) {
  MultiModeState s(std::move(dims));
  s.amps_[s.flat_index(levels)] = 1.0;
  return s;
}

MultiModeState MultiModeState::single_mode(std::vector<Complex> amps) {
  const std::size_t d = amps.size();
  return MultiModeState({d}, std::move(amps));
}

MultiModeState MultiModeState::empty_sentinel(std::vector<std::size_t> dims) {
  MultiModeState s(std::move(dims));
  s.empty_ = true;
  return s;
}

std::vector<std::size_t> MultiModeState::strides() const {
  return strides_of(dims_);
}

std::size_t MultiModeState::flat_index(
    const std::vector<std::size_t>& levels) const {
  if (levels.size() != dims_.size()) {
    throw ShapeError("level list length differs from mode count");
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (levels[i] >= dims_[i]) throw std::out_of_range("Fock level out of range");
    idx = idx * dims_[i] + levels[i];
  }
  return idx;
}

Complex MultiModeState::at(const std::vector<std::size_t>& levels) const {
  return amps_[flat_index(levels)];
}

double MultiModeState::norm_squared() const {
  double acc = 0.0;
  for (const Complex& z : amps_) acc += std::norm(z);
  return acc;
}

double MultiModeState::norm() const { return std::sqrt(norm_squared()); }

bool MultiModeState::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

MultiModeState MultiModeState::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw DomainError("cannot normalize the zero vector");
  return scaled(1.0 / nrm);
}

MultiModeState MultiModeState::scaled(Complex factor) const {
  MultiModeState out = *this;
  for (Complex& z : out.amps_) z *= factor;
  return out;
}

MultiModeState tensor(const MultiModeState& a, const MultiModeState& b,
                      const FockConfig& cfg) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  checked_total_dim(dims, cfg);
  std::vector<Complex> amps;
  amps.reserve(a.size() * b.size());
  for (const Complex& x : a.amplitudes()) {
    for (const Complex& y : b.amplitudes()) amps.push_back(x * y);
  }
  return MultiModeState(std::move(dims), std::move(amps), cfg);
}

MultiModeState superpose(Complex ca, const MultiModeState& a, Complex cb,
                         const MultiModeState& b) {
  require_same_shape(a, b, "superpose");
  std::vector<Complex> amps(a.size());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = ca * a[i] + cb * b[i];
  return MultiModeState(a.dims(), std::move(amps));
}

MultiModeState slice_mode(const MultiModeState& s, std::size_t mode,
                          std::size_t n) {
  if (mode >= s.num_modes()) throw std::out_of_range("mode index out of range");
  if (n >= s.dims()[mode]) throw std::out_of_range("Fock level out of range");
  std::vector<std::size_t> dims = s.dims();
  const std::size_t d = dims[mode];
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(mode));
  std::size_t inner_block = 1;
  for (std::size_t i = mode + 1; i < s.num_modes(); ++i) inner_block *= s.dims()[i];
  const std::size_t outer = s.size() / (d * inner_block);
  std::vector<Complex> amps;
  amps.reserve(outer * inner_block);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = (o * d + n) * inner_block;
    for (std::size_t i = 0; i < inner_block; ++i) amps.push_back(s[base + i]);
  }
  return MultiModeState(std::move(dims), std::move(amps));
}

Projection project_mode(const MultiModeState& s, std::size_t mode,
                        std::size_t n) {
  MultiModeState slice = slice_mode(s, mode, n);
  const double p = slice.norm_squared();
  if (p == 0.0) {
    return {MultiModeState::empty_sentinel(slice.dims()), 0.0};
  }
  return {slice.scaled(1.0 / std::sqrt(p)), p};
}

Complex inner(const MultiModeState& a, const MultiModeState& b) {
  require_same_shape(a, b, "inner");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double fidelity_pure(const MultiModeState& a, const MultiModeState& b) {
  return std::norm(inner(a, b));
}

MultiModeState partial_inner(const MultiModeState& bra,
                             const MultiModeState& s,
                             const std::vector<std::size_t>& modes) {
  if (modes.size() != bra.num_modes()) {
    throw ShapeError("partial_inner: bra mode count differs from mode list");
  }
  std::vector<bool> contracted(s.num_modes(), false);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::size_t m = modes[i];
    if (m >= s.num_modes()) throw std::out_of_range("mode index out of range");
    if (contracted[m]) throw ShapeError("partial_inner: repeated mode");
    if (s.dims()[m] != bra.dims()[i]) {
      throw ShapeError("partial_inner: bra dimension differs from mode");
    }
    contracted[m] = true;
  }
  std::vector<std::size_t> rest_dims;
  for (std::size_t m = 0; m < s.num_modes(); ++m) {
    if (!contracted[m]) rest_dims.push_back(s.dims()[m]);
  }
  const auto rest_strides = strides_of(rest_dims);
  const auto bra_strides = bra.strides();
  std::vector<Complex> out(std::accumulate(rest_dims.begin(), rest_dims.end(),
                                           std::size_t{1},
                                           std::multiplies<>()),
                           Complex{});
  std::vector<std::size_t> digits(s.num_modes(), 0);
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    std::size_t bra_idx = 0;
    std::size_t rest_idx = 0;
    for (std::size_t m = 0, r = 0; m < s.num_modes(); ++m) {
      if (contracted[m]) continue;
      rest_idx += digits[m] * rest_strides[r++];
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
      bra_idx += digits[modes[i]] * bra_strides[i];
    }
    out[rest_idx] += std::conj(bra[bra_idx]) * s[flat];
    for (std::size_t m = s.num_modes(); m-- > 0;) {
      if (++digits[m] < s.dims()[m]) break;
      digits[m] = 0;
    }
  }
  return MultiModeState(std::move(rest_dims), std::move(out));
}

MultiModeState resized(const MultiModeState& s,
                       const std::vector<std::size_t>& dims) {
  if (dims.size() != s.num_modes()) {
    throw ShapeError("resized: mode count differs");
  }
  MultiModeState proto(dims);
  std::vector<Complex> out(proto.size(), Complex{});
  const auto out_strides = proto.strides();
  std::vector<std::size_t> digits(s.num_modes(), 0);
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    bool inside = true;
    std::size_t idx = 0;
    for (std::size_t m = 0; m < dims.size(); ++m) {
      if (digits[m] >= dims[m]) {
        inside = false;
        break;
      }
      idx += digits[m] * out_strides[m];
    }
    if (inside) out[idx] = s[flat];
    for (std::size_t m = s.num_modes(); m-- > 0;) {
      if (++digits[m] < s.dims()[m]) break;
      digits[m] = 0;
    }
  }
  return MultiModeState(dims, std::move(out));
}

MultiModeState apply(const Operator& op, const MultiModeState& s,
                     const std::vector<std::size_t>& modes,
                     const std::vector<std::size_t>& out_dims) {
  if (modes.empty() || modes.size() != out_dims.size()) {
    throw ShapeError("apply: mode list and output dims disagree");
  }
  if (static_cast<std::size_t>(op.entries.rows()) != op.dim_out ||
      static_cast<std::size_t>(op.entries.cols()) != op.dim_in) {
    throw ShapeError("apply: operator matrix shape differs from its dims");
  }
  std::vector<bool> target(s.num_modes(), false);
  std::size_t in_prod = 1;
  std::size_t out_prod = 1;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] >= s.num_modes()) throw std::out_of_range("mode index out of range");
    if (target[modes[i]]) throw ShapeError("apply: repeated mode");
    target[modes[i]] = true;
    in_prod *= s.dims()[modes[i]];
    out_prod *= out_dims[i];
  }
  if (in_prod != op.dim_in || out_prod != op.dim_out) {
    throw ShapeError("apply: operator dims do not match the target modes");
  }

  std::vector<std::size_t> new_dims = s.dims();
  for (std::size_t i = 0; i < modes.size(); ++i) new_dims[modes[i]] = out_dims[i];
  MultiModeState proto(new_dims);
  const auto in_strides = s.strides();
  const auto out_strides = proto.strides();

  // Offsets of every target-space basis vector within the flat tensors.
  auto offsets = [&](const std::vector<std::size_t>& dims,
                     const std::vector<std::size_t>& strides) {
    std::size_t count = 1;
    for (std::size_t d : dims) count *= d;
    std::vector<std::size_t> off(count, 0);
    std::vector<std::size_t> digits(dims.size(), 0);
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t o = 0;
      for (std::size_t i = 0; i < dims.size(); ++i) o += digits[i] * strides[modes[i]];
      off[j] = o;
      for (std::size_t i = dims.size(); i-- > 0;) {
        if (++digits[i] < dims[i]) break;
        digits[i] = 0;
      }
    }
    return off;
  };
  std::vector<std::size_t> in_target_dims;
  for (std::size_t m : modes) in_target_dims.push_back(s.dims()[m]);
  const auto in_off = offsets(in_target_dims, in_strides);
  const auto out_off = offsets(out_dims, out_strides);

  std::vector<std::size_t> rest_modes;
  for (std::size_t m = 0; m < s.num_modes(); ++m) {
    if (!target[m]) rest_modes.push_back(m);
  }
  std::vector<Complex> out(proto.size(), Complex{});
  Eigen::VectorXcd v(static_cast<Eigen::Index>(op.dim_in));
  std::vector<std::size_t> digits(rest_modes.size(), 0);
  const std::size_t rest_count = s.size() / in_prod;
  for (std::size_t r = 0; r < rest_count; ++r) {
    std::size_t in_base = 0;
    std::size_t out_base = 0;
    for (std::size_t i = 0; i < rest_modes.size(); ++i) {
      in_base += digits[i] * in_strides[rest_modes[i]];
      out_base += digits[i] * out_strides[rest_modes[i]];
    }
    for (std::size_t j = 0; j < op.dim_in; ++j) {
      v[static_cast<Eigen::Index>(j)] = s[in_base + in_off[j]];
    }
    const Eigen::VectorXcd w = op.entries * v;
    for (std::size_t j = 0; j < op.dim_out; ++j) {
      out[out_base + out_off[j]] = w[static_cast<Eigen::Index>(j)];
    }
    for (std::size_t i = rest_modes.size(); i-- > 0;) {
      if (++digits[i] < s.dims()[rest_modes[i]]) break;
      digits[i] = 0;
    }
  }
  return MultiModeState(std::move(new_dims), std::move(out));
}

MultiModeState apply(const Operator& op, const MultiModeState& s,
                     std::size_t mode) {
  return apply(op, s, {mode}, {op.dim_out});
}

double unitarity_defect(const Operator& op,
                        const std::vector<std::size_t>& columns) {
  double worst = 0.0;
  for (std::size_t a = 0; a < columns.size(); ++a) {
    const auto ca = op.entries.col(static_cast<Eigen::Index>(columns[a]));
    for (std::size_t b = a; b < columns.size(); ++b) {
      const auto cb = op.entries.col(static_cast<Eigen::Index>(columns[b]));
      const Complex g = ca.dot(cb);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double unitarity_defect(const Operator& op, std::size_t interior) {
  std::vector<std::size_t> cols(std::min<std::size_t>(interior, op.dim_in));
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return unitarity_defect(op, cols);
}

}  // namespace hybridgen
