#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hybridgen {

// Total amplitude count or a mode dimension is outside the supported range.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Two states (or a state and an operator) disagree on mode layout.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A physical or index argument lies outside the domain of the formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configuration document or parameter block is malformed.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The Fock truncation cuts off more probability than allowed.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, std::size_t suggested_dim)
      : std::runtime_error(what), suggested_dim_(suggested_dim) {}

  std::size_t suggested_dim() const noexcept { return suggested_dim_; }

 private:
  std::size_t suggested_dim_;
};

}  // namespace hybridgen
