#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qamlab {

/// A value fell outside a generator's domain or range.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// The aggregate inside a quasi-arithmetic mean is not in the generator's range,
/// so the mean is undefined for this instance.
class WellDefinednessError : public std::runtime_error {
 public:
  WellDefinednessError(const std::string& what, double aggregate);
  double aggregate() const noexcept { return aggregate_; }

 private:
  double aggregate_;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Config parse failure. `line` is 1-based; 0 means the location is unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qamlab
