#include "qamlab/errors.hpp"

namespace qamlab {

DomainError::DomainError(const std::string& what, double value)
    : std::domain_error(what), value_(value) {}

WellDefinednessError::WellDefinednessError(const std::string& what, double aggregate)
    : std::runtime_error(what), aggregate_(aggregate) {}

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

}  // namespace qamlab
