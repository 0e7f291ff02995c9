#pragma once

#include <stdexcept>
#include <string>

namespace pseudoatom {

  /// The potential stops binding (non-positive effective charge) or an input
  /// lies outside the domain of a model formula.
  class ModelDomainError : public std::domain_error {
  public:
    explicit ModelDomainError(const std::string& what) : std::domain_error(what) {}
  };

  /// Overlap matrix failed its Cholesky factorization.
  class FactorizationError : public std::runtime_error {
  public:
    explicit FactorizationError(const std::string& what) : std::runtime_error(what) {}
  };

  /// Iterative refinement hit its cap, or the spectrum was degenerate.
  class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
  };

  /// Malformed configuration, flags, or data files.
  class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
  };

} // namespace pseudoatom
