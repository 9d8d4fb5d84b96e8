#pragma once

#include <stdexcept>
#include <string>

namespace renormlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad configuration: unknown family, malformed config file, invalid knob.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameter search failed: bracket failure, digit mismatch between solved maps.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Working precision or iteration budget exhausted.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// The critical orbit hit 0 exactly: rational rotation number at working precision.
class PeriodicOrbitError : public Error {
 public:
  PeriodicOrbitError(const std::string& msg, long period)
      : Error(msg), period_(period) {}
  long period() const { return period_; }

 private:
  long period_;
};

/// A commuting-pair validation clause failed.
class PairValidationError : public Error {
 public:
  using Error::Error;
};

/// Pre-renormalization requested on a pair with infinite period.
class NotRenormalizableError : public Error {
 public:
  using Error::Error;
};

/// Combinatorial structure broke (atom labels, digit bookkeeping).
class CombinatoricsError : public Error {
 public:
  using Error::Error;
};

}  // namespace renormlab
