#pragma once

#include <functional>

#include "renormlab/circle_map.hpp"
#include "renormlab/contfrac.hpp"

namespace renormlab {

inline constexpr long kDefaultMaxLevel = 20;
inline constexpr long kDefaultMaxIterations = 1L << 21;

/// Continued-fraction digits of rho(map) from closest returns of the critical
/// orbit. Stops after max_level digits or when the cumulative number of map
/// applications would exceed max_iterations (result flagged incomplete).
/// Throws PeriodicOrbitError if the orbit hits 0 exactly.
ContinuedFractionState closest_returns(const CircleMapLift& map,
                                       long max_level = kDefaultMaxLevel,
                                       long max_iterations = kDefaultMaxIterations);

/// Three-way comparison of rho(map) against an infinite digit target.
/// sign is -1/+1 once a digit (or a rational collision) decides the order,
/// 0 when every digit resolvable within the budget matches.
struct RotationComparison {
  int sign = 0;
  long digits_matched = 0;
};
RotationComparison compare_rotation(const CircleMapLift& map, const DigitTarget& target,
                                    long max_level, long max_iterations);

struct SolveResult {
  Real omega;
  long verified_digits = 0;
  bool met_depth = false;
  ContinuedFractionState cf;
};

struct SolveOptions {
  long max_iterations = kDefaultMaxIterations;
  long extra_levels = 3;        // verification margin beyond the requested depth
  double omega_lo = 0.0;        // bracket; rho must be monotone across it
  double omega_hi = 1.0 - 1.0 / 1024.0;
};

/// Bisection on the translation parameter until the map reproduces the target
/// digits for at least `depth` levels. The interval is narrowed to width
/// 2^(16-bits) regardless of early digit agreement. Throws SolverError when
/// the target is not bracketed; a digit-verification shortfall is reported via
/// met_depth = false rather than thrown.
SolveResult solve_parameter(const CircleMapLift& family_template, const DigitTarget& target,
                            long depth, const SolveOptions& opt = SolveOptions{});

}  // namespace renormlab
