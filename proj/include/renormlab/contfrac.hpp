#pragma once

#include <utility>
#include <vector>

#include "renormlab/real.hpp"

namespace renormlab {

/// Digits, convergents and closest-return bookkeeping of a rotation number.
///
/// digits holds a_0..a_{N-1}; convergents holds (p_n, q_n) for n = 0..N with
/// p_0/q_0 = 0/1, q_1 = a_0 and q_{n+1} = a_n*q_n + q_{n-1};
/// closest_return_points holds r_n = lift^{q_n}(0) - p_n, alternating in sign
/// with strictly decreasing magnitude.
struct ContinuedFractionState {
  std::vector<long> digits;
  std::vector<std::pair<long, long>> convergents;
  std::vector<Real> closest_return_points;
  bool complete = true;  // false when the iteration budget truncated the run
  // |r_{n+1}| < |r_n| held at every recorded level. True for the solved maps
  // this artifact studies; mode-locked parameters can break it mid-search.
  bool returns_contracting = true;
  long iterations_used = 0;

  long levels() const { return static_cast<long>(digits.size()); }
  long p(long n) const { return convergents.at(static_cast<size_t>(n)).first; }
  long q(long n) const { return convergents.at(static_cast<size_t>(n)).second; }
};

/// Infinite digit sequence given as a finite prefix followed by a repeating
/// periodic tail. Golden mean: prefix {}, period {1}.
struct DigitTarget {
  std::vector<long> prefix;
  std::vector<long> period;

  long at(long k) const;
  std::vector<long> first(long n) const;
  /// Value of the infinite continued fraction at the given precision.
  Real value(int bits) const;
};

/// Exact rational p/q in lowest terms, q > 0.
struct Rational {
  long long num = 0;
  long long den = 1;
};

/// G(theta) = 1/theta - floor(1/theta) for theta in (0,1).
Real gauss_map(const Real& theta);

/// Value of the finite continued fraction [a_0, ..., a_{N-1}]
/// = 1/(a_0 + 1/(a_1 + ...)), computed in exact rational arithmetic and
/// rounded once to the requested precision.
Real cf_to_real(const std::vector<long>& digits, int bits = kDefaultBits);

/// Exact rational value of a finite continued fraction. Throws on overflow.
Rational cf_to_rational(const std::vector<long>& digits);

}  // namespace renormlab
