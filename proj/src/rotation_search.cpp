#include "renormlab/rotation_search.hpp"

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

// Level bookkeeping for one closest-return time.
struct Level {
  long q;
  long p;
  Real r;  // lift^q(0) - p
};

// Per-digit callback; returning false stops the walk.
using DigitCallback = std::function<bool(long level, long digit)>;

// Called when a scan stops before the digit is complete (iteration budget or
// per-level cap): the unfinished digit is >= floor_digit.
using TruncationCallback = std::function<void(long level, long floor_digit)>;

// Optional per-level scan cap; the walk stops once a digit is known to be
// >= cap(level) without finishing the scan.
using LevelCap = std::function<long(long level)>;

// Core closest-return walk. The orbit of 0 is tracked in circle coordinates
// (fraction u, integer winding w), advancing one map application at a time.
// A digit is emitted whenever the running point, shifted by the current
// convergent integers, changes sign. Sign decisions use exact integer
// bookkeeping, never rounded magnitudes.
ContinuedFractionState walk_returns(const CircleMapLift& map, long max_level,
                                    long max_iterations, const DigitCallback& on_digit,
                                    const TruncationCallback& on_truncate,
                                    const LevelCap& level_cap) {
  const int bits = map.bits();
  ContinuedFractionState st;

  Real u(bits);  // starts at the critical point 0
  long w = 0;
  long index = 0;
  auto advance = [&](long count) {
    for (long i = 0; i < count; ++i) {
      map.step_circle(u, w);
      ++index;
      if (u.is_zero()) {
        throw PeriodicOrbitError(
            "critical orbit hit 0 exactly at iterate " + std::to_string(index), index);
      }
    }
  };

  advance(1);
  if (w != 0) {
    throw PrecisionError("lift normalization broken: f(0) not in (0,1)");
  }
  Level prev{0, 1, Real(-1L, bits)};
  Level cur{1, 0, u};
  st.convergents.emplace_back(0L, 1L);
  st.closest_return_points.push_back(cur.r);

  // Orbit sits at index prev.q + j*cur.q with j = 1.
  long j = 1;
  Real s(bits), s_keep(bits);
  while (static_cast<long>(st.digits.size()) < max_level) {
    long level = static_cast<long>(st.digits.size());
    // s_j = lift^(prev.q + j*cur.q)(0) - (prev.p + j*cur.p); its sign is read
    // off the exact integer offset since the fractional part u lies in (0,1).
    long offset = w - (prev.p + j * cur.p);
    int sgn;
    if (offset == 0) {
      sgn = 1;
      s.set(u);
    } else if (offset == -1) {
      sgn = -1;
      Real::sub(s, u, Real(1L, bits));
    } else {
      throw PrecisionError("closest-return offset left {-1,0}; precision exhausted");
    }

    if (sgn == prev.r.sign()) {
      // Same side: the digit at this level is at least j.
      s_keep.set(s);
      if (level_cap && j >= level_cap(level)) {
        st.complete = false;
        if (on_truncate) on_truncate(level, j);
        break;
      }
      if (index + cur.q > max_iterations) {
        st.complete = false;
        if (on_truncate) on_truncate(level, j);
        break;
      }
      advance(cur.q);
      ++j;
      continue;
    }

    // Sign flipped at step j: the digit is j-1.
    long a = j - 1;
    if (a < 1) {
      throw PrecisionError("closest-return scan flipped immediately; precision exhausted");
    }
    Level next{a * cur.q + prev.q, a * cur.p + prev.p, s_keep};
    if (!(abs(next.r) < abs(cur.r))) st.returns_contracting = false;
    if (next.r.sign() == cur.r.sign()) {
      throw PrecisionError("closest returns stopped alternating; precision exhausted");
    }
    st.digits.push_back(a);
    st.convergents.emplace_back(next.p, next.q);
    st.closest_return_points.push_back(next.r);
    prev = cur;
    cur = next;
    j = 1;  // the orbit already sits at index prev.q + 1*cur.q
    if (on_digit && !on_digit(level, a)) break;
  }
  st.iterations_used = index;
  return st;
}

}  // namespace

ContinuedFractionState closest_returns(const CircleMapLift& map, long max_level,
                                       long max_iterations) {
  return walk_returns(map, max_level, max_iterations, nullptr, nullptr, nullptr);
}

RotationComparison compare_rotation(const CircleMapLift& map, const DigitTarget& target,
                                    long max_level, long max_iterations) {
  RotationComparison out;
  // A bigger digit at even depth means a smaller value; the order flips at
  // each deeper level.
  auto decide = [&](long level, bool map_digit_bigger) {
    int s = map_digit_bigger ? -1 : 1;
    if (level % 2 == 1) s = -s;
    out.sign = s;
  };
  auto on_digit = [&](long level, long digit) -> bool {
    long want = target.at(level);
    if (digit == want) {
      out.digits_matched = level + 1;
      return true;
    }
    decide(level, digit > want);
    return false;
  };
  auto on_truncate = [&](long level, long floor_digit) {
    if (floor_digit > target.at(level)) decide(level, true);
  };
  // There is no need to finish a scan once the digit exceeds the target's.
  auto cap = [&](long level) { return target.at(level) + 1; };
  try {
    ContinuedFractionState st =
        walk_returns(map, max_level, max_iterations, on_digit, on_truncate, cap);
    if (out.sign == 0 && !st.complete && st.digits.size() >= 2) {
      // Budget died with every recorded digit matching. The rotation number
      // still lies between the last two convergents; decide if the target
      // value escapes that bracket.
      size_t m = st.convergents.size() - 1;
      int bits = map.bits();
      Real ca = Real(st.p(static_cast<long>(m - 1)), bits) /
                Real(st.q(static_cast<long>(m - 1)), bits);
      Real cb = Real(st.p(static_cast<long>(m)), bits) /
                Real(st.q(static_cast<long>(m)), bits);
      Real lo = min(ca, cb), hi = max(ca, cb);
      Real tv = target.value(bits);
      if (tv < lo) out.sign = 1;       // rho(map) > target
      else if (tv > hi) out.sign = -1; // rho(map) < target
    }
  } catch (const PeriodicOrbitError& e) {
    // Rational rotation number p/q at working precision: compare its exact
    // value against the target.
    Real u(map.bits());
    long w = 0;
    for (long i = 0; i < e.period(); ++i) map.step_circle(u, w);
    Real rho = (u + Real(w, map.bits())) / Real(e.period(), map.bits());
    Real diff = rho - target.value(map.bits());
    out.sign = diff.sign() < 0 ? -1 : 1;
  }
  return out;
}

SolveResult solve_parameter(const CircleMapLift& family_template, const DigitTarget& target,
                            long depth, const SolveOptions& opt) {
  const int bits = family_template.bits();
  const long check_depth = depth + opt.extra_levels;

  auto compare_at = [&](const Real& omega) {
    return compare_rotation(family_template.with_omega(omega), target, check_depth,
                            opt.max_iterations);
  };

  Real lo(opt.omega_lo, bits), hi(opt.omega_hi, bits);
  RotationComparison c_lo = compare_at(lo);
  RotationComparison c_hi = compare_at(hi);
  if (c_lo.sign > 0 || c_hi.sign < 0) {
    throw SolverError("target rotation number outside [rho(omega_lo), rho(omega_hi)]");
  }

  Real width_stop = pow2(16 - bits, bits);
  Real half(0.5, bits);

  // The set of parameters matching the target to check_depth digits is an
  // interval. Bisect for each of its edges and answer with the midpoint, so
  // the returned parameter sits well inside the window rather than on a
  // boundary where the deepest return levels degrade.
  auto edge = [&](bool undecided_goes_high) -> Real {
    Real a = lo, b = hi;
    while (b - a > width_stop) {
      Real mid = (a + b) * half;
      int s = compare_at(mid).sign;
      if (s < 0) {
        a = mid;
      } else if (s > 0) {
        b = mid;
      } else if (undecided_goes_high) {
        b = mid;
      } else {
        a = mid;
      }
    }
    return (a + b) * half;
  };
  Real left = edge(true);
  Real right = edge(false);

  SolveResult res;
  res.omega = (left + right) * half;
  CircleMapLift solved = family_template.with_omega(res.omega);
  res.cf = closest_returns(solved, depth, opt.max_iterations);
  long matched = 0;
  for (size_t k = 0; k < res.cf.digits.size(); ++k) {
    if (res.cf.digits[k] != target.at(static_cast<long>(k))) break;
    ++matched;
  }
  res.verified_digits = matched;
  res.met_depth = matched >= depth;
  return res;
}

}  // namespace renormlab
