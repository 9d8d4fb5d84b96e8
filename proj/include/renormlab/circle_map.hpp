#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "renormlab/jet.hpp"
#include "renormlab/real.hpp"

namespace renormlab {

/// Monotone degree-one lift of a circle map, written as
///   f(x) = x + omega + sum_i amp_i * sin(2*pi*k_i*x),
/// with the critical point (when present) at the integer translates of 0.
///
/// Built-in families:
///   arnold        f(x) = x + omega - sin(2*pi*x)/(2*pi)            (cubic at 0)
///   two_harmonic  f(x) = x + omega - ((1+beta)/2pi) sin(2*pi*x)
///                                  + (beta/4pi) sin(4*pi*x)        (cubic at 0)
///   rotation      f(x) = x + omega                                 (reference, no critical point)
///   sine_series   user-supplied harmonics, checked numerically at construction
///
/// Sine amplitudes are derived from the exact first-derivative coefficients so
/// that Df(0) and D2f(0) vanish exactly in working arithmetic for the critical
/// families.
class CircleMapLift {
 public:
  struct Term {
    long k;        // harmonic index
    Real amp;      // value-level amplitude
    Real c1;       // amp * 2*pi*k      (exact family data)
    Real c2n;      // -amp * (2*pi*k)^2
    Real c3n;      // -amp * (2*pi*k)^3
  };

  static CircleMapLift arnold(const Real& omega, int bits);
  static CircleMapLift two_harmonic(const Real& omega, const Real& beta, int bits);
  static CircleMapLift rotation(const Real& theta, int bits);
  /// Build from a family id and parameter map (CLI entry point).
  static CircleMapLift make(const std::string& family,
                            const std::map<std::string, Real>& params, int bits);

  const std::string& family() const { return family_; }
  const std::map<std::string, Real>& params() const { return params_; }
  int bits() const { return bits_; }
  /// 2d+1 for critical families, 0 for the rotation reference.
  int criticality() const { return criticality_; }
  bool has_critical_point() const { return criticality_ > 0; }
  const Real& omega() const { return omega_; }

  /// Same family with a different translation parameter (no revalidation).
  CircleMapLift with_omega(const Real& omega) const;

  /// Value and first three derivatives at x.
  Jet3 eval_jet(const Real& x) const;
  void eval_jet_into(Jet3& out, const Real& x) const;
  Real eval(const Real& x) const;
  /// One application in circle coordinates: u in [0,1) is replaced by f(u) mod 1
  /// and `winding` is advanced by the integer part. Exact bookkeeping.
  void step_circle(Real& u, long& winding) const;

  /// Checks the lift invariants on a sample grid at working precision:
  /// monotonicity, single critical point structure at 0 (for critical
  /// families), and 0 < f(0) < 1. Throws ConfigError on failure.
  void validate(long grid = 4096) const;

 private:
  CircleMapLift(std::string family, std::map<std::string, Real> params,
                std::vector<Term> terms, int criticality, int bits);

  std::string family_;
  std::map<std::string, Real> params_;
  std::vector<Term> terms_;
  Real omega_;
  Real two_pi_;
  int criticality_;
  int bits_;
};

using MapPtr = std::shared_ptr<const CircleMapLift>;

}  // namespace renormlab
