#pragma once

#include "renormlab/real.hpp"

namespace renormlab {

/// Value and first three derivatives with respect to the evaluation point.
struct Jet3 {
  Real f, d1, d2, d3;

  Jet3() = default;
  explicit Jet3(int bits) : f(bits), d1(bits), d2(bits), d3(bits) {}
  Jet3(Real f_, Real d1_, Real d2_, Real d3_)
      : f(std::move(f_)), d1(std::move(d1_)), d2(std::move(d2_)), d3(std::move(d3_)) {}

  int bits() const { return f.bits(); }
  bool is_affine() const { return d2.is_zero() && d3.is_zero(); }

  /// Jet of the identity map at x: f=x, d1=1, d2=d3=0.
  static Jet3 identity(const Real& x) {
    int b = x.bits();
    return Jet3(x, Real(1L, b), Real(b), Real(b));
  }
  /// Jet of x -> alpha*x + beta, evaluated at x.
  static Jet3 affine(const Real& alpha, const Real& beta, const Real& x) {
    return Jet3(alpha * x + beta, alpha, Real(alpha.bits()), Real(alpha.bits()));
  }
};

/// Scratch space for in-place jet composition.
struct JetScratch {
  Real t0, t1, t2;
  explicit JetScratch(int bits) : t0(bits), t1(bits), t2(bits) {}
};

/// Composition (outer o inner) to third order. `outer` must be the jet of the
/// outer map evaluated at inner.f. `out` must not alias either argument.
void jet_compose_into(Jet3& out, const Jet3& outer, const Jet3& inner, JetScratch& w);

/// Allocating variant of jet_compose_into.
Jet3 jet_compose(const Jet3& outer, const Jet3& inner);

}  // namespace renormlab
