#pragma once

#include <functional>
#include <vector>

#include "renormlab/chain.hpp"
#include "renormlab/jet.hpp"

namespace renormlab {

/// N f = D2f/Df at a point, from the jet. Df must be positive.
Real nonlinearity(const Jet3& j);
Real nonlinearity(const CompositionChain& f, const Real& x);

/// S f = D3f/Df - (3/2)(D2f/Df)^2. Df must be nonzero.
Real schwarzian(const Jet3& j);
Real schwarzian(const CompositionChain& f, const Real& x);

/// Continuous piecewise-linear function on [a,b] through uniform samples.
struct SampledFunction {
  Real a, b;
  std::vector<Real> values;  // at nodes a + k*(b-a)/(n-1), n >= 2

  static SampledFunction tabulate(const std::function<Real(const Real&)>& f, const Real& a,
                                  const Real& b, long n);
  static SampledFunction constant(const Real& value, const Real& a, const Real& b, long n);
  long nodes() const { return static_cast<long>(values.size()); }
  Real eval(const Real& x) const;
  /// Slope of the interpolant on the segment containing x.
  Real slope(const Real& x) const;
  /// Exact integral of the interpolant over [a, x].
  Real prefix_integral(const Real& x) const;
};

/// Increasing diffeomorphism of [a,b] with prescribed nonlinearity profile,
/// built by the explicit integral formula with endpoints fixed. The inner
/// integral of the piecewise-linear profile is evaluated in closed form; the
/// outer integrals use composite Simpson quadrature with a fixed panel count.
class NonlinearityInverse {
 public:
  explicit NonlinearityInverse(SampledFunction phi, long panels = 1L << 10);

  const Real& a() const { return phi_.a; }
  const Real& b() const { return phi_.b; }
  Real eval(const Real& x) const;
  /// Value by quadrature; derivatives from the closed-form derivative of the
  /// defining formula, so N(jet(x)) reproduces the profile.
  Jet3 jet(const Real& x) const;

 private:
  Real weight(const Real& s) const;  // exp(prefix integral of phi)
  Real simpson_to(const Real& hi) const;
  SampledFunction phi_;
  long panels_;
  Real total_;  // Simpson value of the full integral over [a,b]
};

/// Spec operation: value of the inverse-nonlinearity diffeomorphism at x.
Real nonlinearity_inverse(const SampledFunction& phi, const Real& x);

/// |FD(Nf)(x) - Sf(x) - (Nf(x))^2/2| with a central difference at step
/// 2^(-bits/3); small when the jets are consistent.
Real nonlinearity_derivative_identity_check(const std::function<Jet3(const Real&)>& f,
                                            const Real& x);

}  // namespace renormlab
