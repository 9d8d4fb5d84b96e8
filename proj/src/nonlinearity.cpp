#include "renormlab/nonlinearity.hpp"

#include "renormlab/errors.hpp"

namespace renormlab {

Real nonlinearity(const Jet3& j) {
  if (!(j.d1.sign() > 0)) {
    throw DomainError("nonlinearity needs Df > 0, got " + j.d1.str());
  }
  return j.d2 / j.d1;
}

Real nonlinearity(const CompositionChain& f, const Real& x) {
  return nonlinearity(f.eval_jet(x));
}

Real schwarzian(const Jet3& j) {
  if (j.d1.is_zero()) throw DomainError("schwarzian undefined at a critical point");
  Real ratio = j.d2 / j.d1;
  int bits = j.bits();
  return j.d3 / j.d1 - Real(3L, bits) / Real(2L, bits) * ratio * ratio;
}

Real schwarzian(const CompositionChain& f, const Real& x) {
  return schwarzian(f.eval_jet(x));
}

SampledFunction SampledFunction::tabulate(const std::function<Real(const Real&)>& f,
                                          const Real& a, const Real& b, long n) {
  if (n < 2) throw DomainError("sampled function needs at least 2 nodes");
  if (!(a < b)) throw DomainError("sampled function needs a < b");
  SampledFunction out;
  int bits = std::max(a.bits(), b.bits());
  out.a = a.with_bits(bits);
  out.b = b.with_bits(bits);
  Real span = out.b - out.a;
  Real denom(n - 1, bits);
  for (long k = 0; k < n; ++k) {
    Real x = k == 0 ? out.a : (k == n - 1 ? out.b : out.a + span * Real(k, bits) / denom);
    out.values.push_back(f(x));
  }
  return out;
}

SampledFunction SampledFunction::constant(const Real& value, const Real& a, const Real& b,
                                          long n) {
  return tabulate([&](const Real&) { return value; }, a, b, n);
}

namespace {

// Segment index and local offset for x in [a,b].
void locate(const SampledFunction& f, const Real& x, long& k, Real& dx, Real& h) {
  int bits = f.a.bits();
  long n = f.nodes();
  h = (f.b - f.a) / Real(n - 1, bits);
  Real pos = (x - f.a) / h;
  long idx = floor(pos).to_long();
  if (idx < 0) idx = 0;
  if (idx > n - 2) idx = n - 2;
  k = idx;
  dx = x - (f.a + h * Real(idx, bits));
}

}  // namespace

Real SampledFunction::eval(const Real& x) const {
  long k;
  Real dx(a.bits()), h(a.bits());
  locate(*this, x, k, dx, h);
  Real m = (values[static_cast<size_t>(k + 1)] - values[static_cast<size_t>(k)]) / h;
  return values[static_cast<size_t>(k)] + m * dx;
}

Real SampledFunction::slope(const Real& x) const {
  long k;
  Real dx(a.bits()), h(a.bits());
  locate(*this, x, k, dx, h);
  return (values[static_cast<size_t>(k + 1)] - values[static_cast<size_t>(k)]) / h;
}

Real SampledFunction::prefix_integral(const Real& x) const {
  long k;
  Real dx(a.bits()), h(a.bits());
  locate(*this, x, k, dx, h);
  int bits = a.bits();
  Real half(0.5, bits);
  Real acc(bits);
  for (long i = 0; i < k; ++i) {
    acc += h * half * (values[static_cast<size_t>(i)] + values[static_cast<size_t>(i + 1)]);
  }
  // partial segment: integral of v_k + m*s over s in [0, dx]
  Real m = (values[static_cast<size_t>(k + 1)] - values[static_cast<size_t>(k)]) / h;
  acc += values[static_cast<size_t>(k)] * dx + m * dx * dx * half;
  return acc;
}

NonlinearityInverse::NonlinearityInverse(SampledFunction phi, long panels)
    : phi_(std::move(phi)), panels_(panels) {
  if (panels_ < 1) throw DomainError("quadrature needs at least one panel");
  total_ = simpson_to(phi_.b);
}

Real NonlinearityInverse::weight(const Real& s) const {
  return exp(phi_.prefix_integral(s));
}

// Composite Simpson of exp(Phi) over [a, hi] with panels_ panels of [a, hi],
// deterministic node order.
Real NonlinearityInverse::simpson_to(const Real& hi) const {
  int bits = phi_.a.bits();
  if (!(hi > phi_.a)) return Real(bits);
  Real h = (hi - phi_.a) / Real(panels_, bits);
  Real half(0.5, bits);
  Real acc = weight(phi_.a) + weight(hi);
  Real four(4L, bits), two(2L, bits);
  for (long k = 0; k < panels_; ++k) {
    Real mid = phi_.a + h * (Real(k, bits) + half);
    acc += four * weight(mid);
    if (k > 0) acc += two * weight(phi_.a + h * Real(k, bits));
  }
  return acc * h / Real(6L, bits);
}

Real NonlinearityInverse::eval(const Real& x) const {
  return phi_.a + (phi_.b - phi_.a) * simpson_to(x) / total_;
}

Jet3 NonlinearityInverse::jet(const Real& x) const {
  int bits = phi_.a.bits();
  Jet3 j(bits);
  j.f = eval(x);
  Real scale = (phi_.b - phi_.a) / total_;
  Real w = weight(x);
  Real phi_x = phi_.eval(x);
  j.d1 = scale * w;
  j.d2 = j.d1 * phi_x;
  j.d3 = j.d1 * (phi_.slope(x) + phi_x * phi_x);
  return j;
}

Real nonlinearity_inverse(const SampledFunction& phi, const Real& x) {
  return NonlinearityInverse(phi).eval(x);
}

Real nonlinearity_derivative_identity_check(const std::function<Jet3(const Real&)>& f,
                                            const Real& x) {
  int bits = x.bits();
  Real h = pow2(-(bits / 3), bits);
  Jet3 above = f(x + h);
  Jet3 below = f(x - h);
  Real fd = (nonlinearity(above) - nonlinearity(below)) / (Real(2L, bits) * h);
  Jet3 at = f(x);
  Real n = nonlinearity(at);
  Real s = schwarzian(at);
  return abs(fd - s - n * n / Real(2L, bits));
}

}  // namespace renormlab
