#include "renormlab/jet.hpp"

namespace renormlab {

void jet_compose_into(Jet3& out, const Jet3& outer, const Jet3& inner, JetScratch& w) {
  // t0 = inner.d1^2, t1 = inner.d1^3
  Real::sqr(w.t0, inner.d1);
  Real::mul(w.t1, w.t0, inner.d1);

  // d3 = outer.d3*inner.d1^3 + 3*outer.d2*inner.d1*inner.d2 + outer.d1*inner.d3
  Real::mul(out.d3, outer.d3, w.t1);
  Real::mul(w.t2, outer.d2, inner.d1);
  Real::mul(w.t2, w.t2, inner.d2);
  Real::mul_si(w.t2, w.t2, 3);
  Real::add(out.d3, out.d3, w.t2);
  Real::mul(w.t2, outer.d1, inner.d3);
  Real::add(out.d3, out.d3, w.t2);

  // d2 = outer.d2*inner.d1^2 + outer.d1*inner.d2
  Real::mul(out.d2, outer.d2, w.t0);
  Real::mul(w.t2, outer.d1, inner.d2);
  Real::add(out.d2, out.d2, w.t2);

  Real::mul(out.d1, outer.d1, inner.d1);
  out.f.set(outer.f);
}

Jet3 jet_compose(const Jet3& outer, const Jet3& inner) {
  int b = outer.bits() >= inner.bits() ? outer.bits() : inner.bits();
  Jet3 out(b);
  JetScratch w(b);
  jet_compose_into(out, outer, inner, w);
  return out;
}

}  // namespace renormlab
