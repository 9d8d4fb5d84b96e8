#include "renormlab/metric.hpp"

#include "renormlab/errors.hpp"
#include "renormlab/gridding.hpp"

namespace renormlab {

MobiusMap MobiusMap::frame(const Real& eta0, const Real& xi0) {
  if (!(eta0.sign() < 0 && xi0.sign() > 0)) {
    throw DomainError("moebius frame needs eta(0) < 0 < xi(0)");
  }
  int bits = std::max(eta0.bits(), xi0.bits());
  Real prod = eta0 * xi0;
  Real two_prod = Real(2L, bits) * prod;
  MobiusMap m;
  m.a = (eta0 - xi0) / two_prod;
  m.c = -(eta0 + xi0) / two_prod;
  return m;
}

Real MobiusMap::eval(const Real& x) const {
  return a * x / (c * x + Real(1L, a.bits()));
}

Jet3 MobiusMap::jet(const Real& x) const {
  int bits = a.bits();
  Real den = c * x + Real(1L, bits);
  Real den2 = den * den;
  Jet3 j(bits);
  j.f = a * x / den;
  j.d1 = a / den2;
  j.d2 = Real(-2L, bits) * a * c / (den2 * den);
  j.d3 = Real(6L, bits) * a * c * c / (den2 * den2);
  return j;
}

Real MobiusMap::inv(const Real& y) const {
  return y / (a - c * y);
}

Jet3 MobiusMap::inv_jet(const Real& y) const {
  int bits = a.bits();
  Real den = a - c * y;
  Real den2 = den * den;
  Jet3 j(bits);
  j.f = y / den;
  j.d1 = a / den2;
  j.d2 = Real(2L, bits) * a * c / (den2 * den);
  j.d3 = Real(6L, bits) * a * c * c / (den2 * den2);
  return j;
}

const Real& MetricReport::dr(int r) const {
  switch (r) {
    case 0:
      return d0;
    case 1:
      return d1;
    case 2:
      return d2;
    default:
      throw DomainError("metric order must be 0, 1 or 2");
  }
}

namespace {

struct SupAccumulator {
  Real s0, s1, s2;
  explicit SupAccumulator(int bits) : s0(bits), s1(bits), s2(bits) {}
  void take(const Jet3& a, const Jet3& b) {
    s0 = max(s0, abs(a.f - b.f));
    s1 = max(s1, abs(a.d1 - b.d1));
    s2 = max(s2, abs(a.d2 - b.d2));
  }
};

// Framed jet of one branch at the framed coordinate y: A o branch o A^{-1}.
Jet3 framed_jet(const MobiusMap& frame, const CompositionChain& branch, const Real& y) {
  Jet3 pre = frame.inv_jet(y);
  Jet3 mid = branch.eval_jet(pre.f);
  Jet3 post = frame.jet(mid.f);
  return jet_compose(post, jet_compose(mid, pre));
}

// Affine-variant jet: (1/scale) * (branch o L) with L(t) = len*t mapping the
// unit-side interval onto the branch domain and scale = |I_xi|. On normalized
// pairs scale = 1 and this is the plain rescaled branch; the outer division
// is what makes the variant invariant under conjugacy by homotheties.
Jet3 side_scaled_jet(const CompositionChain& branch, const Real& len, const Real& scale,
                     const Real& t) {
  int bits = len.bits();
  Jet3 pre = Jet3::affine(len, Real(bits), t);
  Jet3 mid = jet_compose(branch.eval_jet(pre.f), pre);
  Jet3 post = Jet3::affine(Real(1L, bits) / scale, Real(bits), mid.f);
  return jet_compose(post, mid);
}

}  // namespace

MetricReport distance(const CommutingPair& lhs, const CommutingPair& rhs, int r,
                      MetricVariant variant, long grid_size) {
  if (lhs.criticality() != rhs.criticality()) {
    throw DomainError("metric is defined within one criticality class only");
  }
  if (r < 0 || r > 2) throw DomainError("metric order must be 0, 1 or 2");
  const int bits = std::max(lhs.bits(), rhs.bits());
  Real zero(bits), one(1L, bits), minus_one(-1L, bits);

  MetricReport rep;
  rep.grid_size = grid_size;
  rep.variant = variant;
  rep.ratio_term = abs(lhs.xi0() / lhs.eta0() - rhs.xi0() / rhs.eta0());

  SupAccumulator sup(bits);
  if (variant == MetricVariant::Moebius) {
    MobiusMap f1 = MobiusMap::frame(lhs.eta0(), lhs.xi0());
    MobiusMap f2 = MobiusMap::frame(rhs.eta0(), rhs.xi0());
    for (int side = 0; side < 2; ++side) {
      Real lo = side == 0 ? minus_one : zero;
      Real hi = side == 0 ? zero : one;
      const CompositionChain& b1 = side == 0 ? lhs.xi() : lhs.eta();
      const CompositionChain& b2 = side == 0 ? rhs.xi() : rhs.eta();
      for (const Real& y : refined_grid(lo, hi, grid_size, 9, -10)) {
        if (y.is_zero()) continue;  // the framed map is split at the origin
        sup.take(framed_jet(f1, b1, y), framed_jet(f2, b2, y));
      }
    }
  } else {
    for (int side = 0; side < 2; ++side) {
      Real lo = side == 0 ? minus_one : zero;
      Real hi = side == 0 ? zero : one;
      const CompositionChain& b1 = side == 0 ? lhs.xi() : lhs.eta();
      const CompositionChain& b2 = side == 0 ? rhs.xi() : rhs.eta();
      Real len1 = side == 0 ? -lhs.eta0() : lhs.xi0();
      Real len2 = side == 0 ? -rhs.eta0() : rhs.xi0();
      Real s1 = -lhs.eta0();
      Real s2 = -rhs.eta0();
      for (const Real& t : refined_grid(lo, hi, grid_size, 9, -10)) {
        sup.take(side_scaled_jet(b1, len1, s1, t), side_scaled_jet(b2, len2, s2, t));
      }
    }
  }

  rep.d0 = max(rep.ratio_term, sup.s0);
  rep.d1 = max(rep.d0, sup.s1);
  rep.d2 = max(rep.d1, sup.s2);
  return rep;
}

}  // namespace renormlab
