#include "renormlab/gridding.hpp"

#include "renormlab/errors.hpp"

namespace renormlab {

std::vector<Real> uniform_grid(const Real& lo, const Real& hi, long n) {
  if (n < 2) throw DomainError("uniform_grid needs n >= 2");
  int bits = lo.bits() >= hi.bits() ? lo.bits() : hi.bits();
  Real span = hi - lo;
  Real denom(n - 1, bits);
  std::vector<Real> out;
  out.reserve(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k) {
    if (k == 0) {
      out.push_back(lo.with_bits(bits));
    } else if (k == n - 1) {
      out.push_back(hi.with_bits(bits));
    } else {
      out.push_back(lo + span * Real(k, bits) / denom);
    }
  }
  return out;
}

std::vector<Real> interior_grid(const Real& lo, const Real& hi, long n) {
  if (n < 1) throw DomainError("interior_grid needs n >= 1");
  int bits = lo.bits() >= hi.bits() ? lo.bits() : hi.bits();
  Real span = hi - lo;
  Real denom(n + 1, bits);
  std::vector<Real> out;
  out.reserve(static_cast<size_t>(n));
  for (long k = 1; k <= n; ++k) {
    out.push_back(lo + span * Real(k, bits) / denom);
  }
  return out;
}

std::vector<Real> refined_grid(const Real& lo, const Real& hi, long n, long refine,
                               long scale_exp) {
  std::vector<Real> out = uniform_grid(lo, hi, n);
  int bits = out[0].bits();
  Real d = pow2(scale_exp, bits);
  if (!(d * Real(2L, bits) < hi - lo)) return out;  // interval too small to refine
  for (long j = 0; j < refine; ++j) {
    Real off = d * pow2(-j, bits);
    out.push_back(lo + off);
    out.push_back(hi - off);
  }
  return out;
}

}  // namespace renormlab
