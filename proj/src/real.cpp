#include "renormlab/real.hpp"

#include <cmath>
#include <cstdlib>

#include "renormlab/errors.hpp"

namespace renormlab {

int Real::check_bits(int bits) {
  if (bits < 8 || bits > (1 << 24)) {
    throw ConfigError("precision bits out of range: " + std::to_string(bits));
  }
  return bits;
}

Real Real::from_string(const std::string& s, int bits) {
  Real r(check_bits(bits));
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw ConfigError("unparsable real literal: '" + s + "'");
  }
  return r;
}

std::string Real::str() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  // Enough decimal digits for a faithful binary round trip.
  size_t ndigits = static_cast<size_t>(std::ceil(bits() * 0.3010299956639812)) + 3;
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, ndigits, v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // mpfr convention: value = 0.digits * 10^e. Render as d.ddd...e<exp>.
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

Real abs(const Real& a) {
  Real r(a.bits());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real floor(const Real& a) {
  Real r(a.bits());
  mpfr_floor(r.raw(), a.raw());
  return r;
}

Real sqrt(const Real& a) {
  Real r(a.bits());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real exp(const Real& a) {
  Real r(a.bits());
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real log(const Real& a) {
  Real r(a.bits());
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real sin(const Real& a) {
  Real r(a.bits());
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real cos(const Real& a) {
  Real r(a.bits());
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real const_pi(int bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real pow2(long e, int bits) {
  Real r(1L, bits);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

bool close_ulps(const Real& a, const Real& b, long tol_ulps) {
  int bits = a.bits() >= b.bits() ? b.bits() : a.bits();
  Real scale = max(Real(1L, bits), max(abs(a), abs(b)));
  Real tol = Real(tol_ulps, bits) * pow2(1 - bits, bits) * scale;
  return abs(a - b) <= tol;
}

}  // namespace renormlab
