#include "renormlab/contfrac.hpp"

#include <gmp.h>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

void check_digits(const std::vector<long>& digits) {
  if (digits.empty()) throw DomainError("continued fraction needs at least one digit");
  for (long a : digits) {
    if (a <= 0) throw DomainError("continued fraction digit must be positive, got " + std::to_string(a));
  }
}

// Convergent recursion in exact integers: value = p_N/q_N.
void cf_to_mpq(const std::vector<long>& digits, mpq_t out) {
  mpz_t p_prev, q_prev, p, q, t;
  mpz_inits(p_prev, q_prev, p, q, t, nullptr);
  mpz_set_si(p_prev, 1);  // p_{-1}
  mpz_set_si(q_prev, 0);  // q_{-1}
  mpz_set_si(p, 0);       // p_0
  mpz_set_si(q, 1);       // q_0
  for (long a : digits) {
    // (p, p_prev) <- (a*p + p_prev, p)
    mpz_mul_si(t, p, a);
    mpz_add(t, t, p_prev);
    mpz_swap(p_prev, p);
    mpz_swap(p, t);
    mpz_mul_si(t, q, a);
    mpz_add(t, t, q_prev);
    mpz_swap(q_prev, q);
    mpz_swap(q, t);
  }
  mpq_set_num(out, p);
  mpq_set_den(out, q);
  mpq_canonicalize(out);
  mpz_clears(p_prev, q_prev, p, q, t, nullptr);
}

}  // namespace

long DigitTarget::at(long k) const {
  if (k < 0) throw DomainError("digit index must be nonnegative");
  if (k < static_cast<long>(prefix.size())) return prefix[static_cast<size_t>(k)];
  if (period.empty()) throw DomainError("digit target has empty period and exhausted prefix");
  long i = (k - static_cast<long>(prefix.size())) % static_cast<long>(period.size());
  return period[static_cast<size_t>(i)];
}

std::vector<long> DigitTarget::first(long n) const {
  std::vector<long> out;
  out.reserve(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k) out.push_back(at(k));
  return out;
}

Real DigitTarget::value(int bits) const {
  // Convergent error decays at least as fast as the golden-mean rate
  // 1/q_N^2 ~ phi^{-2N}, so ~0.75*bits terms always clear 2^-bits.
  long terms = static_cast<long>(prefix.size()) + (3 * bits) / 4 + 16;
  return cf_to_real(first(terms), bits);
}

Real gauss_map(const Real& theta) {
  if (!(theta > Real(0L, theta.bits())) || !(theta < Real(1L, theta.bits()))) {
    throw DomainError("gauss_map needs theta in (0,1), got " + theta.str());
  }
  Real inv = Real(1L, theta.bits()) / theta;
  return inv - floor(inv);
}

Real cf_to_real(const std::vector<long>& digits, int bits) {
  check_digits(digits);
  mpq_t v;
  mpq_init(v);
  cf_to_mpq(digits, v);
  Real out(bits);
  mpfr_set_q(out.raw(), v, MPFR_RNDN);
  mpq_clear(v);
  return out;
}

Rational cf_to_rational(const std::vector<long>& digits) {
  check_digits(digits);
  mpq_t v;
  mpq_init(v);
  cf_to_mpq(digits, v);
  Rational r;
  if (!mpz_fits_slong_p(mpq_numref(v)) || !mpz_fits_slong_p(mpq_denref(v))) {
    mpq_clear(v);
    throw DomainError("continued fraction value overflows long");
  }
  r.num = mpz_get_si(mpq_numref(v));
  r.den = mpz_get_si(mpq_denref(v));
  mpq_clear(v);
  return r;
}

}  // namespace renormlab
