#pragma once

#include <mpfr.h>

#include <string>

namespace renormlab {

inline constexpr int kDefaultBits = 212;

/// Arbitrary-precision real number backed by MPFR, round-to-nearest throughout.
///
/// Precision (in bits) is fixed at construction. Copies and assignments carry
/// the source precision; binary operations produce a result at the maximum
/// precision of the operands. All operations are deterministic.
class Real {
 public:
  // Default-constructed value is a 2-bit NaN placeholder, meant to be
  // overwritten by assignment (which adopts the source precision).
  Real() {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_set_nan(v_);
  }
  explicit Real(int bits) {
    mpfr_init2(v_, check_bits(bits));
    mpfr_set_zero(v_, 1);
  }
  Real(double x, int bits) {
    mpfr_init2(v_, check_bits(bits));
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(long x, int bits) {
    mpfr_init2(v_, check_bits(bits));
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(int x, int bits) : Real(static_cast<long>(x), bits) {}

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real from_string(const std::string& s, int bits);

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Full-precision decimal string, faithful for round trips.
  std::string str() const;
  /// Copy rounded to a different precision.
  Real with_bits(int bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  // In-place mutators for hot loops; the destination keeps its own precision.
  void set(const Real& a) { mpfr_set(v_, a.v_, MPFR_RNDN); }
  void set(double a) { mpfr_set_d(v_, a, MPFR_RNDN); }
  void set_si(long a) { mpfr_set_si(v_, a, MPFR_RNDN); }
  void set_zero() { mpfr_set_zero(v_, 1); }
  static void add(Real& d, const Real& a, const Real& b) {
    mpfr_add(d.v_, a.v_, b.v_, MPFR_RNDN);
  }
  static void sub(Real& d, const Real& a, const Real& b) {
    mpfr_sub(d.v_, a.v_, b.v_, MPFR_RNDN);
  }
  static void mul(Real& d, const Real& a, const Real& b) {
    mpfr_mul(d.v_, a.v_, b.v_, MPFR_RNDN);
  }
  static void div(Real& d, const Real& a, const Real& b) {
    mpfr_div(d.v_, a.v_, b.v_, MPFR_RNDN);
  }
  /// d = a*b + c
  static void fma(Real& d, const Real& a, const Real& b, const Real& c) {
    mpfr_fma(d.v_, a.v_, b.v_, c.v_, MPFR_RNDN);
  }
  static void neg(Real& d, const Real& a) { mpfr_neg(d.v_, a.v_, MPFR_RNDN); }
  static void sqr(Real& d, const Real& a) { mpfr_sqr(d.v_, a.v_, MPFR_RNDN); }
  static void mul_si(Real& d, const Real& a, long k) {
    mpfr_mul_si(d.v_, a.v_, k, MPFR_RNDN);
  }
  static void sin_cos(Real& s, Real& c, const Real& x) {
    mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(maxbits(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(maxbits(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(maxbits(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(maxbits(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.bits());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { return merge(b, mpfr_add); }
  Real& operator-=(const Real& b) { return merge(b, mpfr_sub); }
  Real& operator*=(const Real& b) { return merge(b, mpfr_mul); }
  Real& operator/=(const Real& b) { return merge(b, mpfr_div); }

  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) {
    return mpfr_less_p(a.v_, b.v_) != 0;
  }
  friend bool operator<=(const Real& a, const Real& b) {
    return mpfr_lessequal_p(a.v_, b.v_) != 0;
  }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  static int check_bits(int bits);
  static mpfr_prec_t maxbits(const Real& a, const Real& b) {
    return mpfr_get_prec(a.v_) >= mpfr_get_prec(b.v_) ? mpfr_get_prec(a.v_)
                                                      : mpfr_get_prec(b.v_);
  }
  template <typename Op>
  Real& merge(const Real& b, Op op) {
    if (mpfr_get_prec(b.v_) > mpfr_get_prec(v_)) {
      Real r(static_cast<int>(mpfr_get_prec(b.v_)));
      op(r.v_, v_, b.v_, MPFR_RNDN);
      mpfr_swap(v_, r.v_);
    } else {
      op(v_, v_, b.v_, MPFR_RNDN);
    }
    return *this;
  }
  mpfr_t v_;
};

Real abs(const Real& a);
Real floor(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// pi at the requested precision (MPFR caches the computation internally).
Real const_pi(int bits);
/// Exact power of two, sign included: 2^e.
Real pow2(long e, int bits);

/// One unit in the last place of |x| scaled comparisons: tol_ulps units of
/// 2^(1-bits) relative to max(1, |a|, |b|).
bool close_ulps(const Real& a, const Real& b, long tol_ulps);

}  // namespace renormlab
