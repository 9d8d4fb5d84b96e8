#include "renormlab/circle_map.hpp"

#include "renormlab/errors.hpp"
#include "renormlab/gridding.hpp"

namespace renormlab {

CircleMapLift::CircleMapLift(std::string family, std::map<std::string, Real> params,
                             std::vector<Term> terms, int criticality, int bits)
    : family_(std::move(family)),
      params_(std::move(params)),
      terms_(std::move(terms)),
      omega_(params_.at("omega").with_bits(bits)),
      two_pi_(const_pi(bits) * Real(2L, bits)),
      criticality_(criticality),
      bits_(bits) {}

namespace {

CircleMapLift::Term make_term(long k, const Real& c1, int bits) {
  Real two_pi_k = const_pi(bits) * Real(2 * k, bits);
  CircleMapLift::Term t;
  t.k = k;
  t.c1 = c1.with_bits(bits);
  t.amp = t.c1 / two_pi_k;
  t.c2n = -(t.c1 * two_pi_k);
  t.c3n = -(t.c1 * two_pi_k * two_pi_k);
  return t;
}

}  // namespace

CircleMapLift CircleMapLift::arnold(const Real& omega, int bits) {
  std::map<std::string, Real> params{{"omega", omega.with_bits(bits)}};
  std::vector<Term> terms{make_term(1, Real(-1L, bits), bits)};
  return CircleMapLift("arnold", std::move(params), std::move(terms), 3, bits);
}

CircleMapLift CircleMapLift::two_harmonic(const Real& omega, const Real& beta, int bits) {
  std::map<std::string, Real> params{{"omega", omega.with_bits(bits)},
                                     {"beta", beta.with_bits(bits)}};
  // Df(0) = 1 - (1+beta) + beta = 0 and D3f(0) = 4*pi^2*(1-3*beta) != 0 as
  // long as beta != 1/3. 1+beta rounds, so the second coefficient is derived
  // from the first to make the derivative coefficients sum to -1 exactly.
  Real one(1L, bits);
  Real c1_1 = -(one + beta.with_bits(bits));
  Real c1_2 = -(one + c1_1);  // exact: the subtraction cancels
  std::vector<Term> terms{make_term(1, c1_1, bits), make_term(2, c1_2, bits)};
  return CircleMapLift("two_harmonic", std::move(params), std::move(terms), 3, bits);
}

CircleMapLift CircleMapLift::rotation(const Real& theta, int bits) {
  std::map<std::string, Real> params{{"omega", theta.with_bits(bits)}};
  return CircleMapLift("rotation", std::move(params), {}, 0, bits);
}

CircleMapLift CircleMapLift::make(const std::string& family,
                                  const std::map<std::string, Real>& params, int bits) {
  auto need = [&](const std::string& name) -> const Real& {
    auto it = params.find(name);
    if (it == params.end()) {
      throw ConfigError("family '" + family + "' needs parameter '" + name + "'");
    }
    return it->second;
  };
  if (params.count("d") && params.at("d").to_long() != 1) {
    throw ConfigError("built-in families support criticality index d = 1 only");
  }
  if (family == "arnold") return arnold(need("omega"), bits);
  if (family == "two_harmonic") return two_harmonic(need("omega"), need("beta"), bits);
  if (family == "rotation") return rotation(need("omega"), bits);
  if (family == "sine_series") {
    // Parameters c1_1, c1_2, ... give the derivative coefficients of the
    // successive harmonics. Criticality at 0 requires sum_k c1_k = -1; the
    // first coefficient is re-derived from the rest so the sum is exact in
    // working arithmetic.
    std::vector<Real> coeffs;
    for (long k = 1;; ++k) {
      auto it = params.find("c1_" + std::to_string(k));
      if (it == params.end()) break;
      coeffs.push_back(it->second.with_bits(bits));
    }
    if (coeffs.empty()) throw ConfigError("sine_series needs at least c1_1");
    Real rest(bits);
    for (size_t i = 1; i < coeffs.size(); ++i) rest += coeffs[i];
    Real first = -(Real(1L, bits) + rest);
    if (!close_ulps(first, coeffs[0], 16)) {
      throw ConfigError("sine_series derivative coefficients must sum to -1 for a critical point at 0");
    }
    coeffs[0] = first;
    std::vector<Term> terms;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      terms.push_back(make_term(static_cast<long>(i) + 1, coeffs[i], bits));
    }
    CircleMapLift map("sine_series", params, std::move(terms), 3, bits);
    map.validate();
    return map;
  }
  throw ConfigError("unknown family '" + family + "'");
}

CircleMapLift CircleMapLift::with_omega(const Real& omega) const {
  CircleMapLift copy(*this);
  copy.omega_ = omega.with_bits(bits_);
  copy.params_["omega"] = copy.omega_;
  return copy;
}

void CircleMapLift::eval_jet_into(Jet3& out, const Real& x) const {
  Real m = floor(x);
  Real u = x - m;
  out.f.set(u);
  out.f += omega_;
  out.d1.set_si(1);
  out.d2.set_zero();
  out.d3.set_zero();
  if (!terms_.empty()) {
    Real t = two_pi_ * u;
    Real s(bits_), c(bits_);
    Real::sin_cos(s, c, t);
    Real sk = s, ck = c, tmp(bits_), tmp2(bits_);
    for (size_t i = 0; i < terms_.size(); ++i) {
      const Term& term = terms_[i];
      if (i > 0) {
        // angle-addition step: (s,c)_k from (s,c)_{k-1} and (s,c)_1
        Real::mul(tmp, sk, c);
        Real::fma(tmp, ck, s, tmp);   // s_{k} = s_{k-1} c + c_{k-1} s
        Real::mul(tmp2, ck, c);
        Real::mul(ck, sk, s);
        Real::sub(ck, tmp2, ck);      // c_{k} = c_{k-1} c - s_{k-1} s
        sk = tmp;
      }
      Real::fma(out.f, term.amp, sk, out.f);
      Real::fma(out.d1, term.c1, ck, out.d1);
      Real::fma(out.d2, term.c2n, sk, out.d2);
      Real::fma(out.d3, term.c3n, ck, out.d3);
    }
  }
  out.f += m;
}

Jet3 CircleMapLift::eval_jet(const Real& x) const {
  Jet3 out(bits_);
  eval_jet_into(out, x);
  return out;
}

Real CircleMapLift::eval(const Real& x) const {
  Real m = floor(x);
  Real u = x - m;
  Real f = u + omega_;
  if (!terms_.empty()) {
    Real t = two_pi_ * u;
    Real s(bits_), c(bits_), tmp(bits_), tmp2(bits_);
    Real::sin_cos(s, c, t);
    Real sk = s, ck = c;
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (i > 0) {
        Real::mul(tmp, sk, c);
        Real::fma(tmp, ck, s, tmp);
        Real::mul(tmp2, ck, c);
        Real::mul(ck, sk, s);
        Real::sub(ck, tmp2, ck);
        sk = tmp;
      }
      Real::fma(f, terms_[i].amp, sk, f);
    }
  }
  return f + m;
}

void CircleMapLift::step_circle(Real& u, long& winding) const {
  Real f = eval(u);
  Real m = floor(f);
  winding += m.to_long();
  u = f - m;
}

void CircleMapLift::validate(long grid) const {
  Real zero(bits_);
  if (has_critical_point()) {
    Jet3 j0 = eval_jet(zero);
    Real tol = pow2(4 - bits_, bits_);
    if (abs(j0.d1) > tol || abs(j0.d2) > tol) {
      throw ConfigError(family_ + ": Df(0) and D2f(0) must vanish");
    }
    if (close_ulps(j0.d3, zero, 1L << 20)) {
      throw ConfigError(family_ + ": D3f(0) vanishes, critical point is not cubic");
    }
  }
  if (!(omega_ > zero) || !(omega_ < Real(1L, bits_))) {
    throw ConfigError(family_ + ": lift normalization needs 0 < f(0) < 1, f(0) = " + omega_.str());
  }
  // Monotonicity: Df >= 0 with equality only near the integers.
  Real cutoff = pow2(-20, bits_);
  for (const Real& x : uniform_grid(zero, Real(1L, bits_), grid)) {
    Jet3 j = eval_jet(x);
    if (j.d1.sign() < 0) {
      throw ConfigError(family_ + ": Df < 0 at x = " + x.str());
    }
    bool near_integer = x < cutoff || x > Real(1L, bits_) - cutoff;
    if (!near_integer && j.d1.is_zero()) {
      throw ConfigError(family_ + ": Df vanishes away from the critical point at x = " + x.str());
    }
  }
}

}  // namespace renormlab
