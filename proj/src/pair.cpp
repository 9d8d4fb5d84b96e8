#include "renormlab/pair.hpp"

#include <sstream>

#include "renormlab/errors.hpp"
#include "renormlab/gridding.hpp"

namespace renormlab {

bool ValidationReport::ok() const {
  for (const auto& c : clauses) {
    if (!c.pass) return false;
  }
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : clauses) {
    os << (c.pass ? "  [ok]   " : "  [FAIL] ") << c.name << " residual=" << c.residual
       << " tol=" << c.tolerance << "\n";
  }
  return os.str();
}

CommutingPair::CommutingPair(CompositionChain eta, CompositionChain xi, int criticality,
                             PairValidationMode mode)
    : eta_(std::move(eta)), xi_(std::move(xi)), criticality_(criticality), mode_(mode) {
  if (!(eta_.lo().is_zero() && xi_.hi().is_zero())) {
    throw PairValidationError("pair domains must abut at 0");
  }
  if (!(xi0().sign() > 0) || !(eta0().sign() < 0)) {
    throw PairValidationError("pair needs xi(0) > 0 > eta(0), got xi(0)=" + xi0().str() +
                              " eta(0)=" + eta0().str());
  }
}

Real CommutingPair::eval(const Real& x) const {
  return x.sign() < 0 ? xi_.eval(x) : eta_.eval(x);
}

Jet3 CommutingPair::eval_jet(const Real& x) const {
  return x.sign() < 0 ? xi_.eval_jet(x) : eta_.eval_jet(x);
}

namespace {

// Case-I period scan: iterate the eta branch on xi(0) until the orbit crosses
// 0. Returns no value when eta has a fixed point in the way or the budget is
// exhausted (infinite period).
std::optional<PairPeriod> scan_period(const CommutingPair& pair, long max_steps) {
  PairPeriod per;
  per.orbit.push_back(pair.xi0());
  for (long i = 0; i < max_steps; ++i) {
    Real next = pair.eta().eval(per.orbit.back());
    if (next.is_zero()) {
      throw PeriodicOrbitError("boundary orbit hit 0 exactly at eta-iterate " +
                                   std::to_string(i + 1),
                               i + 1);
    }
    if (next >= per.orbit.back()) return std::nullopt;  // eta(x) >= x: no crossing
    per.orbit.push_back(next);
    if (next.sign() < 0) {
      per.a = i;  // eta^{a+1}(xi(0)) < 0 <= eta^a(xi(0))
      return per;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PairPeriod> CommutingPair::try_period(long max_steps) const {
  if (period_cache_) return period_cache_;
  std::optional<PairPeriod> per = scan_period(*this, max_steps);
  if (per && per->a == 0) {
    // Composed critical value landed on the xi side: iterate the mirrored
    // system instead.
    per = scan_period(dual_pair(*this), max_steps);
    if (per) per->mirrored = true;
  }
  if (per) period_cache_ = *per;
  return per;
}

const PairPeriod& CommutingPair::period(long max_steps) const {
  if (!period_cache_) {
    auto per = try_period(max_steps);
    if (!per) {
      throw NotRenormalizableError("pair has infinite period (no crossing within budget)");
    }
  }
  return *period_cache_;
}

CommutingPair dual_pair(const CommutingPair& pair) {
  Real zero(pair.bits());
  CompositionChain eta = pair.xi().conjugated(Real(-1L, pair.bits()), zero);
  CompositionChain xi = pair.eta().conjugated(Real(-1L, pair.bits()), zero);
  return CommutingPair(std::move(eta), std::move(xi), pair.criticality(), pair.mode());
}

CommutingPair conjugate_homothety(const CommutingPair& pair, const Real& alpha) {
  if (!(alpha.sign() > 0)) throw DomainError("homothety factor must be positive");
  Real zero(pair.bits());
  CompositionChain eta = pair.eta().conjugated(alpha, zero);
  CompositionChain xi = pair.xi().conjugated(alpha, zero);
  return CommutingPair(std::move(eta), std::move(xi), pair.criticality(), pair.mode());
}

namespace {

double scaled_residual(const Real& lhs, const Real& rhs, const Real& tol, bool& pass) {
  Real scale = max(Real(1L, tol.bits()), max(abs(lhs), abs(rhs)));
  Real resid = abs(lhs - rhs);
  if (resid > tol * scale) pass = false;
  return (resid / scale).to_double();
}

}  // namespace

ValidationReport validate_pair(const CommutingPair& pair) {
  const int bits = pair.bits();
  const Real tol = pow2(32 - bits, bits);
  const double tol_d = tol.to_double();
  ValidationReport rep;

  {
    ValidationClause c{"orientation xi(0) > 0 > eta(0)", true, 0.0, 0.0};
    c.pass = pair.xi0().sign() > 0 && pair.eta0().sign() < 0;
    rep.clauses.push_back(c);
  }

  {
    // eta(xi(0)) = xi(eta(0)) != 0
    ValidationClause c{"commutation at the composed critical value", true, 0.0, tol_d};
    Real a = pair.eta().eval(pair.xi0());
    Real b = pair.xi().eval(pair.eta0());
    c.residual = scaled_residual(a, b, tol, c.pass);
    if (abs(a) <= tol) c.pass = false;  // composed value must be nonzero
    rep.clauses.push_back(c);
  }

  {
    ValidationClause c{"branches monotone off 0", true, 0.0, 0.0};
    for (const Real& x : interior_grid(Real(bits), pair.xi0(), 33)) {
      if (!(pair.eta().eval_jet(x).d1.sign() > 0)) c.pass = false;
    }
    for (const Real& x : interior_grid(pair.eta0(), Real(bits), 33)) {
      if (!(pair.xi().eval_jet(x).d1.sign() > 0)) c.pass = false;
    }
    rep.clauses.push_back(c);
  }

  if (pair.mode() == PairValidationMode::Strict) {
    // cubic critical point at 0 on both branches
    ValidationClause c{"critical point at 0 (D=D2=0, D3!=0)", true, 0.0, tol_d};
    for (const CompositionChain* br : {&pair.eta(), &pair.xi()}) {
      Jet3 j = br->eval_jet(Real(bits));
      if (abs(j.d1) > tol) c.pass = false;
      if (pair.criticality() == 3 && abs(j.d2) > tol) c.pass = false;
      if (abs(j.d3) <= tol) c.pass = false;
      c.residual = std::max(c.residual, abs(j.d1).to_double());
      c.residual = std::max(c.residual, abs(j.d2).to_double());
    }
    rep.clauses.push_back(c);
  }

  {
    // one-sided derivatives of eta o xi and xi o eta agree at 0 up to order 3
    ValidationClause c{"composite jets match at 0", true, 0.0, tol_d};
    Real zero(bits);
    Jet3 xi_at_0 = pair.xi().eval_jet(zero);
    Jet3 ec = jet_compose(pair.eta().eval_jet(xi_at_0.f), xi_at_0);
    Jet3 eta_at_0 = pair.eta().eval_jet(zero);
    Jet3 ce = jet_compose(pair.xi().eval_jet(eta_at_0.f), eta_at_0);
    c.residual = std::max(c.residual, scaled_residual(ec.f, ce.f, tol, c.pass));
    c.residual = std::max(c.residual, scaled_residual(ec.d1, ce.d1, tol, c.pass));
    c.residual = std::max(c.residual, scaled_residual(ec.d2, ce.d2, tol, c.pass));
    c.residual = std::max(c.residual, scaled_residual(ec.d3, ce.d3, tol, c.pass));
    rep.clauses.push_back(c);
  }

  return rep;
}

void require_valid(const CommutingPair& pair) {
  ValidationReport rep = validate_pair(pair);
  if (!rep.ok()) {
    throw PairValidationError("pair validation failed:\n" + rep.summary());
  }
}

CommutingPair extract_pair(const MapPtr& map, const ContinuedFractionState& cf, long level,
                           bool validate) {
  if (level < -1) throw DomainError("extraction level must be >= -1");
  if (static_cast<long>(cf.digits.size()) < level + 2) {
    throw DomainError("continued fraction state too shallow for level " +
                      std::to_string(level));
  }
  const int bits = map->bits();
  Real zero(bits);

  // Closest returns r_level and r_{level+1} bound the two lifted intervals;
  // r_{-1} = -1 by convention.
  Real r_lo = level >= 0 ? cf.closest_return_points[static_cast<size_t>(level)]
                         : Real(-1L, bits);
  Real r_hi = cf.closest_return_points[static_cast<size_t>(level + 1)];
  long q_eta = cf.q(level + 1), p_eta = cf.p(level + 1);
  long q_xi = level >= 0 ? cf.q(level) : 0;
  long p_xi = level >= 0 ? cf.p(level) : 1;

  CompositionChain eta = CompositionChain::lift_power(map, q_eta, p_eta, min(r_lo, zero),
                                                      max(r_lo, zero));
  CompositionChain xi = CompositionChain::lift_power(map, q_xi, p_xi, min(r_hi, zero),
                                                     max(r_hi, zero));
  if (r_lo.sign() < 0) {
    // Mirror to standard orientation.
    Real minus_one(-1L, bits);
    eta = eta.conjugated(minus_one, zero);
    xi = xi.conjugated(minus_one, zero);
  }
  PairValidationMode mode = (level >= 0 && map->has_critical_point())
                                ? PairValidationMode::Strict
                                : PairValidationMode::Relaxed;
  CommutingPair pair(std::move(eta), std::move(xi), map->criticality(), mode);
  if (validate) require_valid(pair);
  return pair;
}

CommutingPair pre_renormalize(const CommutingPair& input) {
  auto per = input.try_period();
  if (!per) throw NotRenormalizableError("pre-renormalization of an infinite-period pair");
  const CommutingPair pair = per->mirrored ? dual_pair(input) : input;
  const PairPeriod& p = *per;
  const int bits = pair.bits();
  Real zero(bits);
  Real xa = per->mirrored ? -p.orbit[static_cast<size_t>(p.a)]
                          : p.orbit[static_cast<size_t>(p.a)];
  if (per->mirrored) xa = -xa;  // orbit was computed in the dual coordinates

  // (eta, xi) -> (eta^a o xi, eta), relabeled through the mirror so the new
  // pair keeps xi(0) > 0 > eta(0).
  CompositionChain inner =
      pair.eta().power(p.a, zero, zero).after(pair.xi(), pair.xi().lo(), zero);
  Real minus_one(-1L, bits);
  CompositionChain new_eta = inner.conjugated(minus_one, zero);  // domain [0, -eta0]
  CompositionChain new_xi =
      pair.eta().restricted(zero, xa).conjugated(minus_one, zero);  // domain [-xa, 0]
  CommutingPair out(std::move(new_eta), std::move(new_xi), pair.criticality(), pair.mode());
  return out;
}

CommutingPair normalize(const CommutingPair& pair) {
  const int bits = pair.bits();
  Real scale = -pair.eta0();  // |I_xi|
  Real inv = Real(1L, bits) / scale;
  Real zero(bits);
  // Domain endpoints divide exactly: eta(0)/|I_xi| = -1 on the nose.
  CompositionChain eta =
      pair.eta().conjugated(inv, zero).restricted(zero, pair.xi0() / scale);
  CompositionChain xi =
      pair.xi().conjugated(inv, zero).restricted(pair.eta0() / scale, zero);
  return CommutingPair(std::move(eta), std::move(xi), pair.criticality(), pair.mode());
}

CommutingPair renormalize(const CommutingPair& pair) {
  return normalize(pre_renormalize(pair));
}

RotationDigits pair_rotation_digits(const CommutingPair& pair, long depth) {
  RotationDigits out;
  if (depth <= 0) return out;
  CommutingPair cur = pair;
  for (long k = 0; k < depth; ++k) {
    auto per = cur.try_period();
    if (!per || per->a < 1) {
      out.complete = false;
      return out;
    }
    out.digits.push_back(per->a);
    if (k + 1 < depth) cur = renormalize(cur);
  }
  return out;
}

FlattestPoint flattest_point(const CommutingPair& pair, long scan_grid) {
  const int bits = pair.bits();
  Real zero(bits);
  // Coarse scan of the displacement x - eta(x), then bisection on D(eta) - 1,
  // which changes sign from + to - across the minimizer.
  std::vector<Real> xs = interior_grid(zero, pair.xi0(), scan_grid);
  long best = -1;
  Real best_disp(bits);
  for (size_t i = 0; i < xs.size(); ++i) {
    Real disp = xs[i] - pair.eta().eval(xs[i]);
    if (best < 0 || disp < best_disp) {
      best = static_cast<long>(i);
      best_disp = disp;
    }
  }
  Real lo = best > 0 ? xs[static_cast<size_t>(best - 1)] : zero;
  Real hi = best + 1 < static_cast<long>(xs.size()) ? xs[static_cast<size_t>(best + 1)]
                                                    : pair.xi0();
  Real one(1L, bits);
  if (!(pair.eta().eval_jet(lo).d1 > one) || !(pair.eta().eval_jet(hi).d1 < one)) {
    throw DomainError("no interior flattest point bracketed (period too small?)");
  }
  Real width_stop = pow2(16 - bits, bits);
  Real half(0.5, bits);
  while (hi - lo > width_stop) {
    Real mid = (lo + hi) * half;
    if (pair.eta().eval_jet(mid).d1 > one) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  FlattestPoint fp;
  fp.p = (lo + hi) * half;
  fp.jet = pair.eta().eval_jet(fp.p);
  return fp;
}

}  // namespace renormlab
