#include "renormlab/control.hpp"

#include "renormlab/errors.hpp"
#include "renormlab/gridding.hpp"
#include "renormlab/nonlinearity.hpp"

namespace renormlab {

namespace {

// Smallest K with value >= 1/K; infinite (bounded=false) when value <= 0.
Real clause_reciprocal(const Real& value, bool& bounded) {
  if (!(value.sign() > 0)) {
    bounded = false;
    return Real(value.bits());
  }
  return Real(1L, value.bits()) / value;
}

Real c_norm(const CompositionChain& chain, long grid, int order) {
  Real out(chain.bits());
  for (const Real& x : refined_grid(chain.lo(), chain.hi(), grid, 9, -10)) {
    Jet3 j = chain.eval_jet(x);
    out = max(out, abs(j.f));
    out = max(out, abs(j.d1));
    if (order >= 2) out = max(out, abs(j.d2));
    if (order >= 3) out = max(out, abs(j.d3));
  }
  return out;
}

}  // namespace

KControlReport k_control(const CommutingPair& pair, long grid) {
  const int bits = pair.bits();
  const PairPeriod& per = pair.period();
  const std::vector<Real>& x = per.orbit;
  const long a = per.a;

  KControlReport rep;
  rep.a = a;

  rep.k_xi0 = max(pair.xi0(), clause_reciprocal(pair.xi0(), rep.bounded));
  rep.k_gap0 = clause_reciprocal(x[0] - x[1], rep.bounded);
  rep.k_gap_last = clause_reciprocal(x[static_cast<size_t>(a - 1)] - x[static_cast<size_t>(a)],
                                     rep.bounded);
  rep.k_xa = clause_reciprocal(x[static_cast<size_t>(a)], rep.bounded);
  rep.k_xa1 = clause_reciprocal(-x[static_cast<size_t>(a + 1)], rep.bounded);
  rep.k_c3 = max(c_norm(pair.eta(), grid, 3), c_norm(pair.xi(), grid, 3));
  rep.c2_norm = max(c_norm(pair.eta(), grid, 2), c_norm(pair.xi(), grid, 2));

  Real min_deta(bits);
  bool first = true;
  for (const Real& s : uniform_grid(x[static_cast<size_t>(a)], x[0], grid)) {
    Real d1 = pair.eta().eval_jet(s).d1;
    if (first || d1 < min_deta) min_deta = d1;
    first = false;
  }
  rep.k_deta = clause_reciprocal(min_deta, rep.bounded);

  Real sch(bits);
  bool sch_first = true;
  for (const Real& s : interior_grid(Real(bits), pair.xi0(), grid)) {
    Real v = schwarzian(pair.eta().eval_jet(s));
    if (sch_first || v > sch) sch = v;
    sch_first = false;
  }
  for (const Real& s : interior_grid(pair.eta0(), Real(bits), grid)) {
    Real v = schwarzian(pair.xi().eval_jet(s));
    if (v > sch) sch = v;
  }
  rep.schwarzian_max = sch;

  rep.minimal_k = Real(1L, bits);
  for (const Real* k : {&rep.k_xi0, &rep.k_gap0, &rep.k_gap_last, &rep.k_xa, &rep.k_xa1,
                        &rep.k_c3, &rep.k_deta}) {
    rep.minimal_k = max(rep.minimal_k, *k);
  }
  return rep;
}

std::optional<Real> order_leq(const CommutingPair& lo, const CommutingPair& hi, long grid) {
  const int bits = std::max(lo.bits(), hi.bits());
  if (!(lo.eta0() <= hi.eta0()) || !(lo.xi0() <= hi.xi0())) return std::nullopt;
  Real zero(bits);
  Real left = max(lo.eta0(), hi.eta0());
  Real right = min(lo.xi0(), hi.xi0());

  Real t(bits);
  bool first = true;
  auto scan = [&](const CompositionChain& b_lo, const CompositionChain& b_hi,
                  const Real& from, const Real& to) {
    for (const Real& s : uniform_grid(from, to, grid)) {
      Real margin = b_hi.eval(s) - b_lo.eval(s);
      if (first || margin < t) t = margin;
      first = false;
    }
  };
  scan(lo.xi(), hi.xi(), left, zero);
  scan(lo.eta(), hi.eta(), zero, right);
  if (t.sign() < 0) return std::nullopt;
  return t;
}

}  // namespace renormlab
