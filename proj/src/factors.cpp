#include "renormlab/factors.hpp"

#include "renormlab/errors.hpp"
#include "renormlab/gridding.hpp"
#include "renormlab/nonlinearity.hpp"

namespace renormlab {

FactorDecomposition decompose_branch(const CommutingPair& pair) {
  FactorDecomposition dec;
  const PairPeriod& per = pair.period();
  dec.a = per.a;
  if (per.a < 2) return dec;
  const CommutingPair& base = per.mirrored ? dual_pair(pair) : pair;
  const int bits = base.bits();
  Real zero(bits), one(1L, bits);

  // I_i = [x_i, x_{i-1}], A_i(t) = |I_i| t + x_i.
  for (long i = 1; i <= per.a; ++i) {
    Real len = per.orbit[static_cast<size_t>(i - 1)] - per.orbit[static_cast<size_t>(i)];
    if (!(len.sign() > 0)) throw PrecisionError("degenerate fundamental domain");
    dec.frames.emplace_back(len, per.orbit[static_cast<size_t>(i)]);
  }
  for (long i = 1; i <= per.a - 1; ++i) {
    const auto& [len_i, x_i] = dec.frames[static_cast<size_t>(i - 1)];
    const auto& [len_n, x_n] = dec.frames[static_cast<size_t>(i)];
    std::vector<CompositionChain::Step> steps;
    steps.push_back(CompositionChain::AffineStep{len_i, x_i});
    for (const auto& s : base.eta().steps()) steps.push_back(s);
    Real inv_len = one / len_n;
    steps.push_back(CompositionChain::AffineStep{inv_len, -(x_n * inv_len)});
    dec.factors.emplace_back(std::move(steps), zero, one);
  }

  // Recomposition check: the chained factors reproduce A_a^{-1} o eta^{a-1} o A_1.
  Real tol = pow2(32 - bits, bits);
  const auto& [len_1, x_1] = dec.frames.front();
  const auto& [len_a, x_a] = dec.frames.back();
  for (const Real& t : uniform_grid(zero, one, 17)) {
    Real via_factors = t;
    for (const auto& f : dec.factors) via_factors = f.eval(via_factors);
    Real direct = len_1 * t + x_1;
    for (long k = 0; k < per.a - 1; ++k) direct = base.eta().eval(direct);
    direct = (direct - x_a) / len_a;
    Real scale = max(one, max(abs(via_factors), abs(direct)));
    if (abs(via_factors - direct) > tol * scale) {
      throw PrecisionError("factor recomposition drifted beyond tolerance");
    }
  }
  return dec;
}

NonlinearitySums nonlinearity_sums(const FactorDecomposition& dec,
                                   const FactorDecomposition* other, long grid) {
  if (other && other->factors.size() != dec.factors.size()) {
    throw DomainError("factor count mismatch between decompositions");
  }
  int bits = dec.factors.empty() ? kDefaultBits : dec.factors.front().bits();
  NonlinearitySums sums;
  sums.grid = grid;
  sums.sum_sup_n = Real(bits);
  sums.sum_sup_dn = Real(bits);
  if (other) sums.sum_diff = Real(bits);
  Real zero(bits), one(1L, bits), half(0.5, bits);

  std::vector<Real> ts = uniform_grid(zero, one, grid);
  for (size_t i = 0; i < dec.factors.size(); ++i) {
    Real sup_n(bits), sup_dn(bits), sup_diff(bits);
    for (const Real& t : ts) {
      Jet3 j = dec.factors[i].eval_jet(t);
      Real n = nonlinearity(j);
      // D(Nf) = Sf + (Nf)^2/2, exact from the third-order jet
      Real dn = schwarzian(j) + n * n * half;
      sup_n = max(sup_n, abs(n));
      sup_dn = max(sup_dn, abs(dn));
      if (other) {
        Real n2 = nonlinearity(other->factors[i].eval_jet(t));
        sup_diff = max(sup_diff, abs(n - n2));
      }
    }
    sums.sum_sup_n += sup_n;
    sums.sum_sup_dn += sup_dn;
    if (other) *sums.sum_diff += sup_diff;
  }
  return sums;
}

}  // namespace renormlab
