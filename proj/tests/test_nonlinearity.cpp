#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "renormlab/errors.hpp"
#include "renormlab/factors.hpp"
#include "renormlab/metric.hpp"
#include "renormlab/nonlinearity.hpp"
#include "renormlab/pair.hpp"
#include "renormlab/rotation_search.hpp"

using namespace renormlab;

namespace {

constexpr int kBits = 212;

// Cubic polynomial diffeo of [0,1]: x + (c2 x^2 + c3 x^3)/8, derivative > 0.
struct PolyDiffeo {
  Real c2, c3;
  Jet3 jet(const Real& x) const {
    int b = x.bits();
    Real eighth(0.125, b);
    Jet3 j(b);
    j.f = x + (c2 * x * x + c3 * x * x * x) * eighth;
    j.d1 = Real(1L, b) + (Real(2L, b) * c2 * x + Real(3L, b) * c3 * x * x) * eighth;
    j.d2 = (Real(2L, b) * c2 + Real(6L, b) * c3 * x) * eighth;
    j.d3 = Real(6L, b) * c3 * eighth;
    return j;
  }
};

PolyDiffeo random_diffeo(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ci(-8, 8);
  return PolyDiffeo{Real(ci(rng), kBits) / Real(8L, kBits),
                    Real(ci(rng), kBits) / Real(8L, kBits)};
}

}  // namespace

TEST_CASE("nonlinearity of affine maps vanishes; symbolic oracle") {
  Jet3 aff = Jet3::affine(Real(3L, kBits), Real(-1L, kBits), Real(0.5, kBits));
  CHECK(nonlinearity(aff).is_zero());

  // f(x) = (x + x^2)/2 has Nf(x) = 2/(1+2x)
  for (double xd : {0.0, 0.25, 0.5, 0.875}) {
    Real x(xd, kBits);
    Jet3 j(kBits);
    j.f = (x + x * x) * Real(0.5, kBits);
    j.d1 = Real(0.5, kBits) + x;
    j.d2 = Real(1L, kBits);
    j.d3 = Real(kBits);
    Real want = Real(2L, kBits) / (Real(1L, kBits) + Real(2L, kBits) * x);
    CHECK(close_ulps(nonlinearity(j), want, 8));
  }

  Jet3 bad(kBits);
  bad.d1 = Real(-1L, kBits);
  CHECK_THROWS_AS(nonlinearity(bad), DomainError);
}

TEST_CASE("schwarzian: moebius kernel and cubic oracle") {
  // jets of x^3 at 1/2: S = -4/x^2 = -16
  Jet3 cubic(Real(0.125, kBits), Real(0.75, kBits), Real(3L, kBits), Real(6L, kBits));
  CHECK(close_ulps(schwarzian(cubic), Real(-16L, kBits), 8));

  // moebius maps have vanishing schwarzian: x/(x+2) at x=1
  // f = 1/3, f' = 2/(x+2)^2 = 2/9, f'' = -4/27, f''' = 12/81
  Jet3 moeb(Real(1L, kBits) / Real(3L, kBits), Real(2L, kBits) / Real(9L, kBits),
            Real(-4L, kBits) / Real(27L, kBits), Real(12L, kBits) / Real(81L, kBits));
  Real s = schwarzian(moeb);
  CHECK(abs(s) <= pow2(8 - kBits, kBits));
}

TEST_CASE("both chain rules hold to 8 ulp over 64 random trials") {
  std::mt19937_64 rng(1234321);
  std::uniform_int_distribution<int> xi(1, 31);
  for (int trial = 0; trial < 64; ++trial) {
    PolyDiffeo f = random_diffeo(rng);
    PolyDiffeo g = random_diffeo(rng);
    Real x = Real(xi(rng), kBits) / Real(32L, kBits);
    Jet3 jg = g.jet(x);
    Jet3 jf = f.jet(jg.f);
    Jet3 comp = jet_compose(jf, jg);

    // N(f o g) = Nf o g * Dg + Ng
    Real lhs_n = nonlinearity(comp);
    Real rhs_n = nonlinearity(jf) * jg.d1 + nonlinearity(jg);
    CHECK(close_ulps(lhs_n, rhs_n, 8));

    // S(f o g) = (Sf o g) * Dg^2 + Sg
    Real lhs_s = schwarzian(comp);
    Real rhs_s = schwarzian(jf) * jg.d1 * jg.d1 + schwarzian(jg);
    CHECK(close_ulps(lhs_s, rhs_s, 8));
  }
}

TEST_CASE("derivative identity for N via central differences") {
  // affine: both sides vanish
  auto affine = [](const Real& x) {
    return Jet3::affine(Real(2L, x.bits()), Real(1L, x.bits()), x);
  };
  Real r0 = nonlinearity_derivative_identity_check(affine, Real(0.5, kBits));
  CHECK(r0 <= pow2(-(kBits / 2), kBits));

  // f = (x + x^2)/2: residual tiny at 212 bits
  auto quad = [](const Real& x) {
    int b = x.bits();
    return Jet3((x + x * x) * Real(0.5, b), Real(0.5, b) + x, Real(1L, b), Real(b));
  };
  Real r1 = nonlinearity_derivative_identity_check(quad, Real(0.375, kBits));
  CHECK(r1 <= Real(1e-10, kBits));
}

TEST_CASE("inverse nonlinearity: identity, exponential profile, round trips") {
  Real zero(kBits), one(1L, kBits);

  // phi = 0 gives the identity
  SampledFunction flat = SampledFunction::constant(zero, zero, one, 65);
  NonlinearityInverse id(flat);
  for (double xd : {0.0, 0.3125, 0.75, 1.0}) {
    Real x(xd, kBits);
    CHECK(close_ulps(id.eval(x), x, 1L << 20));
  }

  // phi = c: closed-form exponential profile (e^{cx}-1)/(e^c - 1)
  Real c(2L, kBits);
  SampledFunction conс = SampledFunction::constant(c, zero, one, 65);
  NonlinearityInverse expo(conс);
  Real denom = exp(c) - one;
  Real quad_tol(1e-12, kBits);
  for (const Real& x : {Real(0.25, kBits), Real(0.5, kBits), Real(0.9375, kBits)}) {
    Real want = (exp(c * x) - one) / denom;
    CHECK(abs(expo.eval(x) - want) <= quad_tol);
  }

  // round trip N(N^{-1} phi) = phi at 33 interior points
  Real rt_tol = pow2(24 - kBits, kBits) + quad_tol;
  auto check_round_trip = [&](const SampledFunction& phi) {
    NonlinearityInverse inv(phi);
    for (long k = 1; k < 33; ++k) {
      Real x = Real(k, kBits) / Real(33L, kBits);
      Jet3 j = inv.jet(x);
      CHECK(abs(nonlinearity(j) - phi.eval(x)) <= rt_tol);
    }
  };
  check_round_trip(conс);
  check_round_trip(SampledFunction::tabulate(
      [&](const Real& x) { return Real(2L, kBits) / (one + Real(2L, kBits) * x); }, zero,
      one, 65));

  // phi = Nf for f = (x+x^2)/2 on [0,1] recovers f up to the piecewise-linear
  // sampling of the profile (f already fixes the endpoints)
  SampledFunction nf = SampledFunction::tabulate(
      [&](const Real& x) { return Real(2L, kBits) / (one + Real(2L, kBits) * x); }, zero,
      one, 65);
  NonlinearityInverse rec(nf);
  Real sup(kBits);
  for (long k = 0; k <= 16; ++k) {
    Real x = Real(k, kBits) / Real(16L, kBits);
    Real want = (x + x * x) * Real(0.5, kBits);
    sup = max(sup, abs(rec.eval(x) - want));
  }
  CHECK(sup <= Real(1e-3, kBits));
}

TEST_CASE("factor decomposition of a long branch") {
  // The level-0 pair of [1,a,1,...] has period a with the whole boundary
  // orbit interior to the branch domain, so every factor is a diffeo up to
  // its endpoints.
  constexpr int bits = 128;
  DigitTarget target{{1, 12}, {1}};
  CircleMapLift tmpl = CircleMapLift::arnold(Real(0L, bits), bits);
  SolveResult res = solve_parameter(tmpl, target, 6);
  REQUIRE(res.met_depth);
  MapPtr map = std::make_shared<CircleMapLift>(tmpl.with_omega(res.omega));
  CommutingPair base = extract_pair(map, res.cf, 0);
  REQUIRE(base.period().a == 12);

  FactorDecomposition dec = decompose_branch(base);
  CHECK(dec.factors.size() == 11);
  CHECK(dec.frames.size() == 12);
  for (const auto& f : dec.factors) {
    CHECK(f.lo().is_zero());
    CHECK(f.hi() == Real(1L, bits));
  }

  NonlinearitySums sums = nonlinearity_sums(dec);
  CHECK(sums.sum_sup_n.is_finite());
  CHECK(sums.sum_sup_n.sign() > 0);
  CHECK(sums.sum_sup_dn.is_finite());

  NonlinearitySums self = nonlinearity_sums(dec, &dec);
  REQUIRE(self.sum_diff.has_value());
  CHECK(self.sum_diff->is_zero());
}

TEST_CASE("short periods give small or empty decompositions") {
  constexpr int bits = 128;
  DigitTarget target{{5, 4, 3}, {2}};
  CircleMapLift tmpl = CircleMapLift::arnold(Real(0L, bits), bits);
  SolveResult res = solve_parameter(tmpl, target, 7);
  REQUIRE(res.met_depth);
  MapPtr map = std::make_shared<CircleMapLift>(tmpl.with_omega(res.omega));

  CommutingPair level2 = extract_pair(map, res.cf, 2);  // period a_3 = 2
  REQUIRE(level2.period().a == 2);
  FactorDecomposition two = decompose_branch(level2);
  CHECK(two.factors.size() == 1);

  DigitTarget golden{{}, {1}};
  SolveResult g = solve_parameter(tmpl, golden, 8);
  MapPtr gm = std::make_shared<CircleMapLift>(tmpl.with_omega(g.omega));
  CommutingPair p1 = extract_pair(gm, g.cf, 3);  // period 1
  FactorDecomposition empty = decompose_branch(p1);
  CHECK(empty.factors.empty());

  CHECK_THROWS_AS(nonlinearity_sums(two, &empty), DomainError);
}

TEST_CASE("difference sums of matched decompositions track the pair distance") {
  constexpr int bits = 128;
  DigitTarget target{{1, 12}, {1}};
  CircleMapLift ta = CircleMapLift::arnold(Real(0L, bits), bits);
  CircleMapLift tb =
      CircleMapLift::two_harmonic(Real(0L, bits), Real(1L, bits) / Real(10L, bits), bits);
  SolveResult ra = solve_parameter(ta, target, 6);
  SolveResult rb = solve_parameter(tb, target, 6);
  REQUIRE(ra.met_depth);
  REQUIRE(rb.met_depth);
  MapPtr ma = std::make_shared<CircleMapLift>(ta.with_omega(ra.omega));
  MapPtr mb = std::make_shared<CircleMapLift>(tb.with_omega(rb.omega));
  CommutingPair pa = extract_pair(ma, ra.cf, 0);
  CommutingPair pb = extract_pair(mb, rb.cf, 0);
  REQUIRE(pa.period().a == 12);
  REQUIRE(pb.period().a == 12);

  FactorDecomposition da = decompose_branch(pa);
  FactorDecomposition db = decompose_branch(pb);
  NonlinearitySums sums = nonlinearity_sums(da, &db);
  REQUIRE(sums.sum_diff.has_value());
  CHECK(sums.sum_diff->is_finite());
  CHECK(sums.sum_diff->sign() > 0);
  // measured ratio against the pair distance stays a sane constant
  Real eps = distance(pa, pb, 2, MetricVariant::Moebius, 65).d2;
  Real ratio = *sums.sum_diff / eps;
  CHECK(ratio.is_finite());
  CHECK(ratio < Real(1000L, bits));
}

TEST_CASE("single-map factor sums stay bounded across levels") {
  constexpr int bits = 128;
  DigitTarget twos{{}, {2}};
  CircleMapLift tmpl = CircleMapLift::arnold(Real(0L, bits), bits);
  SolveResult res = solve_parameter(tmpl, twos, 10);
  REQUIRE(res.met_depth);
  MapPtr map = std::make_shared<CircleMapLift>(tmpl.with_omega(res.omega));
  Real worst(bits);
  for (long level = 2; level <= 7; ++level) {
    CommutingPair pair = extract_pair(map, res.cf, level);
    REQUIRE(pair.period().a == 2);
    NonlinearitySums sums = nonlinearity_sums(decompose_branch(pair));
    worst = max(worst, sums.sum_sup_n);
  }
  CHECK(worst.is_finite());
  CHECK(worst < Real(100L, bits));
}

TEST_CASE("inverse nonlinearity is lipschitz between nearby profiles") {
  Real zero(kBits), one(1L, kBits);
  SampledFunction phi = SampledFunction::tabulate(
      [&](const Real& x) { return Real(2L, kBits) / (one + Real(2L, kBits) * x); }, zero,
      one, 65);
  SampledFunction psi = SampledFunction::tabulate(
      [&](const Real& x) {
        return Real(2L, kBits) / (one + Real(2L, kBits) * x) + Real(0.01, kBits);
      },
      zero, one, 65);
  NonlinearityInverse f(phi), g(psi);
  Real d0(kBits), d2(kBits);
  for (long k = 0; k <= 64; ++k) {
    Real x = Real(k, kBits) / Real(64L, kBits);
    d0 = max(d0, abs(phi.eval(x) - psi.eval(x)));
    Jet3 jf = f.jet(x), jg = g.jet(x);
    d2 = max(d2, abs(jf.f - jg.f));
    d2 = max(d2, abs(jf.d1 - jg.d1));
    d2 = max(d2, abs(jf.d2 - jg.d2));
  }
  Real ratio = d2 / d0;
  CHECK(ratio.is_finite());
  CHECK(ratio < Real(100L, kBits));
  CHECK(ratio.sign() > 0);
}
