#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "renormlab/control.hpp"
#include "renormlab/errors.hpp"
#include "renormlab/metric.hpp"
#include "renormlab/nonlinearity.hpp"
#include "renormlab/pair.hpp"
#include "renormlab/rotation_search.hpp"

using namespace renormlab;

namespace {

constexpr int kBits = 128;

struct Fixture {
  MapPtr arnold;
  MapPtr two_harmonic;
  ContinuedFractionState cf_a;
  ContinuedFractionState cf_b;
};

const Fixture& golden_maps() {
  static Fixture fx = [] {
    DigitTarget golden{{}, {1}};
    CircleMapLift ta = CircleMapLift::arnold(Real(0L, kBits), kBits);
    CircleMapLift tb =
        CircleMapLift::two_harmonic(Real(0L, kBits), Real(1L, kBits) / Real(10L, kBits), kBits);
    SolveResult ra = solve_parameter(ta, golden, 9);
    SolveResult rb = solve_parameter(tb, golden, 9);
    REQUIRE(ra.met_depth);
    REQUIRE(rb.met_depth);
    Fixture out;
    out.arnold = std::make_shared<CircleMapLift>(ta.with_omega(ra.omega));
    out.two_harmonic = std::make_shared<CircleMapLift>(tb.with_omega(rb.omega));
    out.cf_a = ra.cf;
    out.cf_b = rb.cf;
    return out;
  }();
  return fx;
}

}  // namespace

TEST_CASE("moebius frame solves the three-point conditions") {
  Real eta0(-2L, kBits), xi0(2L, kBits);
  MobiusMap m = MobiusMap::frame(eta0, xi0);
  CHECK(close_ulps(m.eval(eta0), Real(-1L, kBits), 8));
  CHECK(m.eval(Real(0L, kBits)).is_zero());
  CHECK(close_ulps(m.eval(xi0), Real(1L, kBits), 8));
  CHECK(m.is_affine());  // symmetric endpoints give a pure scaling

  Real e2(-0.5, kBits), x2(1.25, kBits);
  MobiusMap m2 = MobiusMap::frame(e2, x2);
  CHECK(close_ulps(m2.eval(e2), Real(-1L, kBits), 8));
  CHECK(close_ulps(m2.eval(x2), Real(1L, kBits), 8));
  // inverse round trip with jets
  Real y(0.375, kBits);
  CHECK(close_ulps(m2.eval(m2.inv(y)), y, 16));
  Jet3 j = m2.jet(m2.inv(y));
  Jet3 ji = m2.inv_jet(y);
  CHECK(close_ulps(j.d1 * ji.d1, Real(1L, kBits), 16));

  // identity when the pair is already framed
  MobiusMap id = MobiusMap::frame(Real(-1L, kBits), Real(1L, kBits));
  CHECK(id.a == Real(1L, kBits));
  CHECK(id.c.is_zero());
}

TEST_CASE("frame absorbs homotheties: A_scaled(alpha x) = A(x)") {
  Real eta0(-0.75, kBits), xi0(1.5, kBits), alpha(7L, kBits);
  MobiusMap m = MobiusMap::frame(eta0, xi0);
  MobiusMap ms = MobiusMap::frame(alpha * eta0, alpha * xi0);
  for (double t : {-0.7, -0.2, 0.3, 1.1}) {
    Real x = Real(t, kBits) * xi0;
    CHECK(close_ulps(ms.eval(alpha * x), m.eval(x), 32));
  }
}

TEST_CASE("distance of a pair to itself is exactly zero") {
  const auto& fx = golden_maps();
  CommutingPair pair = extract_pair(fx.arnold, fx.cf_a, 2);
  MetricReport rep = distance(pair, pair, 2, MetricVariant::Moebius, 65);
  CHECK(rep.d0.is_zero());
  CHECK(rep.d2.is_zero());
  MetricReport aff = distance(pair, pair, 2, MetricVariant::Affine, 65);
  CHECK(aff.d2.is_zero());
}

TEST_CASE("homothety invariance of both metric variants") {
  const auto& fx = golden_maps();
  CommutingPair p1 = extract_pair(fx.arnold, fx.cf_a, 2);
  CommutingPair p2 = extract_pair(fx.two_harmonic, fx.cf_b, 2);
  Real tol = pow2(40 - kBits, kBits) * Real(1000L, kBits);
  for (double alpha : {1.0 / 3.0, 1.0, 7.0}) {
    CommutingPair scaled = conjugate_homothety(p1, Real(alpha, kBits));
    MetricReport self = distance(p1, scaled, 2, MetricVariant::Moebius, 65);
    CHECK(self.d2 <= tol);
    MetricReport d_orig = distance(p1, p2, 2, MetricVariant::Moebius, 65);
    MetricReport d_scal = distance(scaled, p2, 2, MetricVariant::Moebius, 65);
    CHECK(abs(d_orig.d2 - d_scal.d2) <= tol * max(Real(1L, kBits), d_orig.d2));
    MetricReport a_orig = distance(p1, p2, 2, MetricVariant::Affine, 65);
    MetricReport a_scal = distance(scaled, p2, 2, MetricVariant::Affine, 65);
    CHECK(abs(a_orig.d2 - a_scal.d2) <= tol * max(Real(1L, kBits), a_orig.d2));
  }
}

TEST_CASE("metric monotonicity d0 <= d1 <= d2 and positive cross distance") {
  const auto& fx = golden_maps();
  for (long level = 1; level <= 4; ++level) {
    CommutingPair p1 = normalize(extract_pair(fx.arnold, fx.cf_a, level));
    CommutingPair p2 = normalize(extract_pair(fx.two_harmonic, fx.cf_b, level));
    MetricReport rep = distance(p1, p2, 2, MetricVariant::Moebius, 65);
    CHECK(rep.d0 <= rep.d1);
    CHECK(rep.d1 <= rep.d2);
    CHECK(rep.d2.sign() > 0);
    CHECK(rep.ratio_term <= rep.d0);
  }
}

TEST_CASE("grid refinement changes the sampled distance mildly") {
  const auto& fx = golden_maps();
  CommutingPair p1 = normalize(extract_pair(fx.arnold, fx.cf_a, 3));
  CommutingPair p2 = normalize(extract_pair(fx.two_harmonic, fx.cf_b, 3));
  MetricReport coarse = distance(p1, p2, 2, MetricVariant::Moebius, 257);
  MetricReport fine = distance(p1, p2, 2, MetricVariant::Moebius, 1025);
  CHECK(coarse.d2 <= fine.d2);  // more samples only raise a sampled sup
  CHECK(fine.d2 <= coarse.d2 * Real(1.05, kBits));
}

TEST_CASE("criticality mismatch is a domain error") {
  const auto& fx = golden_maps();
  CommutingPair p1 = extract_pair(fx.arnold, fx.cf_a, 1);
  DigitTarget target{{}, {1}};
  MapPtr rot = std::make_shared<CircleMapLift>(
      CircleMapLift::rotation(target.value(kBits), kBits));
  ContinuedFractionState cf = closest_returns(*rot, 6, 1L << 20);
  CommutingPair ref = extract_pair(rot, cf, 1);
  CHECK_THROWS_AS(distance(p1, ref, 2, MetricVariant::Moebius, 33), DomainError);
}

TEST_CASE("negative schwarzian propagates along the golden orbit") {
  const auto& fx = golden_maps();
  long first_negative = -1;
  for (long level = 1; level <= 6; ++level) {
    CommutingPair norm = normalize(extract_pair(fx.arnold, fx.cf_a, level));
    KControlReport rep = k_control(norm, 65);
    if (rep.schwarzian_max.sign() < 0) {
      first_negative = level;
      break;
    }
  }
  REQUIRE(first_negative >= 1);
  for (long level = first_negative; level <= first_negative + 2; ++level) {
    CommutingPair norm = normalize(extract_pair(fx.arnold, fx.cf_a, level));
    CHECK(k_control(norm, 65).schwarzian_max.sign() < 0);
  }
}

TEST_CASE("negative schwarzian also settles along a large-digit orbit") {
  DigitTarget target{{60}, {1}};
  CircleMapLift tmpl = CircleMapLift::arnold(Real(0L, kBits), kBits);
  SolveResult res = solve_parameter(tmpl, target, 7);
  REQUIRE(res.met_depth);
  MapPtr map = std::make_shared<CircleMapLift>(tmpl.with_omega(res.omega));
  long first_negative = -1;
  for (long level = 1; level <= 5; ++level) {
    CommutingPair norm = normalize(extract_pair(map, res.cf, level));
    if (k_control(norm, 33).schwarzian_max.sign() < 0) {
      first_negative = level;
      break;
    }
  }
  REQUIRE(first_negative >= 1);
  CommutingPair deeper =
      normalize(extract_pair(map, res.cf, first_negative + 1));
  CHECK(k_control(deeper, 33).schwarzian_max.sign() < 0);
}

TEST_CASE("metric agrees on pre-renormalizations and renormalizations") {
  // normalization is a homothety conjugation, so the framed distance of two
  // same-period pre-renormalizations equals that of the renormalizations
  const auto& fx = golden_maps();
  CommutingPair pa = extract_pair(fx.arnold, fx.cf_a, 2);
  CommutingPair pb = extract_pair(fx.two_harmonic, fx.cf_b, 2);
  REQUIRE(pa.period().a == pb.period().a);
  Real d_pre = distance(pre_renormalize(pa), pre_renormalize(pb), 2,
                        MetricVariant::Moebius, 65).d2;
  Real d_ren = distance(renormalize(pa), renormalize(pb), 2,
                        MetricVariant::Moebius, 65).d2;
  Real tol = pow2(40 - kBits, kBits) * max(Real(1L, kBits), d_pre);
  CHECK(abs(d_pre - d_ren) <= tol);
}
