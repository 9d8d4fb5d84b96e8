#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "renormlab/circle_map.hpp"
#include "renormlab/errors.hpp"
#include "renormlab/gridding.hpp"

using namespace renormlab;

namespace {
constexpr int kBits = 212;
}

TEST_CASE("arnold jets at the critical point") {
  CircleMapLift map = CircleMapLift::arnold(Real(0L, kBits), kBits);
  Jet3 j = map.eval_jet(Real(0L, kBits));
  CHECK(j.f.is_zero());
  CHECK(j.d1.is_zero());
  CHECK(j.d2.is_zero());
  // symbolic differentiation of t - sin(2 pi t)/(2 pi): D3 at 0 is 4 pi^2
  Real four_pi_sq = Real(4L, kBits) * const_pi(kBits) * const_pi(kBits);
  CHECK(close_ulps(j.d3, four_pi_sq, 8));
}

TEST_CASE("arnold at omega=1/4, x=1/2") {
  CircleMapLift map = CircleMapLift::arnold(Real(0.25, kBits), kBits);
  Jet3 j = map.eval_jet(Real(0.5, kBits));
  // f = 1/2 + 1/4 - sin(pi)/(2 pi) = 3/4; Df = 1 - cos(pi) = 2
  CHECK(close_ulps(j.f, Real(0.75, kBits), 8));
  CHECK(close_ulps(j.d1, Real(2L, kBits), 8));
}

TEST_CASE("degree-one lift: x and x+1 differ by exactly 1") {
  CircleMapLift arnold = CircleMapLift::arnold(Real(0.3, kBits), kBits);
  CircleMapLift twoh =
      CircleMapLift::two_harmonic(Real(0.3, kBits), Real(1L, kBits) / Real(10L, kBits), kBits);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  for (int t = 0; t < 64; ++t) {
    Real x(ud(rng), kBits);
    Real xp = x + Real(1L, kBits);
    for (const CircleMapLift* map : {&arnold, &twoh}) {
      Jet3 a = map->eval_jet(x);
      Jet3 b = map->eval_jet(xp);
      CHECK(close_ulps(b.f - a.f, Real(1L, kBits), 8));
      CHECK(b.d1 == a.d1);  // argument reduction makes derivatives exact
      CHECK(b.d2 == a.d2);
      CHECK(b.d3 == a.d3);
    }
  }
}

TEST_CASE("two_harmonic at beta=1/10 is a monotone cubic lift") {
  CircleMapLift map =
      CircleMapLift::two_harmonic(Real(0.4, kBits), Real(1L, kBits) / Real(10L, kBits), kBits);
  map.validate();
  Jet3 j0 = map.eval_jet(Real(0L, kBits));
  CHECK(j0.d1.is_zero());
  CHECK(j0.d2.is_zero());
  // D3 at 0 is 4 pi^2 (1 - 3 beta) = 4 pi^2 * 0.7
  Real want = Real(28L, kBits) / Real(10L, kBits) * const_pi(kBits) * const_pi(kBits);
  CHECK(close_ulps(j0.d3, want, 16));
}

TEST_CASE("monotone lift: derivative positive away from integers") {
  CircleMapLift map = CircleMapLift::arnold(Real(0.38, kBits), kBits);
  Real cutoff = pow2(-20, kBits);
  for (const Real& x : uniform_grid(Real(0L, kBits), Real(1L, kBits), 1L << 12)) {
    Jet3 j = map.eval_jet(x);
    CHECK(j.d1.sign() >= 0);
    if (x > cutoff && x < Real(1L, kBits) - cutoff) {
      CHECK(j.d1.sign() > 0);
    }
  }
}

TEST_CASE("rotation reference has unit derivative and no critical point") {
  CircleMapLift rot = CircleMapLift::rotation(Real(0.375, kBits), kBits);
  CHECK(!rot.has_critical_point());
  Jet3 j = rot.eval_jet(Real(0.25, kBits));
  CHECK(j.d1 == Real(1L, kBits));
  CHECK(j.d2.is_zero());
  CHECK(close_ulps(j.f, Real(0.625, kBits), 8));
}

TEST_CASE("family construction errors") {
  std::map<std::string, Real> params{{"omega", Real(0.5, kBits)}};
  CHECK_THROWS_AS(CircleMapLift::make("nosuch", params, kBits), ConfigError);
  CHECK_THROWS_AS(CircleMapLift::make("two_harmonic", params, kBits), ConfigError);
  CircleMapLift bad = CircleMapLift::arnold(Real(0L, kBits), kBits);
  CHECK_THROWS_AS(bad.validate(), ConfigError);  // f(0) = 0 breaks 0 < f(0) < 1
}

TEST_CASE("circle stepping tracks winding exactly") {
  CircleMapLift map = CircleMapLift::arnold(Real(0.9, kBits), kBits);
  Real u(kBits);
  long w = 0;
  for (int i = 0; i < 50; ++i) map.step_circle(u, w);
  CHECK(u.sign() >= 0);
  CHECK(u < Real(1L, kBits));
  CHECK(w > 0);
}

TEST_CASE("arnold schwarzian is negative away from integers") {
  CircleMapLift map = CircleMapLift::arnold(Real(0.3, kBits), kBits);
  Real three_half = Real(3L, kBits) / Real(2L, kBits);
  for (const Real& x : interior_grid(Real(0L, kBits), Real(1L, kBits), 257)) {
    Jet3 j = map.eval_jet(x);
    Real ratio = j.d2 / j.d1;
    Real s = j.d3 / j.d1 - three_half * ratio * ratio;
    CHECK(s.sign() < 0);
  }
}
