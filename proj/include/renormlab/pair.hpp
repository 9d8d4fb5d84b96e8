#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renormlab/chain.hpp"
#include "renormlab/contfrac.hpp"

namespace renormlab {

/// Finite period of a pair together with the boundary orbit x_i = eta^i(xi(0))
/// for i = 0..a+1. `mirrored` marks the case where the composed critical value
/// lands on the xi side and the roles of the two branches were swapped (via
/// conjugation by x -> -x) before iterating.
struct PairPeriod {
  long a = 0;
  bool mirrored = false;
  std::vector<Real> orbit;
};

enum class PairValidationMode { Strict, Relaxed };

struct ValidationClause {
  std::string name;
  bool pass = true;
  double residual = 0.0;   // worst scaled residual observed (diagnostic only)
  double tolerance = 0.0;
};

struct ValidationReport {
  std::vector<ValidationClause> clauses;
  bool ok() const;
  std::string summary() const;
};

/// Two monotone branches around 0: eta on [0, xi(0)], xi on [eta(0), 0], with
/// xi(0) > 0 > eta(0). Immutable value; the period cache is filled lazily by
/// period() and must be primed before sharing a pair across threads.
class CommutingPair {
 public:
  CommutingPair(CompositionChain eta, CompositionChain xi, int criticality,
                PairValidationMode mode = PairValidationMode::Strict);

  const CompositionChain& eta() const { return eta_; }
  const CompositionChain& xi() const { return xi_; }
  const Real& xi0() const { return eta_.hi(); }
  const Real& eta0() const { return xi_.lo(); }
  int criticality() const { return criticality_; }
  int bits() const { return eta_.bits(); }
  PairValidationMode mode() const { return mode_; }

  /// Piecewise evaluation: xi on [eta(0), 0), eta on [0, xi(0)].
  Real eval(const Real& x) const;
  Jet3 eval_jet(const Real& x) const;

  /// Finite period with boundary orbit; throws NotRenormalizableError when no
  /// crossing exists within max_steps and PeriodicOrbitError on an exact tie.
  const PairPeriod& period(long max_steps = 1L << 20) const;
  std::optional<PairPeriod> try_period(long max_steps = 1L << 20) const;
  bool has_cached_period() const { return period_cache_.has_value(); }
  void prime_period(PairPeriod per) const { period_cache_ = std::move(per); }

 private:
  CompositionChain eta_, xi_;
  int criticality_;
  PairValidationMode mode_;
  mutable std::optional<PairPeriod> period_cache_;
};

/// Swap-mirror of the pair: same dynamical system, branch roles exchanged and
/// coordinates reflected through 0. An involution.
CommutingPair dual_pair(const CommutingPair& pair);
/// Conjugation by the homothety x -> alpha*x (alpha > 0).
CommutingPair conjugate_homothety(const CommutingPair& pair, const Real& alpha);

/// Runs every defining clause at tolerance 2^(32-bits), scaled by the
/// magnitude of the quantities compared. Relaxed mode skips the critical-point
/// clause (reference pairs with affine branches).
ValidationReport validate_pair(const CommutingPair& pair);
void require_valid(const CommutingPair& pair);

/// First-return pair of a circle map at the given level (level >= -1):
/// eta = T^{-p_{n+1}} o lift^{q_{n+1}} on the lifted interval adjacent to 0,
/// xi = T^{-p_n} o lift^{q_n}; conjugated by x -> -x at levels where the
/// closest return at level n is negative, so the result is always in standard
/// orientation. Level -1 is the base pair (lift, T^{-1}), validated Relaxed.
CommutingPair extract_pair(const MapPtr& map, const ContinuedFractionState& cf, long level,
                           bool validate = true);

/// First-return pair on the shrunk domain, relabeled by the mirror so the
/// result is again in standard orientation. With this convention the
/// pre-renormalization of the level-n extracted pair equals the level-(n+1)
/// extracted pair as a composition chain.
CommutingPair pre_renormalize(const CommutingPair& pair);
/// Rescale so that eta(0) = -1 exactly.
CommutingPair normalize(const CommutingPair& pair);
CommutingPair renormalize(const CommutingPair& pair);

struct RotationDigits {
  std::vector<long> digits;
  bool complete = true;
};
/// [chi(pair), chi(R(pair)), ...] up to `depth` entries; stops early (flagged)
/// if some level is not renormalizable.
RotationDigits pair_rotation_digits(const CommutingPair& pair, long depth);

/// Unique interior point p with D(eta)(p) = 1, located by bisection after a
/// coarse scan of x - eta(x). Returns p and its eta-jet.
struct FlattestPoint {
  Real p;
  Jet3 jet;
};
FlattestPoint flattest_point(const CommutingPair& pair, long scan_grid = 129);

}  // namespace renormlab
