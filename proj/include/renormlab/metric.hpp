#pragma once

#include <string>

#include "renormlab/pair.hpp"

namespace renormlab {

/// Moebius map A(x) = a*x/(c*x + 1); frame(eta0, xi0) is the unique one with
/// A(eta0) = -1, A(0) = 0, A(xi0) = 1. The pole lies outside [eta0, xi0].
struct MobiusMap {
  Real a, c;

  static MobiusMap frame(const Real& eta0, const Real& xi0);
  Real eval(const Real& x) const;
  Jet3 jet(const Real& x) const;
  Real inv(const Real& y) const;
  Jet3 inv_jet(const Real& y) const;
  bool is_affine() const { return c.is_zero(); }
};

enum class MetricVariant { Moebius, Affine };

/// Sampled C^r distances between two pairs. d_r = max(ratio term,
/// sup over sampled points of |D^k F1 - D^k F2| for k <= r); grids carry the
/// uniform sweep plus geometric refinement near the boundary points, so the
/// values are lower bounds of the true sup norms. d0 <= d1 <= d2 by
/// construction.
struct MetricReport {
  Real d0, d1, d2;
  Real ratio_term;
  long grid_size = 0;
  MetricVariant variant = MetricVariant::Moebius;

  const Real& dr(int r) const;
};

MetricReport distance(const CommutingPair& lhs, const CommutingPair& rhs, int r = 2,
                      MetricVariant variant = MetricVariant::Moebius, long grid_size = 257);

}  // namespace renormlab
