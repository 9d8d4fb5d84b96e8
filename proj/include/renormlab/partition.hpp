#pragma once

#include "renormlab/circle_map.hpp"
#include "renormlab/contfrac.hpp"

namespace renormlab {

/// One atom of a dynamical partition, in circle coordinates. `right` may
/// exceed 1 for the atom wrapping through the base point. family 0 atoms are
/// the images f^j(I_n) (j < q_{n+1}); family 1 atoms are f^j(I_{n+1})
/// (j < q_n).
struct PartitionAtom {
  Real left;
  Real right;
  long orbit_index = 0;
  int family = 0;

  Real length() const { return right - left; }
};

struct DynamicalPartition {
  long level = 0;
  long q_n = 0;
  long q_n1 = 0;
  std::vector<Real> orbit;           // circle positions of f^j(0), j < q_n + q_{n+1}
  std::vector<PartitionAtom> atoms;  // sorted by left endpoint, tiling the circle

  const PartitionAtom& atom_by_label(long orbit_index, int family) const;
};

/// Atoms of the level-n partition, labeled combinatorially and validated
/// against the return-time structure.
DynamicalPartition build_partition(const MapPtr& map, const ContinuedFractionState& cf,
                                   long level);

struct RealBoundsReport {
  Real max_adjacent_ratio;  // K_adj over adjacent atoms
  Real min_atom_length;
  Real max_distortion;      // derivative ratio of f^{q_n - 1} over f(I_{n+1})
};

RealBoundsReport real_bounds_report(const MapPtr& map, const DynamicalPartition& part,
                                    long samples = 9);

/// Max derivative ratio of f^{q_{n+1}-1} over sampled points of f(I_n).
Real koebe_distortion_probe(const MapPtr& map, const DynamicalPartition& part,
                            long samples = 9);

}  // namespace renormlab
