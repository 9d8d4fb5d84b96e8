#include "renormlab/partition.hpp"

#include <algorithm>
#include <numeric>

#include "renormlab/errors.hpp"
#include "renormlab/gridding.hpp"

namespace renormlab {

const PartitionAtom& DynamicalPartition::atom_by_label(long orbit_index, int family) const {
  for (const PartitionAtom& a : atoms) {
    if (a.orbit_index == orbit_index && a.family == family) return a;
  }
  throw CombinatoricsError("no atom labeled (" + std::to_string(orbit_index) + ", " +
                           std::to_string(family) + ")");
}

DynamicalPartition build_partition(const MapPtr& map, const ContinuedFractionState& cf,
                                   long level) {
  if (level < 0) throw DomainError("partition level must be >= 0");
  if (static_cast<long>(cf.digits.size()) < level + 1) {
    throw DomainError("continued fraction state too shallow for partition level " +
                      std::to_string(level));
  }
  DynamicalPartition part;
  part.level = level;
  part.q_n = cf.q(level);
  part.q_n1 = cf.q(level + 1);
  long count = part.q_n + part.q_n1;

  const int bits = map->bits();
  Real u(bits);
  long w = 0;
  part.orbit.reserve(static_cast<size_t>(count));
  part.orbit.push_back(u);
  for (long j = 1; j < count; ++j) {
    map->step_circle(u, w);
    if (u.is_zero()) {
      throw PeriodicOrbitError("critical orbit closed up inside the partition window", j);
    }
    part.orbit.push_back(u);
  }

  std::vector<long> order(static_cast<size_t>(count));
  std::iota(order.begin(), order.end(), 0L);
  std::sort(order.begin(), order.end(), [&](long i, long j) {
    const Real& a = part.orbit[static_cast<size_t>(i)];
    const Real& b = part.orbit[static_cast<size_t>(j)];
    if (a < b) return true;
    if (b < a) return false;
    throw PrecisionError("two orbit points coincide at working precision");
  });

  // Each gap between circularly consecutive orbit points is one atom; its
  // label is read off the index difference of its endpoints, which must be
  // +-q_n (an image of I_n) or +-q_{n+1} (an image of I_{n+1}).
  for (long s = 0; s < count; ++s) {
    long i = order[static_cast<size_t>(s)];
    long j = order[static_cast<size_t>((s + 1) % count)];
    PartitionAtom atom;
    atom.left = part.orbit[static_cast<size_t>(i)];
    atom.right = s + 1 < count ? part.orbit[static_cast<size_t>(j)]
                               : part.orbit[static_cast<size_t>(j)] + Real(1L, bits);
    if (part.q_n == part.q_n1) {
      // level 0 with a_0 = 1: two atoms, the one to the right of the critical
      // point is I_0 and the wrapping one is I_1
      atom.orbit_index = 0;
      atom.family = i == 0 ? 0 : 1;
    } else if (j - i == part.q_n && i < part.q_n1) {
      atom.orbit_index = i;
      atom.family = 0;
    } else if (i - j == part.q_n && j < part.q_n1) {
      atom.orbit_index = j;
      atom.family = 0;
    } else if (j - i == part.q_n1 && i < part.q_n) {
      atom.orbit_index = i;
      atom.family = 1;
    } else if (i - j == part.q_n1 && j < part.q_n) {
      atom.orbit_index = j;
      atom.family = 1;
    } else {
      throw CombinatoricsError("gap endpoints " + std::to_string(i) + "," + std::to_string(j) +
                               " do not differ by a return time");
    }
    part.atoms.push_back(std::move(atom));
  }

  long family0 = 0, family1 = 0;
  for (const auto& a : part.atoms) (a.family == 0 ? family0 : family1)++;
  if (family0 != part.q_n1 || family1 != part.q_n) {
    throw CombinatoricsError("atom family counts drifted from the return times");
  }
  return part;
}

namespace {

// Derivative of lift^steps along the orbit of the circle point x, with the
// running point reduced mod 1 at each application.
Real orbit_derivative(const CircleMapLift& map, const Real& x, long steps) {
  int bits = map.bits();
  Real u = x - floor(x);
  Real d(1L, bits);
  for (long k = 0; k < steps; ++k) {
    Jet3 j = map.eval_jet(u);
    d *= j.d1;
    u = j.f - floor(j.f);
  }
  return d;
}

// Max/min ratio of D(lift^steps) over `samples` interior points of the atom.
Real distortion_over_atom(const CircleMapLift& map, const PartitionAtom& atom, long steps,
                          long samples) {
  int bits = map.bits();
  if (steps <= 0) return Real(1L, bits);
  Real lo(bits), hi(bits);
  bool first = true;
  for (const Real& x : interior_grid(atom.left, atom.right, samples)) {
    Real d = orbit_derivative(map, x, steps);
    if (!(d.sign() > 0)) throw PrecisionError("vanishing derivative along a return branch");
    if (first) {
      lo = d;
      hi = d;
      first = false;
    } else {
      lo = min(lo, d);
      hi = max(hi, d);
    }
  }
  return hi / lo;
}

}  // namespace

RealBoundsReport real_bounds_report(const MapPtr& map, const DynamicalPartition& part,
                                    long samples) {
  const int bits = map->bits();
  RealBoundsReport rep;
  rep.max_adjacent_ratio = Real(1L, bits);
  rep.min_atom_length = part.atoms.front().length();
  Real floor_len = pow2(8 - bits, bits);
  size_t n = part.atoms.size();
  for (size_t i = 0; i < n; ++i) {
    Real len = part.atoms[i].length();
    if (len < floor_len) {
      throw PrecisionError("degenerate partition atom at working precision");
    }
    rep.min_atom_length = min(rep.min_atom_length, len);
    Real next = part.atoms[(i + 1) % n].length();
    rep.max_adjacent_ratio = max(rep.max_adjacent_ratio, len / next);
    rep.max_adjacent_ratio = max(rep.max_adjacent_ratio, next / len);
  }
  // Distortion of f^{q_n - 1} over the atom f(I_{n+1}).
  if (part.q_n <= 1) {
    rep.max_distortion = Real(1L, bits);
  } else {
    rep.max_distortion =
        distortion_over_atom(*map, part.atom_by_label(1, 1), part.q_n - 1, samples);
  }
  return rep;
}

Real koebe_distortion_probe(const MapPtr& map, const DynamicalPartition& part, long samples) {
  if (part.q_n1 <= 1) return Real(1L, map->bits());
  return distortion_over_atom(*map, part.atom_by_label(1, 0), part.q_n1 - 1, samples);
}

}  // namespace renormlab
