#pragma once

#include <vector>

#include "renormlab/real.hpp"

namespace renormlab {

/// n evenly spaced points on [lo, hi], endpoints included. n >= 2.
std::vector<Real> uniform_grid(const Real& lo, const Real& hi, long n);

/// n evenly spaced points strictly inside (lo, hi): lo + k*(hi-lo)/(n+1).
std::vector<Real> interior_grid(const Real& lo, const Real& hi, long n);

/// Uniform grid plus `refine` geometrically spaced points within absolute
/// distance 2^scale_exp of each endpoint. Order is deterministic: uniform
/// sweep first, then the refinement clusters.
std::vector<Real> refined_grid(const Real& lo, const Real& hi, long n, long refine,
                               long scale_exp);

}  // namespace renormlab
