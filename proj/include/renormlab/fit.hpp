#pragma once

#include <vector>

#include "renormlab/real.hpp"

namespace renormlab {

struct FitResult {
  Real slope;
  Real intercept;
  Real r_squared;
  long n_points = 0;
};

/// Least-squares line through the raw (x_i, y_i) points, accumulated in index
/// order at full working precision.
FitResult fit_linear(const std::vector<Real>& xs, const std::vector<Real>& ys);

/// Least-squares line through (log x_i, log y_i); all inputs must be positive.
FitResult fit_loglinear(const std::vector<Real>& xs, const std::vector<Real>& ys);

}  // namespace renormlab
