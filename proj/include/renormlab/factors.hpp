#pragma once

#include <optional>

#include "renormlab/pair.hpp"

namespace renormlab {

/// Affine factorization of the long branch: f_i = A_{i+1}^{-1} o eta o A_i on
/// [0,1] for i = 1..a-1, where A_i(x) = |I_i| x + x_i maps [0,1] onto the
/// fundamental domain I_i = [x_i, x_{i-1}]. The composition of all factors
/// equals A_a^{-1} o eta^{a-1} o A_1.
struct FactorDecomposition {
  long a = 0;
  std::vector<CompositionChain> factors;        // index i-1 holds f_i
  std::vector<std::pair<Real, Real>> frames;    // (|I_i|, x_i) for i = 1..a
};

/// Empty when the period is below 2. Verifies the recomposition identity at 17
/// sample points against the direct chain.
FactorDecomposition decompose_branch(const CommutingPair& pair);

struct NonlinearitySums {
  Real sum_sup_n;               // sum_i sup |N f_i|
  Real sum_sup_dn;              // sum_i sup |D(N f_i)|
  std::optional<Real> sum_diff; // sum_i sup |N f_i - N g_i| when two decompositions given
  long grid = 33;
};

NonlinearitySums nonlinearity_sums(const FactorDecomposition& dec,
                                   const FactorDecomposition* other = nullptr,
                                   long grid = 33);

}  // namespace renormlab
