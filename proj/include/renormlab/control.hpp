#pragma once

#include <optional>

#include "renormlab/metric.hpp"
#include "renormlab/pair.hpp"

namespace renormlab {

/// The seven control quantities of a normalized renormalizable pair, each
/// expressed as the smallest K making its clause hold, plus the implied
/// minimal K and the largest sampled Schwarzian of the two branches.
struct KControlReport {
  Real k_xi0;       // 1/K <= xi(0) <= K
  Real k_gap0;      // xi(0) - eta(xi(0)) >= 1/K
  Real k_gap_last;  // eta^{a-1}(xi(0)) - eta^a(xi(0)) >= 1/K
  Real k_xa;        // eta^a(xi(0)) >= 1/K
  Real k_xa1;       // eta^{a+1}(xi(0)) <= -1/K
  Real k_c3;        // C3 norms of both branches <= K
  Real k_deta;      // D(eta) >= 1/K on [eta^a(xi(0)), xi(0)]
  Real minimal_k;
  Real schwarzian_max;
  Real c2_norm;  // C2 norm alongside the C3 bound, for the C2-to-C3 comparison
  long a = 0;
  bool bounded = true;  // false when some clause holds for no finite K
};

KControlReport k_control(const CommutingPair& pair, long grid = 129);

/// Largest t >= 0 with lo(x) + t <= hi(x) on the sampled common domain and
/// lo's boundary values below hi's; nullopt when the pairs are not ordered
/// even at t = 0.
std::optional<Real> order_leq(const CommutingPair& lo, const CommutingPair& hi,
                              long grid = 257);

}  // namespace renormlab
