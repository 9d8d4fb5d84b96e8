#pragma once

#include <variant>
#include <vector>

#include "renormlab/circle_map.hpp"
#include "renormlab/jet.hpp"

namespace renormlab {

/// Exact composition of primitive maps on a closed interval, evaluated by
/// threading values or 3-jets through the steps in order. Chains are
/// immutable; composing chains concatenates step lists. Adjacent affine steps
/// and repeated base-map applications are merged at construction, so a branch
/// stays a handful of steps no matter how it was assembled.
class CompositionChain {
 public:
  struct BaseStep {
    MapPtr map;
    long count;
  };
  struct AffineStep {  // x -> alpha*x + beta
    Real alpha;
    Real beta;
  };
  using Step = std::variant<BaseStep, AffineStep>;

  CompositionChain(std::vector<Step> steps, Real lo, Real hi);

  static CompositionChain identity(const Real& lo, const Real& hi, int bits);
  static CompositionChain affine_map(const Real& alpha, const Real& beta, const Real& lo,
                                     const Real& hi);
  /// T^{-p} o lift^q restricted to [lo, hi].
  static CompositionChain lift_power(MapPtr map, long q, long p, const Real& lo,
                                     const Real& hi);

  const std::vector<Step>& steps() const { return steps_; }
  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  int bits() const { return bits_; }
  /// Total number of base-map applications per evaluation.
  long base_applications() const;

  Real eval(const Real& x) const;
  Jet3 eval_jet(const Real& x) const;

  /// this o inner, defined on [lo, hi].
  CompositionChain after(const CompositionChain& inner, const Real& lo, const Real& hi) const;
  /// this^n (n >= 0), defined on [lo, hi].
  CompositionChain power(long n, const Real& lo, const Real& hi) const;
  /// A o this o A^{-1} with A(x) = alpha*x + beta; the domain is mapped
  /// through A (endpoints sorted when alpha < 0).
  CompositionChain conjugated(const Real& alpha, const Real& beta) const;
  CompositionChain restricted(const Real& lo, const Real& hi) const;

 private:
  std::vector<Step> steps_;
  Real lo_, hi_;
  int bits_;
};

}  // namespace renormlab
