#include "renormlab/chain.hpp"

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

bool is_identity(const CompositionChain::AffineStep& s) {
  return s.alpha == Real(1L, s.alpha.bits()) && s.beta.is_zero();
}

}  // namespace

CompositionChain::CompositionChain(std::vector<Step> steps, Real lo, Real hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ <= hi_)) throw DomainError("chain domain endpoints out of order");
  bits_ = lo_.bits() >= hi_.bits() ? lo_.bits() : hi_.bits();
  steps_.reserve(steps.size());
  for (Step& s : steps) {
    if (auto* base = std::get_if<BaseStep>(&s)) {
      if (base->count < 0) throw DomainError("negative base-map count");
      if (base->count == 0) continue;
      bits_ = std::max(bits_, base->map->bits());
      if (!steps_.empty()) {
        if (auto* prev = std::get_if<BaseStep>(&steps_.back());
            prev && prev->map.get() == base->map.get()) {
          prev->count += base->count;
          continue;
        }
      }
      steps_.push_back(std::move(s));
    } else {
      auto& aff = std::get<AffineStep>(s);
      bits_ = std::max(bits_, aff.alpha.bits());
      if (!steps_.empty()) {
        if (auto* prev = std::get_if<AffineStep>(&steps_.back())) {
          // (a1,b1) then (a2,b2) collapses to (a2*a1, a2*b1 + b2)
          prev->beta = aff.alpha * prev->beta + aff.beta;
          prev->alpha = aff.alpha * prev->alpha;
          if (is_identity(*prev)) steps_.pop_back();
          continue;
        }
      }
      if (is_identity(aff)) continue;
      steps_.push_back(std::move(s));
    }
  }
}

CompositionChain CompositionChain::identity(const Real& lo, const Real& hi, int bits) {
  return CompositionChain({}, lo.with_bits(bits), hi.with_bits(bits));
}

CompositionChain CompositionChain::affine_map(const Real& alpha, const Real& beta,
                                              const Real& lo, const Real& hi) {
  std::vector<Step> steps;
  steps.push_back(AffineStep{alpha, beta});
  return CompositionChain(std::move(steps), lo, hi);
}

CompositionChain CompositionChain::lift_power(MapPtr map, long q, long p, const Real& lo,
                                              const Real& hi) {
  int bits = map->bits();
  std::vector<Step> steps;
  if (q > 0) steps.push_back(BaseStep{std::move(map), q});
  if (p != 0) steps.push_back(AffineStep{Real(1L, bits), Real(-p, bits)});
  return CompositionChain(std::move(steps), lo, hi);
}

long CompositionChain::base_applications() const {
  long total = 0;
  for (const Step& s : steps_) {
    if (const auto* base = std::get_if<BaseStep>(&s)) total += base->count;
  }
  return total;
}

Real CompositionChain::eval(const Real& x) const {
  Real v = x.with_bits(bits_);
  for (const Step& s : steps_) {
    if (const auto* base = std::get_if<BaseStep>(&s)) {
      for (long i = 0; i < base->count; ++i) v = base->map->eval(v);
    } else {
      const auto& aff = std::get<AffineStep>(s);
      Real::fma(v, aff.alpha, v, aff.beta);
    }
  }
  return v;
}

Jet3 CompositionChain::eval_jet(const Real& x) const {
  Jet3 cur = Jet3::identity(x.with_bits(bits_));
  Jet3 step_jet(bits_), next(bits_);
  JetScratch w(bits_);
  for (const Step& s : steps_) {
    if (const auto* base = std::get_if<BaseStep>(&s)) {
      for (long i = 0; i < base->count; ++i) {
        base->map->eval_jet_into(step_jet, cur.f);
        jet_compose_into(next, step_jet, cur, w);
        std::swap(cur, next);
      }
    } else {
      const auto& aff = std::get<AffineStep>(s);
      Real::fma(cur.f, aff.alpha, cur.f, aff.beta);
      Real::mul(cur.d1, aff.alpha, cur.d1);
      Real::mul(cur.d2, aff.alpha, cur.d2);
      Real::mul(cur.d3, aff.alpha, cur.d3);
    }
  }
  return cur;
}

CompositionChain CompositionChain::after(const CompositionChain& inner, const Real& lo,
                                         const Real& hi) const {
  std::vector<Step> steps = inner.steps_;
  steps.insert(steps.end(), steps_.begin(), steps_.end());
  return CompositionChain(std::move(steps), lo, hi);
}

CompositionChain CompositionChain::power(long n, const Real& lo, const Real& hi) const {
  if (n < 0) throw DomainError("chain power needs n >= 0");
  std::vector<Step> steps;
  steps.reserve(steps_.size() * static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) steps.insert(steps.end(), steps_.begin(), steps_.end());
  return CompositionChain(std::move(steps), lo, hi);
}

CompositionChain CompositionChain::conjugated(const Real& alpha, const Real& beta) const {
  if (alpha.is_zero()) throw DomainError("degenerate affine conjugation");
  Real a_lo = alpha * lo_ + beta;
  Real a_hi = alpha * hi_ + beta;
  if (alpha.sign() < 0) std::swap(a_lo, a_hi);
  Real inv_alpha = Real(1L, bits_) / alpha;
  std::vector<Step> steps;
  steps.reserve(steps_.size() + 2);
  steps.push_back(AffineStep{inv_alpha, -(beta * inv_alpha)});
  steps.insert(steps.end(), steps_.begin(), steps_.end());
  steps.push_back(AffineStep{alpha, beta});
  return CompositionChain(std::move(steps), a_lo, a_hi);
}

CompositionChain CompositionChain::restricted(const Real& lo, const Real& hi) const {
  return CompositionChain(steps_, lo, hi);
}

}  // namespace renormlab
