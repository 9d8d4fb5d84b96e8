#include "renormlab/fit.hpp"

#include "renormlab/errors.hpp"

namespace renormlab {

FitResult fit_linear(const std::vector<Real>& xs, const std::vector<Real>& ys) {
  if (xs.size() != ys.size()) throw DomainError("fit: mismatched point counts");
  if (xs.size() < 2) throw DomainError("fit needs at least 2 points");
  size_t n = xs.size();
  int bits = xs[0].bits();
  Real nn(static_cast<long>(n), bits);
  Real sx(bits), sy(bits), sxx(bits), sxy(bits);
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  Real det = nn * sxx - sx * sx;
  if (det.is_zero()) throw DomainError("fit: degenerate abscissae");
  FitResult fit;
  fit.slope = (nn * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / nn;
  fit.n_points = static_cast<long>(n);

  Real ss_res(bits), ss_tot(bits);
  Real mean = sy / nn;
  for (size_t i = 0; i < n; ++i) {
    Real pred = fit.slope * xs[i] + fit.intercept;
    Real e = ys[i] - pred;
    ss_res += e * e;
    Real d = ys[i] - mean;
    ss_tot += d * d;
  }
  if (ss_tot.is_zero()) {
    fit.r_squared = Real(ss_res.is_zero() ? 1L : 0L, bits);
  } else {
    fit.r_squared = Real(1L, bits) - ss_res / ss_tot;
    // Clamp roundoff excursions into [0,1].
    if (fit.r_squared < Real(0L, bits)) fit.r_squared = Real(0L, bits);
    if (fit.r_squared > Real(1L, bits)) fit.r_squared = Real(1L, bits);
  }
  return fit;
}

FitResult fit_loglinear(const std::vector<Real>& xs, const std::vector<Real>& ys) {
  if (xs.size() != ys.size()) throw DomainError("fit: mismatched point counts");
  std::vector<Real> lx, ly;
  lx.reserve(xs.size());
  ly.reserve(ys.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].sign() <= 0 || ys[i].sign() <= 0) {
      throw DomainError("fit_loglinear needs positive data");
    }
    lx.push_back(log(xs[i]));
    ly.push_back(log(ys[i]));
  }
  return fit_linear(lx, ly);
}

}  // namespace renormlab
