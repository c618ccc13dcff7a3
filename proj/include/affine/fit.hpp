#pragma once

#include <cmath>
#include <vector>

#include "affine/errors.hpp"

namespace affine {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;  // root-mean-square residual
};

/// Ordinary least-squares line through (x_i, y_i).
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw TooFewSamples("line fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

/// Least-squares power-law fit y ~ C t^p via log-log regression.  Values at or
/// below `floor` are clipped before taking logs.
inline LineFit fit_loglog(const std::vector<double>& t, const std::vector<double>& y,
                          double floor = 1e-300) {
  std::vector<double> lx(t.size()), ly(y.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    lx[i] = std::log(t[i]);
    ly[i] = std::log(std::max(y[i], floor));
  }
  return fit_line(lx, ly);
}

}  // namespace affine
