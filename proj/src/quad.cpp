#include "affine/quad.hpp"

#include <cmath>

namespace affine {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw QuadratureFailure("adaptive Simpson recursion depth exhausted");
  return adaptive_step(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

std::vector<double> geometric_grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double ratio = std::log(b / a) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a * std::exp(ratio * i);
  g.front() = a;
  g.back() = b;
  return g;
}

IntervalMoments gauss_interval_moments(const std::vector<double>& nodes,
                                       const std::function<Mat3(double, int)>& f) {
  const std::size_t n = nodes.size();
  IntervalMoments out;
  out.plain.resize(n - 1);
  out.weighted.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double half = 0.5 * (nodes[j + 1] - nodes[j]);
    const double mid = 0.5 * (nodes[j + 1] + nodes[j]);
    Mat3 acc, acc_w;
    for (int g = 0; g < 3; ++g) {
      const double sigma = mid + half * gauss3_x[g];
      const Mat3 val = f(sigma, static_cast<int>(j)) * (gauss3_w[g] * half);
      acc += val;
      acc_w += val * sigma;
    }
    out.plain[j] = acc;
    out.weighted[j] = acc_w;
  }
  return out;
}

}  // namespace affine
