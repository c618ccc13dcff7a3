#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "affine/errors.hpp"
#include "affine/mat3.hpp"

namespace affine {

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

/// Geometrically spaced grid from a to b (inclusive), n >= 2 nodes, 0 < a < b.
std::vector<double> geometric_grid(double a, double b, int n);

/// Composite 3-point Gauss-Legendre integral of a matrix-valued integrand over
/// consecutive grid intervals.  Returns per-interval integrals of f and of
/// sigma*f so callers can form right-cumulative moments.
struct IntervalMoments {
  std::vector<Mat3> plain;     // integral of f over [x_j, x_{j+1}]
  std::vector<Mat3> weighted;  // integral of sigma*f over [x_j, x_{j+1}]
};
IntervalMoments gauss_interval_moments(const std::vector<double>& nodes,
                                       const std::function<Mat3(double, int)>& f);

/// 3-point Gauss-Legendre rule on [-1, 1].
inline constexpr double gauss3_x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
inline constexpr double gauss3_w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

/// Cubic Hermite interpolation over a node grid with finite-difference slopes.
/// Evaluation clamps to the grid range.
template <typename T>
class CubicHermite {
 public:
  CubicHermite() = default;

  /// Node values with caller-supplied slopes.
  CubicHermite(std::vector<double> xs, std::vector<T> ys, std::vector<T> slopes)
      : x_(std::move(xs)), y_(std::move(ys)), slope_(std::move(slopes)) {}

  CubicHermite(std::vector<double> xs, std::vector<T> ys) : x_(std::move(xs)), y_(std::move(ys)) {
    const std::size_t n = x_.size();
    slope_.resize(n);
    if (n < 2) return;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0) {
        if (n == 2) {
          slope_[i] = (y_[1] - y_[0]) * (1.0 / (x_[1] - x_[0]));
        } else {
          const double h0 = x_[1] - x_[0];
          const double h1 = x_[2] - x_[1];
          slope_[i] = (y_[1] - y_[0]) * ((2 * h0 + h1) / (h0 * (h0 + h1))) -
                      (y_[2] - y_[1]) * (h0 / (h1 * (h0 + h1)));
        }
      } else if (i + 1 == n) {
        if (n == 2) {
          slope_[i] = (y_[n - 1] - y_[n - 2]) * (1.0 / (x_[n - 1] - x_[n - 2]));
        } else {
          const double h1 = x_[n - 1] - x_[n - 2];
          const double h0 = x_[n - 2] - x_[n - 3];
          slope_[i] = (y_[n - 1] - y_[n - 2]) * ((2 * h1 + h0) / (h1 * (h0 + h1))) -
                      (y_[n - 2] - y_[n - 3]) * (h1 / (h0 * (h0 + h1)));
        }
      } else {
        // Slope of the parabola through the three neighboring nodes.
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        slope_[i] = (y_[i + 1] - y_[i]) * (h0 / (h1 * (h0 + h1))) +
                    (y_[i] - y_[i - 1]) * (h1 / (h0 * (h0 + h1)));
      }
    }
  }

  T operator()(double x) const {
    const std::size_t n = x_.size();
    if (n == 1) return y_[0];
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (x_[mid] <= x ? lo : hi) = mid;
    }
    const double h = x_[lo + 1] - x_[lo];
    const double u = (x - x_[lo]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return y_[lo] * h00 + slope_[lo] * (h * h10) + y_[lo + 1] * h01 + slope_[lo + 1] * (h * h11);
  }

  const std::vector<double>& nodes() const { return x_; }

 private:
  std::vector<double> x_;
  std::vector<T> y_;
  std::vector<T> slope_;
};

}  // namespace affine
