#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "hak/basis.hpp"
#include "hak/core.hpp"

namespace hak {

struct HeatSeriesOptions {
  double tail_tol = 1e-15;
  int degree_cap = 200000;
};

/// Heat kernel by eigen-series, truncated once the per-axis tail is below
/// tail_tol. The n-dimensional kernel is the product of one-dimensional
/// factors.
double heat_kernel_series(double t, const Point& x, const Point& y,
                          const HeatSeriesOptions& opts = {});

/// Degree the series rule picks for a given t (per axis).
int heat_series_degree(double t, const HeatSeriesOptions& opts = {});

/// Closed-form cross-check:
/// (2 pi sinh 2t)^{-n/2} exp(-[|x+y|^2 tanh t + |x-y|^2 coth t]/4).
double heat_kernel_mehler(double t, const Point& x, const Point& y);

/// L^k e^{-tL}(x,y) by series, k <= 2.
double heat_kernel_Lk(int k, double t, const Point& x, const Point& y,
                      const HeatSeriesOptions& opts = {});

/// d^gamma/dy^gamma e^{-tL}(x,y) by exact ladder derivatives of the series.
double heat_kernel_dy(const MultiIndex& gamma, double t, const Point& x, const Point& y,
                      const HeatSeriesOptions& opts = {});

/// Projection kernel Q_N(x,y) = sum_{|xi| <= N} h_xi(x) h_xi(y).
double projector_QN(int N, const Point& x, const Point& y);
double projector_diag(int N, const Point& x);

/// Checkable kernel contract: pointwise values plus the partial derivatives
/// a grading needs. Complex-valued so pseudo-multiplier kernels fit; real
/// kernels populate the real part.
struct KernelEvaluator {
  using C = std::complex<double>;
  std::string name;
  int dim = 1;
  int truncation = 0;
  int max_dx = 0, max_dy = 0;
  std::function<C(const Point&, const Point&)> value;
  /// d_x^gamma d_y^eta K(x,y); orders up to (max_dx, max_dy).
  std::function<C(const MultiIndex&, const MultiIndex&, const Point&, const Point&)> deriv;
  /// L^2 -> L^2 operator norm estimate of the truncated operator.
  std::function<double()> l2_norm;
};

KernelEvaluator heat_kernel_evaluator(double t, int dim);

}  // namespace hak
