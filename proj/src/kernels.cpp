#include "hak/kernels.hpp"

#include <cmath>

#include "hak/hermite.hpp"
#include "hak/sparse.hpp"

namespace hak {

namespace {

constexpr double kEnvelope = 0.6;  // crude bound on sup |h_k| |h_j|

// 1-D factor sum_k (2k+1)^p e^{-t(2k+1)} (d^gx h_k)(x) (d^gy h_k)(y)
double heat_factor_1d(double t, double x, double y, int K, int p, int gx, int gy) {
  auto hx = hermite_all_1d(K + gx, x);
  auto hy = hermite_all_1d(K + gy, y);
  KahanSum s;
  for (int k = 0; k <= K; ++k) {
    double w = std::exp(-t * (2.0 * k + 1.0));
    if (p > 0) w *= std::pow(2.0 * k + 1.0, p);
    double vx, vy;
    if (gx == 0) {
      vx = hx[std::size_t(k)];
    } else {
      SparseCoef d = SparseCoef::unit(MultiIndex{k});
      for (int r = 0; r < gx; ++r) d = d.derivative(0);
      vx = 0;
      for (const auto& [xi, c] : d.terms()) vx += c * hx[std::size_t(xi[0])];
    }
    if (gy == 0) {
      vy = hy[std::size_t(k)];
    } else {
      SparseCoef d = SparseCoef::unit(MultiIndex{k});
      for (int r = 0; r < gy; ++r) d = d.derivative(0);
      vy = 0;
      for (const auto& [xi, c] : d.terms()) vy += c * hy[std::size_t(xi[0])];
    }
    s.add(w * vx * vy);
  }
  return s.value();
}

}  // namespace

namespace {

// smallest K with envelope * e^{-t(2K+3)} / (1 - e^{-2t}) * (2K+3)^excess
// below tol; excess covers polynomial weights from L^k and derivatives
int series_degree_weighted(double t, double tol, int cap, double excess) {
  if (!(t > 0)) throw std::invalid_argument("heat kernel: need t > 0");
  const double denom = 1.0 - std::exp(-2.0 * t);
  double need = std::log(kEnvelope / (tol * denom)) / (2.0 * t) - 1.5;
  int K = std::max(1, int(std::ceil(need)));
  if (excess > 0) {
    // one fixed-point pass is enough at these scales
    need += excess * std::log(2.0 * K + 3.0) / (2.0 * t);
    K = std::max(1, int(std::ceil(need)));
  }
  if (K > cap)
    throw std::runtime_error("heat kernel: truncation cap " + std::to_string(cap) +
                             " exceeded, needed degree " + std::to_string(K));
  return K;
}

}  // namespace

int heat_series_degree(double t, const HeatSeriesOptions& opts) {
  return series_degree_weighted(t, opts.tail_tol, opts.degree_cap, 0.0);
}

double heat_kernel_series(double t, const Point& x, const Point& y,
                          const HeatSeriesOptions& opts) {
  if (x.dim() != y.dim()) throw std::invalid_argument("heat kernel: dimension mismatch");
  const int K = heat_series_degree(t, opts);
  double prod = 1;
  for (int ax = 0; ax < x.dim(); ++ax) prod *= heat_factor_1d(t, x[ax], y[ax], K, 0, 0, 0);
  return prod;
}

double heat_kernel_mehler(double t, const Point& x, const Point& y) {
  if (!(t > 0)) throw std::invalid_argument("heat kernel: need t > 0");
  const int n = x.dim();
  double sum2 = 0, diff2 = 0;
  for (int i = 0; i < n; ++i) {
    double s = x[i] + y[i], d = x[i] - y[i];
    sum2 += s * s;
    diff2 += d * d;
  }
  double pref = std::pow(2.0 * M_PI * std::sinh(2.0 * t), -0.5 * n);
  return pref * std::exp(-0.25 * (sum2 * std::tanh(t) + diff2 / std::tanh(t)));
}

double heat_kernel_Lk(int k, double t, const Point& x, const Point& y,
                      const HeatSeriesOptions& opts) {
  if (k < 0 || k > 2) throw std::invalid_argument("heat_kernel_Lk: k <= 2 only");
  const int K = series_degree_weighted(t, opts.tail_tol, opts.degree_cap, double(k));
  const int n = x.dim();
  std::vector<double> w0(std::size_t(n), 0.0), w1(std::size_t(n), 0.0), w2(std::size_t(n), 0.0);
  for (int ax = 0; ax < n; ++ax) {
    w0[std::size_t(ax)] = heat_factor_1d(t, x[ax], y[ax], K, 0, 0, 0);
    if (k >= 1) w1[std::size_t(ax)] = heat_factor_1d(t, x[ax], y[ax], K, 1, 0, 0);
    if (k >= 2) w2[std::size_t(ax)] = heat_factor_1d(t, x[ax], y[ax], K, 2, 0, 0);
  }
  auto prod_except = [&](int skip_a, int skip_b) {
    double p = 1;
    for (int ax = 0; ax < n; ++ax)
      if (ax != skip_a && ax != skip_b) p *= w0[std::size_t(ax)];
    return p;
  };
  if (k == 0) return prod_except(-1, -1);
  if (k == 1) {
    double s = 0;
    for (int ax = 0; ax < n; ++ax) s += w1[std::size_t(ax)] * prod_except(ax, -1);
    return s;
  }
  double s = 0;
  for (int ax = 0; ax < n; ++ax) s += w2[std::size_t(ax)] * prod_except(ax, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) s += w1[std::size_t(a)] * w1[std::size_t(b)] * prod_except(a, b);
  return s;
}

double heat_kernel_dy(const MultiIndex& gamma, double t, const Point& x, const Point& y,
                      const HeatSeriesOptions& opts) {
  if (gamma.dim() != x.dim()) throw std::invalid_argument("heat_kernel_dy: dimension mismatch");
  const int K = series_degree_weighted(t, opts.tail_tol, opts.degree_cap, 0.5 * gamma.order());
  double prod = 1;
  for (int ax = 0; ax < x.dim(); ++ax)
    prod *= heat_factor_1d(t, x[ax], y[ax], K, 0, 0, gamma[ax]);
  return prod;
}

double projector_QN(int N, const Point& x, const Point& y) {
  if (N < 0) throw std::invalid_argument("projector_QN: need N >= 0");
  if (x.dim() != y.dim()) throw std::invalid_argument("projector_QN: dimension mismatch");
  if (x.dim() == 1) {
    auto hx = hermite_all_1d(N, x[0]);
    auto hy = hermite_all_1d(N, y[0]);
    KahanSum s;
    for (int k = 0; k <= N; ++k) s.add(hx[std::size_t(k)] * hy[std::size_t(k)]);
    return s.value();
  }
  std::array<std::vector<double>, kMaxDim> hx, hy;
  for (int ax = 0; ax < x.dim(); ++ax) {
    hx[std::size_t(ax)] = hermite_all_1d(N, x[ax]);
    hy[std::size_t(ax)] = hermite_all_1d(N, y[ax]);
  }
  KahanSum s;
  for (const auto& xi : indices_with_order_between(x.dim(), 0, N)) {
    double v = 1;
    for (int ax = 0; ax < x.dim(); ++ax)
      v *= hx[std::size_t(ax)][std::size_t(xi[ax])] * hy[std::size_t(ax)][std::size_t(xi[ax])];
    s.add(v);
  }
  return s.value();
}

double projector_diag(int N, const Point& x) { return projector_QN(N, x, x); }

KernelEvaluator heat_kernel_evaluator(double t, int dim) {
  KernelEvaluator ev;
  ev.name = "heat(t=" + format_double(t) + ")";
  ev.dim = dim;
  ev.truncation = heat_series_degree(t);
  ev.max_dx = 2;
  ev.max_dy = 2;
  ev.value = [t](const Point& x, const Point& y) { return heat_kernel_series(t, x, y); };
  ev.deriv = [t](const MultiIndex& gamma, const MultiIndex& eta, const Point& x, const Point& y) {
    HeatSeriesOptions opts;
    const int K = series_degree_weighted(t, opts.tail_tol, opts.degree_cap,
                                         0.5 * (gamma.order() + eta.order()));
    double prod = 1;
    for (int ax = 0; ax < x.dim(); ++ax)
      prod *= heat_factor_1d(t, x[ax], y[ax], K, 0, gamma[ax], eta[ax]);
    return prod;
  };
  ev.l2_norm = [t, dim]() { return std::exp(-t * dim); };
  return ev;
}

}  // namespace hak
