#include "hak/pseudo.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "hak/hermite.hpp"
#include "hak/sparse.hpp"

namespace hak {

using C = std::complex<double>;

std::vector<C> pseudo_apply(const PseudoSymbol& sigma, const CoefVec& c, const GridPtr& grid) {
  const BasisSpec& b = *c.basis;
  std::vector<C> out(grid->size(), C(0, 0));
  parallel_for(grid->size(), [&](std::size_t p) {
    const Point& x = grid->point(p);
    std::array<std::vector<double>, kMaxDim> h1;
    for (int ax = 0; ax < b.dim(); ++ax) h1[std::size_t(ax)] = hermite_all_1d(b.max_degree(), x[ax]);
    KahanSum re, im;
    for (std::size_t k = 0; k < b.count(); ++k) {
      double cv = c.values[k];
      if (cv == 0.0) continue;
      const MultiIndex& xi = b.at(k);
      double hval = cv;
      for (int ax = 0; ax < b.dim(); ++ax) hval *= h1[std::size_t(ax)][std::size_t(xi[ax])];
      C s = sigma.eval(x, xi) * hval;
      re.add(s.real());
      im.add(s.imag());
    }
    out[p] = C(re.value(), im.value());
  });
  return out;
}

double kernel_taper_weight(double eigenvalue, int K, int dim) {
  return smooth_cutoff(std::sqrt(eigenvalue) / std::sqrt(2.0 * K + dim));
}

namespace {

inline double taper_cut(double eigenvalue, double eig_cut) {
  return smooth_cutoff(std::sqrt(eigenvalue / eig_cut));
}

}  // namespace

C pseudo_kernel_cut(const PseudoSymbol& sigma, const Point& x, const Point& y, double eig_cut,
                    double* diagnostic) {
  const int dim = x.dim();
  const int top = std::max(0, int(std::floor((eig_cut - dim) / 2.0)));
  std::array<std::vector<double>, kMaxDim> hx, hy;
  for (int ax = 0; ax < dim; ++ax) {
    hx[std::size_t(ax)] = hermite_all_1d(top, x[ax]);
    hy[std::size_t(ax)] = hermite_all_1d(top, y[ax]);
  }
  KahanSum re_full, im_full, re_half, im_half;
  auto accumulate = [&](const MultiIndex& xi) {
    double lam = xi.eigenvalue();
    double w = taper_cut(lam, eig_cut);
    double wh = diagnostic ? taper_cut(lam, 0.5 * eig_cut) : 0.0;
    if (w == 0.0 && wh == 0.0) return;
    double hh = 1;
    for (int ax = 0; ax < dim; ++ax)
      hh *= hx[std::size_t(ax)][std::size_t(xi[ax])] * hy[std::size_t(ax)][std::size_t(xi[ax])];
    C v = sigma.eval(x, xi) * hh;
    re_full.add(w * v.real());
    im_full.add(w * v.imag());
    if (diagnostic) {
      re_half.add(wh * v.real());
      im_half.add(wh * v.imag());
    }
  };
  if (dim == 1) {
    for (int k = 0; k <= top; ++k) accumulate(MultiIndex{k});
  } else {
    for (const auto& xi : indices_with_order_between(dim, 0, top)) accumulate(xi);
  }
  C full(re_full.value(), im_full.value());
  if (diagnostic) *diagnostic = std::abs(full - C(re_half.value(), im_half.value()));
  return full;
}

C pseudo_kernel(const PseudoSymbol& sigma, const Point& x, const Point& y, int K,
                double* diagnostic) {
  return pseudo_kernel_cut(sigma, x, y, 2.0 * K + x.dim(), diagnostic);
}

C pseudo_kernel_piece(const PseudoSymbol& sigma, const AdmissibleSystem& sys, int j,
                      const Point& x, const Point& y) {
  const int dim = x.dim();
  BlockRange r = dyadic_block_range(j, dim);
  if (r.hi < r.lo) return C(0, 0);
  std::array<std::vector<double>, kMaxDim> hx, hy;
  for (int ax = 0; ax < dim; ++ax) {
    hx[std::size_t(ax)] = hermite_all_1d(r.hi, x[ax]);
    hy[std::size_t(ax)] = hermite_all_1d(r.hi, y[ax]);
  }
  KahanSum re, im;
  for (const auto& xi : indices_with_order_between(dim, r.lo, r.hi)) {
    double w = sys.phi_j(j, std::sqrt(xi.eigenvalue()));
    if (w == 0.0) continue;
    double hh = w;
    for (int ax = 0; ax < dim; ++ax)
      hh *= hx[std::size_t(ax)][std::size_t(xi[ax])] * hy[std::size_t(ax)][std::size_t(xi[ax])];
    C v = sigma.eval(x, xi) * hh;
    re.add(v.real());
    im.add(v.imag());
  }
  return C(re.value(), im.value());
}

namespace {

// d^g of h_k at a coordinate, using tables up to degree kmax+g
double basis_deriv_1d(int k, int g, const std::vector<double>& table) {
  if (g == 0) return table[std::size_t(k)];
  SparseCoef d = SparseCoef::unit(MultiIndex{k});
  for (int r = 0; r < g; ++r) d = d.derivative(0);
  double v = 0;
  for (const auto& [xi, c] : d.terms()) v += c * table[std::size_t(xi[0])];
  return v;
}

template <typename Weight>
C pseudo_deriv_sum(const PseudoSymbol& sigma, const MultiIndex& gamma, const MultiIndex& eta,
                   const Point& x, const Point& y, int top_degree, Weight&& weight) {
  const int dim = x.dim();
  std::array<std::vector<double>, kMaxDim> hx, hy;
  for (int ax = 0; ax < dim; ++ax) {
    hx[std::size_t(ax)] = hermite_all_1d(top_degree + gamma[ax], x[ax]);
    hy[std::size_t(ax)] = hermite_all_1d(top_degree + eta[ax], y[ax]);
  }
  // Leibniz in x between sigma(x, xi) and h_xi(x)
  std::vector<MultiIndex> nus;
  {
    std::vector<MultiIndex> all = indices_with_order_between(dim, 0, gamma.order());
    for (const auto& nu : all) {
      bool ok = true;
      for (int ax = 0; ax < dim; ++ax) ok = ok && nu[ax] <= gamma[ax];
      if (ok) nus.push_back(nu);
    }
  }
  auto binom = [](int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  KahanSum re, im;
  for (const auto& xi : indices_with_order_between(dim, 0, top_degree)) {
    double w = weight(xi);
    if (w == 0.0) continue;
    double hy_val = w;
    for (int ax = 0; ax < dim; ++ax)
      hy_val *= basis_deriv_1d(xi[ax], eta[ax], hy[std::size_t(ax)]);
    if (hy_val == 0.0) continue;
    for (const auto& nu : nus) {
      double coef = 1;
      for (int ax = 0; ax < dim; ++ax) coef *= binom(gamma[ax], nu[ax]);
      double hx_val = 1;
      for (int ax = 0; ax < dim; ++ax)
        hx_val *= basis_deriv_1d(xi[ax], gamma[ax] - nu[ax], hx[std::size_t(ax)]);
      C v = sigma.dx(nu, x, xi) * (coef * hx_val * hy_val);
      re.add(v.real());
      im.add(v.imag());
    }
  }
  return C(re.value(), im.value());
}

}  // namespace

C pseudo_kernel_deriv(const PseudoSymbol& sigma, const MultiIndex& gamma, const MultiIndex& eta,
                      const Point& x, const Point& y, int K) {
  return pseudo_deriv_sum(sigma, gamma, eta, x, y, K, [&](const MultiIndex& xi) {
    return kernel_taper_weight(xi.eigenvalue(), K, x.dim());
  });
}

C pseudo_kernel_piece_deriv(const PseudoSymbol& sigma, const AdmissibleSystem& sys, int j,
                            const MultiIndex& gamma, const MultiIndex& eta, const Point& x,
                            const Point& y) {
  BlockRange r = dyadic_block_range(j, x.dim());
  if (r.hi < r.lo) return C(0, 0);
  return pseudo_deriv_sum(sigma, gamma, eta, x, y, r.hi, [&](const MultiIndex& xi) {
    return xi.order() >= r.lo ? sys.phi_j(j, std::sqrt(xi.eigenvalue())) : 0.0;
  });
}

KernelEvaluator pseudo_kernel_evaluator(const PseudoSymbol& sigma, int K) {
  KernelEvaluator ev;
  ev.name = "pseudo(" + sigma.name + ")";
  ev.dim = 1;
  ev.truncation = K;
  ev.max_dx = 2;
  ev.max_dy = 2;
  ev.value = [sigma, K](const Point& x, const Point& y) { return pseudo_kernel(sigma, x, y, K); };
  ev.deriv = [sigma, K](const MultiIndex& gamma, const MultiIndex& eta, const Point& x,
                        const Point& y) {
    return pseudo_kernel_deriv(sigma, gamma, eta, x, y, K);
  };
  ev.l2_norm = [sigma, K]() {
    return pseudo_l2_norm_estimate(sigma, 1, std::min(K, 128));
  };
  return ev;
}

double pseudo_l2_norm_estimate(const PseudoSymbol& sigma, int dim, int K) {
  if (sigma.x_independent) {
    double worst = 0;
    for (const auto& xi : indices_with_order_between(dim, 0, std::max(K, 4000)))
      worst = std::max(worst, std::abs(sigma.eval(Point(dim, 0.0), xi)));
    return worst;
  }
  BasisSpec basis(dim, K);
  auto grid = transform_grid(dim, K);
  const std::size_t n = basis.count(), npts = grid->size();
  Eigen::MatrixXd H(npts, n);  // basis values at quadrature points
  for (std::size_t p = 0; p < npts; ++p) {
    const Point& xp = grid->point(p);
    std::array<std::vector<double>, kMaxDim> h1;
    for (int ax = 0; ax < dim; ++ax) h1[std::size_t(ax)] = hermite_all_1d(K, xp[ax]);
    for (std::size_t k = 0; k < n; ++k) {
      const MultiIndex& xi = basis.at(k);
      double v = 1;
      for (int ax = 0; ax < dim; ++ax) v *= h1[std::size_t(ax)][std::size_t(xi[ax])];
      H(long(p), long(k)) = v;
    }
  }
  Eigen::MatrixXcd T(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const MultiIndex& xi = basis.at(col);
    Eigen::VectorXcd f(npts);
    for (std::size_t p = 0; p < npts; ++p)
      f(long(p)) = sigma.eval(grid->point(p), xi) * (H(long(p), long(col)) * grid->weight(p));
    T.col(long(col)) = H.transpose().cast<C>() * f;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(T);
  return svd.singularValues()(0);
}

}  // namespace hak
