#include <cmath>
#include <random>

#include "hak/hermite.hpp"
#include "hak/verify.hpp"

namespace hak {

void PairExpansion::add(const MultiIndex& xi, const MultiIndex& eta, double c) {
  if (c == 0.0) return;
  auto key = std::make_pair(xi, eta);
  auto [it, fresh] = terms_.emplace(key, c);
  if (!fresh) it->second += c;
}

PairExpansion PairExpansion::basis_term(const MultiIndex& xi, const MultiIndex& eta) {
  PairExpansion p;
  p.add(xi, eta, 1.0);
  return p;
}

PairExpansion PairExpansion::ladder(Side side, Ladder kind, int axis) const {
  PairExpansion out;
  for (const auto& [key, c] : terms_) {
    const MultiIndex& idx = side == Side::x ? key.first : key.second;
    if (kind == Ladder::creation) {
      MultiIndex shifted = idx.shifted(axis, +1);
      double f = std::sqrt(2.0 * idx[axis] + 2.0);
      if (side == Side::x)
        out.add(shifted, key.second, f * c);
      else
        out.add(key.first, shifted, f * c);
    } else {
      if (idx[axis] == 0) continue;
      MultiIndex shifted = idx.shifted(axis, -1);
      double f = std::sqrt(2.0 * idx[axis]);
      if (side == Side::x)
        out.add(shifted, key.second, f * c);
      else
        out.add(key.first, shifted, f * c);
    }
  }
  return out;
}

PairExpansion PairExpansion::position(Side side, int axis) const {
  return ladder(side, Ladder::creation, axis)
      .plus(ladder(side, Ladder::annihilation, axis))
      .scaled(0.5);
}

PairExpansion PairExpansion::scaled(double c) const {
  PairExpansion out;
  for (const auto& [key, v] : terms_) out.add(key.first, key.second, v * c);
  return out;
}

PairExpansion PairExpansion::plus(const PairExpansion& o) const {
  PairExpansion out = *this;
  for (const auto& [key, v] : o.terms_) out.add(key.first, key.second, v);
  return out;
}

PairExpansion PairExpansion::minus(const PairExpansion& o) const {
  PairExpansion out = *this;
  for (const auto& [key, v] : o.terms_) out.add(key.first, key.second, -v);
  return out;
}

PairExpansion PairExpansion::ladder_diff_pow(int axis, int m) const {
  PairExpansion cur = *this;
  for (int r = 0; r < m; ++r)
    cur = cur.ladder(Side::y, Ladder::creation, axis).minus(
        cur.ladder(Side::x, Ladder::creation, axis));
  return cur;
}

PairExpansion PairExpansion::letter_diff_pow(int axis, int m, Ladder letter) const {
  PairExpansion cur = *this;
  for (int r = 0; r < m; ++r)
    cur = cur.ladder(Side::x, letter, axis).minus(cur.ladder(Side::y, letter, axis));
  return cur;
}

double PairExpansion::eval(const Point& x, const Point& y) const {
  if (terms_.empty()) return 0.0;
  int maxdeg = 0;
  for (const auto& [key, v] : terms_)
    maxdeg = std::max({maxdeg, key.first.order(), key.second.order()});
  std::array<std::vector<double>, kMaxDim> hx, hy;
  for (int ax = 0; ax < x.dim(); ++ax) {
    hx[std::size_t(ax)] = hermite_all_1d(maxdeg, x[ax]);
    hy[std::size_t(ax)] = hermite_all_1d(maxdeg, y[ax]);
  }
  KahanSum s;
  for (const auto& [key, c] : terms_) {
    double v = c;
    for (int ax = 0; ax < x.dim(); ++ax)
      v *= hx[std::size_t(ax)][std::size_t(key.first[ax])] *
           hy[std::size_t(ax)][std::size_t(key.second[ax])];
    s.add(v);
  }
  return s.value();
}

double SmoothFn::eval(const Point& x) const {
  double s = 0;
  for (const auto& [g, c] : coef) {
    double v = c;
    for (int ax = 0; ax < g.dim(); ++ax)
      for (int r = 0; r < g[ax]; ++r) v *= x[ax];
    s += v;
  }
  if (gaussian) s *= std::exp(-0.5 * x.norm2());
  return s;
}

SmoothFn SmoothFn::derivative(int axis) const {
  SmoothFn out;
  out.gaussian = gaussian;
  for (const auto& [g, c] : coef) {
    if (g[axis] > 0) {
      auto [it, fresh] = out.coef.emplace(g.shifted(axis, -1), g[axis] * c);
      if (!fresh) it->second += g[axis] * c;
    }
    if (gaussian) {
      auto [it, fresh] = out.coef.emplace(g.shifted(axis, +1), -c);
      if (!fresh) it->second += -c;
    }
  }
  return out;
}

SmoothFn SmoothFn::derivative(const MultiIndex& nu) const {
  SmoothFn out = *this;
  for (int ax = 0; ax < nu.dim(); ++ax)
    for (int r = 0; r < nu[ax]; ++r) out = out.derivative(ax);
  return out;
}

SmoothFn SmoothFn::monomial(const MultiIndex& power, bool gaussian) {
  SmoothFn f;
  f.gaussian = gaussian;
  f.coef[power] = 1.0;
  return f;
}

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double double_factorial_odd(int m) {
  // (2m-1)!! with the empty-product convention at m <= 0
  double r = 1;
  for (int v = 2 * m - 1; v >= 1; v -= 2) r *= v;
  return r;
}

double forward_diff(const std::function<double(const MultiIndex&)>& f, int axis, int ell,
                    const MultiIndex& xi) {
  double s = 0;
  for (int r = 0; r <= ell; ++r) {
    double sign = ((ell - r) % 2 == 0) ? 1.0 : -1.0;
    s += sign * binom(ell, r) * f(xi.shifted(axis, r));
  }
  return s;
}

}  // namespace

double check_displacement_identity(int dim, int axis, int N,
                                   const std::function<double(const MultiIndex&)>& symbol,
                                   int support_order_hi,
                                   const std::vector<std::pair<Point, Point>>& samples) {
  if (N == 0) return 0.0;  // degenerate: both sides are K itself
  // RHS assembled exactly in pair-expansion space
  PairExpansion rhs;
  bool rhs_empty = true;
  for (int ell = (N + 1) / 2; ell <= N; ++ell) {
    double c = std::pow(-4.0, N - ell) * double_factorial_odd(N - ell) * binom(N, 2 * ell - N);
    for (const auto& xi : indices_with_order_between(dim, 0, support_order_hi + ell)) {
      double dk = forward_diff(symbol, axis, ell, xi);
      if (dk == 0.0) continue;
      PairExpansion term =
          PairExpansion::basis_term(xi, xi).ladder_diff_pow(axis, 2 * ell - N).scaled(c * dk);
      rhs = rhs_empty ? term : rhs.plus(term);
      rhs_empty = false;
    }
  }
  // LHS: 2^N (x_i - y_i)^N K with K summed directly
  auto kernel_val = [&](const Point& x, const Point& y) {
    PairExpansion K;
    bool empty = true;
    for (const auto& xi : indices_with_order_between(dim, 0, support_order_hi)) {
      double kv = symbol(xi);
      if (kv == 0.0) continue;
      PairExpansion t = PairExpansion::basis_term(xi, xi).scaled(kv);
      K = empty ? t : K.plus(t);
      empty = false;
    }
    return empty ? 0.0 : K.eval(x, y);
  };
  double worst = 0;
  for (const auto& [x, y] : samples) {
    double lhs = std::pow(2.0 * (x[axis] - y[axis]), N) * kernel_val(x, y);
    double r = rhs_empty ? 0.0 : rhs.eval(x, y);
    worst = std::max(worst, std::abs(lhs - r));
  }
  return worst;
}

double check_commutation_moving_letter([[maybe_unused]] int dim, int axis, int M, int N, Ladder letter,
                                       const MultiIndex& xi, const MultiIndex& eta,
                                       const std::vector<std::pair<Point, Point>>& samples) {
  // x_i^M (A_i^{(x)} - A_i^{(y)})^N
  //   = sum_k c_{A,k} binom(M,k) N!/(N-k)! (A^{(x)}-A^{(y)})^{N-k} x_i^{M-k}
  const double sign = letter == Ladder::annihilation ? -1.0 : 1.0;
  PairExpansion seed = PairExpansion::basis_term(xi, eta);

  PairExpansion lhs = seed.letter_diff_pow(axis, N, letter);
  for (int r = 0; r < M; ++r) lhs = lhs.position(PairExpansion::Side::x, axis);

  PairExpansion rhs;
  bool empty = true;
  for (int k = 0; k <= std::min(M, N); ++k) {
    double fall = 1;  // N!/(N-k)!
    for (int r = 0; r < k; ++r) fall *= N - r;
    double c = std::pow(sign, k) * binom(M, k) * fall;
    PairExpansion term = seed;
    for (int r = 0; r < M - k; ++r) term = term.position(PairExpansion::Side::x, axis);
    term = term.letter_diff_pow(axis, N - k, letter).scaled(c);
    rhs = empty ? term : rhs.plus(term);
    empty = false;
  }
  double worst = 0;
  for (const auto& [x, y] : samples)
    worst = std::max(worst, std::abs(lhs.eval(x, y) - rhs.eval(x, y)));
  return worst;
}

double check_commutation_moving_difference(int dim, int axis, int M, int N, Ladder letter,
                                           const MultiIndex& xi, const MultiIndex& eta,
                                           const std::vector<std::pair<Point, Point>>& samples) {
  // (x_i-y_i)^N (A_i^{(x)})^M
  //   = sum_k c_{A,k} binom(M,k) N!/(N-k)! (A_i^{(x)})^{M-k} (x_i-y_i)^{N-k}
  (void)dim;
  const double sign = letter == Ladder::annihilation ? -1.0 : 1.0;
  PairExpansion seed = PairExpansion::basis_term(xi, eta);
  auto xy_diff_pow = [&](PairExpansion p, int m) {
    for (int r = 0; r < m; ++r)
      p = p.position(PairExpansion::Side::x, axis).minus(p.position(PairExpansion::Side::y, axis));
    return p;
  };
  auto letter_pow_x = [&](PairExpansion p, int m) {
    for (int r = 0; r < m; ++r) p = p.ladder(PairExpansion::Side::x, letter, axis);
    return p;
  };

  PairExpansion lhs = xy_diff_pow(letter_pow_x(seed, M), N);

  PairExpansion rhs;
  bool empty = true;
  for (int k = 0; k <= std::min(M, N); ++k) {
    double fall = 1;
    for (int r = 0; r < k; ++r) fall *= N - r;
    double c = std::pow(sign, k) * binom(M, k) * fall;
    PairExpansion term = letter_pow_x(xy_diff_pow(seed, N - k), M - k).scaled(c);
    rhs = empty ? term : rhs.plus(term);
    empty = false;
  }
  double worst = 0;
  for (const auto& [x, y] : samples)
    worst = std::max(worst, std::abs(lhs.eval(x, y) - rhs.eval(x, y)));
  return worst;
}

double check_discrete_leibniz(int ell, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int span = 24;
  std::vector<double> f(span + ell + 1), g(span + ell + 1);
  for (auto& v : f) v = u(rng);
  for (auto& v : g) v = u(rng);
  auto diff = [](const std::vector<double>& a, int order, int i) {
    double s = 0;
    for (int r = 0; r <= order; ++r) {
      double sign = ((order - r) % 2 == 0) ? 1.0 : -1.0;
      double b = 1;
      for (int t = 1; t <= r; ++t) b = b * (order - r + t) / t;
      s += sign * b * a[std::size_t(i + r)];
    }
    return s;
  };
  std::vector<double> fg(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fg[i] = f[i] * g[i];
  double worst = 0;
  for (int i = 0; i + ell < span; ++i) {
    double lhs = diff(fg, ell, i);
    double rhs = 0;
    for (int r = 0; r <= ell; ++r) {
      double b = 1;
      for (int t = 1; t <= r; ++t) b = b * (ell - r + t) / t;
      rhs += b * diff(f, r, i) * diff(g, ell - r, i + r);
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {

// normal-ordered expansion of (-(d/dx) + x)^a on one axis: map (m,k) -> coef
// for x^m d^k
std::map<std::pair<int, int>, double> creation_power_normal_order(int a) {
  std::map<std::pair<int, int>, double> op;
  op[{0, 0}] = 1.0;
  for (int r = 0; r < a; ++r) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [mk, c] : op) {
      auto [m, k] = mk;
      next[{m + 1, k}] += c;          // x * x^m d^k
      if (m > 0) next[{m - 1, k}] -= c * m;  // -d(x^m) d^k, chain part
      next[{m, k + 1}] -= c;          // -x^m d^{k+1}
    }
    op = std::move(next);
  }
  return op;
}

}  // namespace

double check_ladder_leibniz(const SmoothFn& f, const MultiIndex& g_index, const MultiIndex& alpha,
                            const std::vector<Point>& samples) {
  const int dim = alpha.dim();
  SparseCoef g0 = SparseCoef::unit(g_index);

  // derivative caches
  std::map<MultiIndex, SmoothFn, std::less<MultiIndex>> f_derivs;
  std::map<MultiIndex, SparseCoef, std::less<MultiIndex>> g_derivs;
  int max_order = alpha.order();
  for (const auto& nu : indices_with_order_between(dim, 0, max_order)) {
    f_derivs.emplace(nu, f.derivative(nu));
    g_derivs.emplace(nu, g0.derivative(nu));
  }

  // per-axis normal-ordered operators, combined across axes (they commute)
  std::array<std::map<std::pair<int, int>, double>, kMaxDim> axis_ops;
  for (int ax = 0; ax < dim; ++ax) axis_ops[std::size_t(ax)] = creation_power_normal_order(alpha[ax]);

  auto binom_m = [](const MultiIndex& n, const MultiIndex& k) {
    double r = 1;
    for (int ax = 0; ax < n.dim(); ++ax) {
      double b = 1;
      for (int t = 1; t <= k[ax]; ++t) b = b * (n[ax] - k[ax] + t) / t;
      if (k[ax] > n[ax]) b = 0;
      r *= b;
    }
    return r;
  };

  double worst = 0;
  for (const Point& x : samples) {
    // LHS: sum over the tensor normal-ordered terms of x^m d^k (fg)
    double lhs = 0;
    std::function<void(int, MultiIndex, MultiIndex, double)> recurse =
        [&](int ax, MultiIndex m_acc, MultiIndex k_acc, double c_acc) {
          if (ax == dim) {
            double xm = 1;
            for (int a2 = 0; a2 < dim; ++a2)
              for (int r = 0; r < m_acc[a2]; ++r) xm *= x[a2];
            // d^{k}(fg) = sum_{r <= k} binom(k,r) f^{(r)} g^{(k-r)}
            double dk = 0;
            for (const auto& nu : indices_with_order_between(dim, 0, k_acc.order())) {
              bool ok = true;
              for (int a2 = 0; a2 < dim; ++a2) ok = ok && nu[a2] <= k_acc[a2];
              if (!ok) continue;
              MultiIndex rest(dim, 0);
              for (int a2 = 0; a2 < dim; ++a2)
                for (int r = 0; r < k_acc[a2] - nu[a2]; ++r) rest = rest.shifted(a2, 1);
              dk += binom_m(k_acc, nu) * f_derivs.at(nu).eval(x) * g_derivs.at(rest).eval(x);
            }
            lhs += c_acc * xm * dk;
            return;
          }
          for (const auto& [mk, c] : axis_ops[std::size_t(ax)]) {
            MultiIndex m2 = m_acc, k2 = k_acc;
            for (int r = 0; r < mk.first; ++r) m2 = m2.shifted(ax, 1);
            for (int r = 0; r < mk.second; ++r) k2 = k2.shifted(ax, 1);
            recurse(ax + 1, m2, k2, c_acc * c);
          }
        };
    recurse(0, MultiIndex(dim, 0), MultiIndex(dim, 0), 1.0);

    // RHS: sum_nu binom(alpha,nu) (-1)^{|nu|} d^nu f * (A^{alpha-nu} g)
    double rhs = 0;
    for (const auto& nu : indices_with_order_between(dim, 0, alpha.order())) {
      bool ok = true;
      for (int a2 = 0; a2 < dim; ++a2) ok = ok && nu[a2] <= alpha[a2];
      if (!ok) continue;
      double sign = nu.order() % 2 == 0 ? 1.0 : -1.0;
      SparseCoef ag = g0;
      for (int a2 = 0; a2 < dim; ++a2)
        for (int r = 0; r < alpha[a2] - nu[a2]; ++r) ag = ag.ladder(Ladder::creation, a2);
      rhs += binom_m(alpha, nu) * sign * f_derivs.at(nu).eval(x) * ag.eval(x);
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace hak
