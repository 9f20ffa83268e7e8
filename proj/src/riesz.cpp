#include "hak/riesz.hpp"

#include <cmath>
#include <sstream>

#include "hak/hermite.hpp"
#include "hak/sparse.hpp"

namespace hak {

LadderWord LadderWord::flipped() const {
  LadderWord w = *this;
  for (int i = 0; i < dim(); ++i)
    w.letters[std::size_t(i)] = letters[std::size_t(i)] == LadderLetter::creation
                                    ? LadderLetter::annihilation
                                    : LadderLetter::creation;
  return w;
}

double ladder_factor(const LadderWord& word, const MultiIndex& xi) {
  double f = 1;
  for (int i = 0; i < word.dim(); ++i) {
    int a = word.exponents[i];
    if (a == 0) continue;
    if (word.letters[std::size_t(i)] == LadderLetter::creation) {
      for (int r = 0; r < a; ++r) f *= std::sqrt(2.0 * (xi[i] + r) + 2.0);
    } else {
      if (xi[i] < a) return 0.0;
      for (int r = 0; r < a; ++r) f *= std::sqrt(2.0 * (xi[i] - r));
    }
  }
  return f;
}

MultiIndex word_shift(const LadderWord& word, const MultiIndex& xi, bool& ok) {
  MultiIndex out = xi;
  ok = true;
  for (int i = 0; i < word.dim(); ++i) {
    int s = word.signed_shift(i);
    if (s == 0) continue;
    bool axis_ok = true;
    out = out.shifted(i, s, axis_ok);
    ok = ok && axis_ok;
  }
  return out;
}

RieszOp first_order(int axis, LadderLetter letter, int dim) {
  RieszOp op;
  op.word.exponents = MultiIndex(dim, 0).shifted(axis, 1);
  op.word.letters.fill(LadderLetter::creation);
  op.word.letters[std::size_t(axis)] = letter;
  return op;
}

RieszOp make_riesz_op(const std::string& alpha_csv, const std::string& word_csv, int dim) {
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
  };
  auto alphas = split(alpha_csv);
  auto words = split(word_csv);
  if (int(alphas.size()) != dim)
    throw std::invalid_argument("--alpha needs " + std::to_string(dim) + " comma-separated entries");
  if (words.empty()) words.assign(std::size_t(dim), "A");
  if (int(words.size()) != dim)
    throw std::invalid_argument("--word needs " + std::to_string(dim) + " comma-separated entries");
  RieszOp op;
  MultiIndex e(dim, 0);
  for (int i = 0; i < dim; ++i) {
    int a = std::stoi(alphas[std::size_t(i)]);
    if (a < 0) throw std::invalid_argument("--alpha entries must be >= 0");
    for (int r = 0; r < a; ++r) e = e.shifted(i, 1);
  }
  op.word.exponents = e;
  op.word.letters.fill(LadderLetter::creation);
  for (int i = 0; i < dim; ++i) {
    const std::string& w = words[std::size_t(i)];
    if (w == "A")
      op.word.letters[std::size_t(i)] = LadderLetter::creation;
    else if (w == "AStar" || w == "A*")
      op.word.letters[std::size_t(i)] = LadderLetter::annihilation;
    else
      throw std::invalid_argument("--word entries must be A or AStar");
  }
  return op;
}

CoefVec riesz_apply(const RieszOp& op, const CoefVec& c) {
  const BasisSpec& b = *c.basis;
  int grow = 0;
  for (int i = 0; i < b.dim(); ++i) grow += std::max(op.word.signed_shift(i), 0);
  CoefVec out(make_basis(b.dim(), b.max_degree() + grow));
  for (std::size_t k = 0; k < b.count(); ++k) {
    double v = c.values[k];
    if (v == 0.0) continue;
    const MultiIndex& xi = b.at(k);
    double f = ladder_factor(op.word, xi);
    if (f == 0.0) continue;
    bool ok = true;
    MultiIndex eta = word_shift(op.word, xi, ok);
    if (!ok) continue;
    long j = out.basis->index_of(eta);
    out.values[std::size_t(j)] += op.symbol(xi) * f * v;
  }
  return out;
}

CoefVec riesz_adjoint_apply(const RieszOp& op, const CoefVec& c) {
  const BasisSpec& b = *c.basis;
  int grow = 0;
  for (int i = 0; i < b.dim(); ++i) grow += std::max(-op.word.signed_shift(i), 0);
  CoefVec out(make_basis(b.dim(), b.max_degree() + grow));
  for (std::size_t k = 0; k < out.basis->count(); ++k) {
    const MultiIndex& xi = out.basis->at(k);
    double f = ladder_factor(op.word, xi);
    if (f == 0.0) continue;
    bool ok = true;
    MultiIndex eta = word_shift(op.word, xi, ok);
    if (!ok) continue;
    out.values[k] = op.symbol(xi) * f * c.at(eta);
  }
  return out;
}

double riesz_diagonal_sup(const RieszOp& op, int max_order, int dim) {
  double worst = 0;
  if (dim == 1) {
    for (int k = 0; k <= max_order; ++k) {
      MultiIndex xi{k};
      worst = std::max(worst, std::abs(ladder_factor(op.word, xi) * op.symbol(xi)));
    }
    return worst;
  }
  for (const auto& xi : indices_with_order_between(dim, 0, max_order))
    worst = std::max(worst, std::abs(ladder_factor(op.word, xi) * op.symbol(xi)));
  return worst;
}

namespace {

inline double taper_cut(double eigenvalue, double eig_cut) {
  return smooth_cutoff(std::sqrt(eigenvalue / eig_cut));
}

}  // namespace

double riesz_kernel_cut(const RieszOp& op, const Point& x, const Point& y, double eig_cut,
                        double* diagnostic, Herm1DCache* cache) {
  const int dim = x.dim();
  const int pad = op.word.order();
  const int top = std::max(0, int(std::floor((eig_cut - dim) / 2.0)));
  std::array<std::vector<double>, kMaxDim> hx_own, hy_own;
  std::array<const std::vector<double>*, kMaxDim> hx{}, hy{};
  for (int ax = 0; ax < dim; ++ax) {
    if (cache && cache->kmax() >= top + pad) {
      hx[std::size_t(ax)] = &cache->get(x[ax]);
      hy[std::size_t(ax)] = &cache->get(y[ax]);
    } else {
      hx_own[std::size_t(ax)] = hermite_all_1d(top + pad, x[ax]);
      hy_own[std::size_t(ax)] = hermite_all_1d(top + pad, y[ax]);
      hx[std::size_t(ax)] = &hx_own[std::size_t(ax)];
      hy[std::size_t(ax)] = &hy_own[std::size_t(ax)];
    }
  }
  KahanSum full, half;
  auto accumulate = [&](const MultiIndex& xi) {
    double lam = xi.eigenvalue();
    double w = taper_cut(lam, eig_cut);
    double wh = diagnostic ? taper_cut(lam, 0.5 * eig_cut) : 0.0;
    if (w == 0.0 && wh == 0.0) return;
    double f = ladder_factor(op.word, xi);
    if (f == 0.0) return;
    bool ok = true;
    MultiIndex eta = word_shift(op.word, xi, ok);
    if (!ok) return;
    double term = op.symbol(xi) * f;
    for (int ax = 0; ax < dim; ++ax)
      term *= (*hx[std::size_t(ax)])[std::size_t(eta[ax])] *
              (*hy[std::size_t(ax)])[std::size_t(xi[ax])];
    full.add(w * term);
    if (diagnostic) half.add(wh * term);
  };
  if (dim == 1) {
    for (int k = 0; k <= top; ++k) accumulate(MultiIndex{k});
  } else {
    for (const auto& xi : indices_with_order_between(dim, 0, top)) accumulate(xi);
  }
  if (diagnostic) *diagnostic = std::abs(full.value() - half.value());
  return full.value();
}

double riesz_kernel(const RieszOp& op, const Point& x, const Point& y, int K,
                    double* diagnostic) {
  return riesz_kernel_cut(op, x, y, 2.0 * K + x.dim(), diagnostic);
}

double riesz_kernel_min_separation(int K) {
  // the taper resolves oscillations of wavelength ~ 1/sqrt(2K); refuse
  // separations the series cannot distinguish from the diagonal
  return 8.0 / std::sqrt(2.0 * K + 1.0);
}

double riesz_kernel_piece(const RieszOp& op, const AdmissibleSystem& sys, int j, const Point& x,
                          const Point& y) {
  const int dim = x.dim();
  BlockRange r = dyadic_block_range(j, dim);
  if (r.hi < r.lo) return 0.0;
  const int pad = op.word.order();
  std::array<std::vector<double>, kMaxDim> hx, hy;
  for (int ax = 0; ax < dim; ++ax) {
    hx[std::size_t(ax)] = hermite_all_1d(r.hi + pad, x[ax]);
    hy[std::size_t(ax)] = hermite_all_1d(r.hi + pad, y[ax]);
  }
  KahanSum s;
  for (const auto& xi : indices_with_order_between(dim, r.lo, r.hi)) {
    double w = sys.phi_j(j, std::sqrt(xi.eigenvalue()));
    if (w == 0.0) continue;
    double f = ladder_factor(op.word, xi);
    if (f == 0.0) continue;
    bool ok = true;
    MultiIndex eta = word_shift(op.word, xi, ok);
    if (!ok) continue;
    double term = w * op.symbol(xi) * f;
    for (int ax = 0; ax < dim; ++ax)
      term *= hx[std::size_t(ax)][std::size_t(eta[ax])] * hy[std::size_t(ax)][std::size_t(xi[ax])];
    s.add(term);
  }
  return s.value();
}

namespace {

double deriv_eval(const MultiIndex& base, const MultiIndex& order,
                  const std::array<const std::vector<double>*, kMaxDim>& tables) {
  if (order.order() == 0) {
    double v = 1;
    for (int ax = 0; ax < base.dim(); ++ax)
      v *= (*tables[std::size_t(ax)])[std::size_t(base[ax])];
    return v;
  }
  SparseCoef d = SparseCoef::unit(base).derivative(order);
  double v = 0;
  for (const auto& [nu, c] : d.terms()) {
    double t = c;
    for (int ax = 0; ax < base.dim(); ++ax) t *= (*tables[std::size_t(ax)])[std::size_t(nu[ax])];
    v += t;
  }
  return v;
}

template <typename Weight>
double riesz_deriv_sum(const RieszOp& op, const MultiIndex& gamma, const MultiIndex& eta_order,
                       const Point& x, const Point& y, int top, Weight&& weight,
                       Herm1DCache* cache = nullptr) {
  const int dim = x.dim();
  const int pad = op.word.order() + gamma.order() + eta_order.order();
  std::array<std::vector<double>, kMaxDim> hx_own, hy_own;
  std::array<const std::vector<double>*, kMaxDim> hx{}, hy{};
  for (int ax = 0; ax < dim; ++ax) {
    if (cache && cache->kmax() >= top + pad) {
      hx[std::size_t(ax)] = &cache->get(x[ax]);
      hy[std::size_t(ax)] = &cache->get(y[ax]);
    } else {
      hx_own[std::size_t(ax)] = hermite_all_1d(top + pad, x[ax]);
      hy_own[std::size_t(ax)] = hermite_all_1d(top + pad, y[ax]);
      hx[std::size_t(ax)] = &hx_own[std::size_t(ax)];
      hy[std::size_t(ax)] = &hy_own[std::size_t(ax)];
    }
  }
  KahanSum s;
  for (const auto& xi : indices_with_order_between(dim, 0, top)) {
    double w = weight(xi);
    if (w == 0.0) continue;
    double f = ladder_factor(op.word, xi);
    if (f == 0.0) continue;
    bool ok = true;
    MultiIndex shifted = word_shift(op.word, xi, ok);
    if (!ok) continue;
    double term = w * op.symbol(xi) * f * deriv_eval(shifted, gamma, hx) *
                  deriv_eval(xi, eta_order, hy);
    s.add(term);
  }
  return s.value();
}

}  // namespace

double riesz_kernel_deriv(const RieszOp& op, const MultiIndex& gamma, const MultiIndex& eta,
                          const Point& x, const Point& y, int K, Herm1DCache* cache) {
  const double cut = 2.0 * K + x.dim();
  return riesz_deriv_sum(op, gamma, eta, x, y, K,
                         [&](const MultiIndex& xi) { return taper_cut(xi.eigenvalue(), cut); },
                         cache);
}

double riesz_kernel_piece_deriv(const RieszOp& op, const AdmissibleSystem& sys, int j,
                                const MultiIndex& gamma, const MultiIndex& eta, const Point& x,
                                const Point& y) {
  BlockRange r = dyadic_block_range(j, x.dim());
  if (r.hi < r.lo) return 0.0;
  return riesz_deriv_sum(op, gamma, eta, x, y, r.hi, [&](const MultiIndex& xi) {
    return xi.order() >= r.lo ? sys.phi_j(j, std::sqrt(xi.eigenvalue())) : 0.0;
  });
}

KernelEvaluator riesz_kernel_evaluator(const RieszOp& op, int K) {
  KernelEvaluator ev;
  ev.name = "riesz(order=" + std::to_string(op.word.order()) + ")";
  ev.dim = op.word.dim();
  ev.truncation = K;
  ev.max_dx = 2;
  ev.max_dy = 2;
  auto cache = std::make_shared<Herm1DCache>(K + op.word.order() + 8);
  ev.value = [op, K, cache](const Point& x, const Point& y) {
    return std::complex<double>(
        riesz_kernel_cut(op, x, y, 2.0 * K + x.dim(), nullptr, cache.get()), 0.0);
  };
  ev.deriv = [op, K, cache](const MultiIndex& gamma, const MultiIndex& eta, const Point& x,
                            const Point& y) {
    return std::complex<double>(riesz_kernel_deriv(op, gamma, eta, x, y, K, cache.get()), 0.0);
  };
  ev.l2_norm = [op]() { return riesz_diagonal_sup(op, 4000, op.word.dim()); };
  return ev;
}

CoefOperator riesz_operator(const RieszOp& op, int dim) {
  CoefOperator T;
  T.name = "riesz";
  T.apply = [op](const CoefVec& c) { return riesz_apply(op, c); };
  T.adjoint_apply = [op](const CoefVec& c) { return riesz_adjoint_apply(op, c); };
  T.l2_norm = [op, dim]() { return riesz_diagonal_sup(op, 4000, dim); };
  return T;
}

CoefOperator identity_operator() {
  CoefOperator T;
  T.name = "identity";
  T.apply = [](const CoefVec& c) { return c; };
  T.adjoint_apply = [](const CoefVec& c) { return c; };
  T.l2_norm = []() { return 1.0; };
  return T;
}

CoefOperator heat_operator(double t) {
  CoefOperator T;
  T.name = "heat(t=" + format_double(t) + ")";
  T.apply = [t](const CoefVec& c) { return heat_apply(t, c); };
  T.adjoint_apply = [t](const CoefVec& c) { return heat_apply(t, c); };
  T.l2_norm = [t]() { return std::exp(-t); };
  return T;
}

}  // namespace hak
