#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "hak/admissible.hpp"
#include "hak/coef.hpp"
#include "hak/hermite.hpp"
#include "hak/kernels.hpp"
#include "hak/pseudo.hpp"
#include "hak/riesz.hpp"
#include "hak/symbols.hpp"

using namespace hak;

TEST_CASE("admissible system: support, window, telescoping") {
  AdmissibleSystem sys;
  // supp phi in [1/4, 1]
  CHECK(sys.phi(0.24) == 0.0);
  CHECK(sys.phi(1.01) == 0.0);
  CHECK(sys.phi(1.2) == 0.0);
  CHECK(sys.phi(0.3) > 0.0);
  // positive on the (corrected) lower-bound window [2^-7/4, 2^-1/4]
  for (double lam = std::pow(2.0, -1.75); lam <= std::pow(2.0, -0.25); lam += 0.01)
    CHECK(sys.phi(lam) > 0.0);
  // partition: sum_{j=0..5} phi_j(1) = 1
  double s = 0;
  for (int j = 0; j <= 5; ++j) s += sys.phi_j(j, 1.0);
  CHECK(std::abs(s - 1.0) < 1e-12);
  // partition residual over [1/2, 2^{J-1}]
  for (int J : {4, 10}) {
    for (double lam = 0.5; lam <= std::ldexp(1.0, J - 1); lam *= 1.07) {
      double ps = sys.partial_sum(J, lam);
      CHECK(std::abs(ps - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("dyadic blocks match the support of phi_j") {
  AdmissibleSystem sys;
  for (int dim : {1, 2}) {
    for (int j = 1; j <= 4; ++j) {
      BlockRange r = dyadic_block_range(j, dim);
      int scan_hi = int(std::pow(4.0, j)) + 2;
      for (int o = 0; o <= scan_hi; ++o) {
        MultiIndex xi = MultiIndex(dim, 0).shifted(0, o);
        double w = sys.phi_j(j, std::sqrt(xi.eigenvalue()));
        if (w != 0.0) CHECK(r.contains(o));
      }
    }
  }
  // n=1, j=1: the block is exactly {0, 1}
  BlockRange r1 = dyadic_block_range(1, 1);
  CHECK(r1.lo == 0);
  CHECK(r1.hi == 1);
}

TEST_CASE("multiplier composition zeroes far-separated dyadic cutoffs") {
  AdmissibleSystem sys;
  auto basis = make_basis(1, 80);
  std::mt19937_64 rng(3);
  CoefVec c = random_coefvec(basis, rng);
  for (int j = 0; j <= 3; ++j) {
    for (int k = j + 3; k <= j + 5; ++k) {
      CoefVec once = dyadic_multiplier_apply(sys, k, c);
      CoefVec twice = dyadic_multiplier_apply(sys, j, once);
      CHECK(twice.l2_norm() == 0.0);
    }
  }
  // negative dyadic range annihilates everything (spectral gap)
  for (int j = -4; j < 0; ++j)
    CHECK(dyadic_multiplier_apply(sys, j, c).l2_norm() == 0.0);
  // m == 1 multiplier is the identity
  CoefVec same = multiplier_apply([](double) { return 1.0; }, c);
  CHECK((same - c).l2_norm() == 0.0);
}

TEST_CASE("heat kernel: Mehler closed form vs eigen-series") {
  // n=1, t=0.5, x=y=0
  double v = heat_kernel_series(0.5, Point{0.0}, Point{0.0});
  CHECK(v == doctest::Approx(std::pow(2.0 * M_PI * std::sinh(1.0), -0.5)).epsilon(1e-10));
  CHECK(v == doctest::Approx(0.368016).epsilon(1e-5));

  for (double t : {0.1, 0.4, 1.0, 2.0}) {
    for (double x : {-2.5, 0.0, 1.0}) {
      for (double y : {-1.0, 0.5, 2.5}) {
        double series = heat_kernel_series(t, Point{x}, Point{y});
        double mehler = heat_kernel_mehler(t, Point{x}, Point{y});
        double scale = std::max(std::abs(mehler), 1e-6 * std::pow(2 * M_PI * std::sinh(2 * t), -0.5));
        CHECK(std::abs(series - mehler) / scale < 1e-8);
      }
    }
  }
  // 2-D product structure
  double v2 = heat_kernel_series(0.7, Point{0.3, -1.0}, Point{0.1, 0.4});
  double m2 = heat_kernel_mehler(0.7, Point{0.3, -1.0}, Point{0.1, 0.4});
  CHECK(v2 == doctest::Approx(m2).epsilon(1e-9));
}

TEST_CASE("heat kernel symmetry and semigroup eigenfunction property") {
  CHECK(heat_kernel_series(0.3, Point{1.2}, Point{-0.7}) ==
        doctest::Approx(heat_kernel_series(0.3, Point{-0.7}, Point{1.2})).epsilon(1e-13));
  // integral against h_k reproduces e^{-t lambda_k} h_k(x)
  auto grid = transform_grid(1, 24);
  for (int k : {0, 2, 7}) {
    double t = 0.35, x = 0.8;
    KahanSum s;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      double y = grid->point(i)[0];
      s.add(grid->weight(i) * heat_kernel_series(t, Point{x}, Point{y}) * hermite_eval_1d(k, y));
    }
    double want = std::exp(-t * (2 * k + 1)) * hermite_eval_1d(k, x);
    CHECK(s.value() == doctest::Approx(want).epsilon(1e-9));
  }
  CHECK_THROWS(heat_kernel_series(-0.1, Point{0.0}, Point{0.0}));
}

TEST_CASE("heat series truncation cap reports the needed degree") {
  HeatSeriesOptions opts;
  opts.degree_cap = 10;
  try {
    heat_kernel_series(0.01, Point{0.0}, Point{0.0}, opts);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("needed degree") != std::string::npos);
  }
}

TEST_CASE("projector kernel") {
  // trace of Q_3 in one dimension = 4
  auto grid = transform_grid(1, 16);
  KahanSum tr;
  for (std::size_t i = 0; i < grid->size(); ++i)
    tr.add(grid->weight(i) * projector_diag(3, grid->point(i)));
  CHECK(tr.value() == doctest::Approx(4.0).epsilon(1e-10));

  // idempotence as an integral operator on a band-limited input
  auto basis = make_basis(1, 6);
  std::mt19937_64 rng(11);
  CoefVec c = random_coefvec(basis, rng);
  GridFn f = synthesize(c, grid);
  const int N = 4;
  auto apply_Q = [&](const GridFn& in) {
    GridFn out(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) {
      KahanSum s;
      for (std::size_t j = 0; j < grid->size(); ++j)
        s.add(grid->weight(j) * projector_QN(N, grid->point(i), grid->point(j)) * in.values[j]);
      out.values[i] = s.value();
    }
    return out;
  };
  GridFn once = apply_Q(f);
  GridFn twice = apply_Q(once);
  CHECK((twice - once).l2_norm() < 1e-9);
}

TEST_CASE("pseudo-multiplier reductions") {
  auto basis = make_basis(1, 10);
  std::mt19937_64 rng(5);
  CoefVec c = random_coefvec(basis, rng);
  auto grid = Grid::uniform(1, -3.0, 3.0, 41);

  // sigma == 1 reduces to synthesis
  PseudoSymbol one = make_symbol("constant", {1.0}, 1);
  auto vals = pseudo_apply(one, c, grid);
  GridFn plain = synthesize(c, grid);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    CHECK(vals[i].imag() == 0.0);
    CHECK(vals[i].real() == doctest::Approx(plain.values[i]).epsilon(1e-12));
  }

  // sigma = lambda^{-1} reduces to apply_L(c, -1)
  PseudoSymbol inv = make_symbol("eig_power", {-1.0}, 1);
  auto vals2 = pseudo_apply(inv, c, grid);
  GridFn li = synthesize(apply_L(c, -1.0), grid);
  for (std::size_t i = 0; i < vals2.size(); ++i)
    CHECK(vals2[i].real() == doctest::Approx(li.values[i]).epsilon(1e-12));

  // sigma = e^{i x} acts as the multiplication operator
  PseudoSymbol osc = make_symbol("oscillating", {}, 1);
  auto vals3 = pseudo_apply(osc, c, grid);
  for (std::size_t i = 0; i < vals3.size(); ++i) {
    std::complex<double> want =
        std::exp(std::complex<double>(0, grid->point(i)[0])) * plain.values[i];
    CHECK(std::abs(vals3[i] - want) < 1e-12);
  }
}

TEST_CASE("pseudo kernel pieces: support and partition consistency") {
  AdmissibleSystem sys;
  PseudoSymbol one = make_symbol("constant", {1.0}, 1);
  Point x{0.6}, y{-0.4};

  // piece j uses only |xi| <= (1/2) 4^j
  for (int j = 1; j <= 3; ++j) {
    BlockRange r = dyadic_block_range(j, 1);
    CHECK(r.hi <= int(0.5 * std::pow(4.0, j)));
  }

  // block sums reproduce the spectral cut at 4^J exactly
  for (int J : {3, 5}) {
    std::complex<double> pieces = 0;
    for (int j = 0; j <= J; ++j) pieces += pseudo_kernel_piece(one, sys, j, x, y);
    std::complex<double> cut = pseudo_kernel_cut(one, x, y, std::pow(4.0, J));
    CHECK(std::abs(pieces - cut) < 1e-11);
  }

  // and converge off the diagonal as J grows (sigma == 1: towards the
  // smooth-tapered projection of the delta, i.e. partial sums stabilize)
  Point xf{2.0}, yf{-1.5};
  std::complex<double> p7 = 0;
  for (int j = 0; j <= 7; ++j) p7 += pseudo_kernel_piece(one, sys, j, xf, yf);
  std::complex<double> p9 = pseudo_kernel_cut(one, xf, yf, std::pow(4.0, 9));
  CHECK(std::abs(p7 - p9) < 1e-6);
}

TEST_CASE("pseudo kernel derivative consistency with finite differences") {
  PseudoSymbol horm = make_symbol("hormander", {0.0}, 1);
  Point x{0.9}, y{-0.6};
  int K = 64;
  double h = 1e-5;
  std::complex<double> fd =
      (pseudo_kernel(horm, Point{x[0] + h}, y, K) - pseudo_kernel(horm, Point{x[0] - h}, y, K)) /
      (2 * h);
  std::complex<double> an = pseudo_kernel_deriv(horm, MultiIndex{1}, MultiIndex{0}, x, y, K);
  CHECK(std::abs(fd - an) < 1e-6 * std::max(1.0, std::abs(an)));
  std::complex<double> fdy =
      (pseudo_kernel(horm, x, Point{y[0] + h}, K) - pseudo_kernel(horm, x, Point{y[0] - h}, K)) /
      (2 * h);
  std::complex<double> any = pseudo_kernel_deriv(horm, MultiIndex{0}, MultiIndex{1}, x, y, K);
  CHECK(std::abs(fdy - any) < 1e-6 * std::max(1.0, std::abs(any)));
}

TEST_CASE("symbol class checks") {
  // sigma_alpha = (2|xi|+n)^{-|alpha|/2} sits in S^{-|alpha|, inf, inf}_{1,0}
  for (int dim : {1, 2}) {
    PseudoSymbol riesz1 = make_symbol("riesz", {1.0}, dim);
    BoundReport rep = symbol_class_check(riesz1, dim);
    CHECK(rep.finite);
    CHECK(rep.pass);
  }
  // sigma == 1: differences of order >= 1 vanish
  PseudoSymbol one = make_symbol("constant", {1.0}, 1);
  CHECK(std::abs(symbol_forward_difference(one, MultiIndex{1}, Point{0.0}, MultiIndex{3})) == 0.0);
  CHECK(std::abs(symbol_forward_difference(one, MultiIndex{2}, Point{0.0}, MultiIndex{3})) == 0.0);
  BoundReport rep1 = symbol_class_check(one, 1);
  CHECK(rep1.pass);
  // hormander test symbol with analytic x-derivatives
  PseudoSymbol horm = make_symbol("hormander", {0.0}, 1);
  BoundReport rep2 = symbol_class_check(horm, 1);
  CHECK(rep2.pass);
  CHECK_THROWS(make_symbol("nope", {}, 1));
}

TEST_CASE("pseudo operator/kernel consistency on band-limited inputs") {
  // <sigma(x,L) f, g> = iint K(x,y) f(y) g(x) dy dx
  PseudoSymbol horm = make_symbol("hormander", {0.0}, 1);
  auto basis = make_basis(1, 8);
  std::mt19937_64 rng(17);
  CoefVec cf = random_coefvec(basis, rng);
  CoefVec cg = random_coefvec(basis, rng);
  auto grid = transform_grid(1, 24);
  GridFn f = synthesize(cf, grid);
  GridFn g = synthesize(cg, grid);
  auto Tf = pseudo_apply(horm, cf, grid);
  KahanSum lhs;
  for (std::size_t i = 0; i < grid->size(); ++i)
    lhs.add(grid->weight(i) * Tf[i].real() * g.values[i]);
  // kernel route: K = 48 taper comfortably covers degree-8 inputs
  KahanSum rhs;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    KahanSum inner;
    for (std::size_t j = 0; j < grid->size(); ++j)
      inner.add(grid->weight(j) *
                pseudo_kernel(horm, grid->point(i), grid->point(j), 48).real() * f.values[j]);
    rhs.add(grid->weight(i) * inner.value() * g.values[i]);
  }
  CHECK(std::abs(lhs.value() - rhs.value()) < 1e-8 * std::max(1.0, std::abs(lhs.value())));
}

TEST_CASE("L2 norm estimates") {
  PseudoSymbol one = make_symbol("constant", {1.0}, 1);
  CHECK(pseudo_l2_norm_estimate(one, 1, 8) == doctest::Approx(1.0));
  PseudoSymbol horm = make_symbol("hormander", {0.0}, 1);
  double nrm = pseudo_l2_norm_estimate(horm, 1, 24);
  CHECK(nrm > 0.9);
  CHECK(nrm < 1.6);  // |1 + sin(x)/2| <= 3/2
}

TEST_CASE("plain admissible mode: single bump, no partition claim") {
  AdmissibleSystem plain(AdmissibleMode::plain);
  CHECK(plain.phi(0.24) == 0.0);
  CHECK(plain.phi(1.0) == 0.0);
  for (double lam = std::pow(2.0, -1.75); lam <= std::pow(2.0, -0.25); lam += 0.02)
    CHECK(plain.phi(lam) > 0.0);
  // partial sums need not telescope to one
  double s = plain.partial_sum(6, 1.0);
  CHECK(std::isfinite(s));
}
