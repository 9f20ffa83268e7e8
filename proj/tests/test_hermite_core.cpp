#include <cmath>
#include <random>

#include "doctest.h"
#include "hak/admissible.hpp"
#include "hak/basis.hpp"
#include "hak/coef.hpp"
#include "hak/hermite.hpp"
#include "hak/quadrature.hpp"

using namespace hak;

namespace {

// independent closed forms for low degrees
double h0_exact(double t) { return std::pow(M_PI, -0.25) * std::exp(-0.5 * t * t); }
double h1_exact(double t) { return std::sqrt(2.0) * t * h0_exact(t); }

// complex-step derivative of h_k; independent of the ladder maps
double hermite_derivative_oracle(int k, double t) {
  const double h = 1e-150;
  return hermite_eval_1d(k, std::complex<double>(t, h)).imag() / h;
}

}  // namespace

TEST_CASE("hermite_eval_1d matches closed forms") {
  CHECK(hermite_eval_1d(0, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-12));
  CHECK(hermite_eval_1d(1, 1.0) ==
        doctest::Approx(std::sqrt(2.0) * std::pow(M_PI, -0.25) * std::exp(-0.5)).epsilon(1e-12));
  CHECK(hermite_eval_1d(1, 1.0) == doctest::Approx(0.6442883651).epsilon(1e-9));
  CHECK(hermite_eval_1d(5, 0.0) == 0.0);  // odd degree, parity
  for (double t : {-3.0, -0.7, 0.2, 1.9}) {
    CHECK(hermite_eval_1d(0, t) == doctest::Approx(h0_exact(t)).epsilon(1e-13));
    CHECK(hermite_eval_1d(1, t) == doctest::Approx(h1_exact(t)).epsilon(1e-13));
  }
}

TEST_CASE("recurrence survives deep underflow region") {
  // h_0(50) underflows; the scaled recurrence must still recover the
  // oscillatory regime at large k.
  double v = hermite_eval_1d(10000, 50.0);
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) > 1e-6);  // |t|=50 is inside the k=10^4 oscillatory region
  CHECK(std::abs(v) < 1.0);
  CHECK(hermite_eval_1d(10000, 0.0) != 0.0);
  CHECK(std::abs(hermite_eval_1d(4000, 30.0)) < 1.0);
}

TEST_CASE("sup |h_k| is non-increasing in k (within 5%)") {
  const int kmax = 120;
  std::vector<double> sup(kmax + 1, 0.0);
  for (double t = 0.0; t <= 18.0; t += 0.004) {
    auto h = hermite_all_1d(kmax, t);
    for (int k = 0; k <= kmax; ++k) sup[k] = std::max(sup[k], std::abs(h[k]));
  }
  for (int k = 5; k < kmax; ++k) CHECK(sup[k + 1] <= 1.05 * sup[k]);
  // matches the k^{-1/12} envelope scale
  CHECK(sup[100] < 0.816 * std::pow(100.0, -1.0 / 12.0) * 1.05);
}

TEST_CASE("hermite_eval_nd tensor factorization") {
  CHECK(hermite_eval_nd(MultiIndex{0, 0}, Point{0.0, 0.0}) ==
        doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));
  for (double y : {-2.0, 0.0, 1.3})
    CHECK(hermite_eval_nd(MultiIndex{1, 0}, Point{0.0, y}) == 0.0);
  double lhs = hermite_eval_nd(MultiIndex{2, 3}, Point{0.5, -1.2});
  double rhs = hermite_eval_1d(2, 0.5) * hermite_eval_1d(3, -1.2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
  CHECK_THROWS(hermite_eval_nd(MultiIndex{1, 2}, Point{0.0}));
}

TEST_CASE("gauss_hermite_rule basics") {
  auto r1 = gauss_hermite_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == 0.0);
  double h00 = hermite_eval_1d(0, 0.0);
  CHECK(r1.weights[0] * h00 * h00 == doctest::Approx(1.0).epsilon(1e-14));

  auto r = gauss_hermite_rule(64);
  for (double w : r.weights) CHECK(w > 0.0);
  // orthonormality oracle at (10,10) and (10,11)
  double s_diag = 0, s_off = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto h = hermite_all_1d(11, r.nodes[i]);
    s_diag += r.weights[i] * h[10] * h[10];
    s_off += r.weights[i] * h[10] * h[11];
  }
  CHECK(std::abs(s_diag - 1.0) < 1e-12);
  CHECK(std::abs(s_off) < 1e-12);
  CHECK(orthonormality_residual(r, 63) < 1e-12);
}

TEST_CASE("orthonormality at the acceptance scale") {
  auto r = gauss_hermite_rule(129);
  CHECK(orthonormality_residual(r, 64) < 1e-10);
}

TEST_CASE("BasisSpec enumeration round-trips") {
  for (int dim = 1; dim <= 3; ++dim) {
    BasisSpec b(dim, 7);
    // count = C(K+n, n)
    auto binom = [](int n, int k) {
      double r = 1;
      for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
      return std::llround(r);
    };
    CHECK(long(b.count()) == binom(7 + dim, dim));
    for (std::size_t i = 0; i < b.count(); ++i)
      CHECK(b.index_of(b.at(i)) == long(i));
    for (std::size_t i = 0; i + 1 < b.count(); ++i)
      CHECK(b.at(i) < b.at(i + 1));  // strict total order
  }
  BasisSpec b2(2, 5);
  CHECK(b2.index_of(MultiIndex{6, 0}) == -1);
}

TEST_CASE("transform/synthesize round trip") {
  auto basis = make_basis(1, 5);
  auto grid = transform_grid(1, 5);

  // basis-element round trip
  for (int k : {0, 3, 5}) {
    CoefVec c = CoefVec::unit(basis, MultiIndex{k});
    CoefVec back = transform(synthesize(c, grid), basis);
    CHECK((back - c).l2_norm() < 1e-10);
  }

  // h_3 sampled -> unit coefficient vector
  GridFn f = GridFn::sample(grid, [](const Point& x) { return hermite_eval_1d(3, x[0]); });
  CoefVec c3 = transform(f, basis);
  for (std::size_t i = 0; i < c3.values.size(); ++i) {
    double want = (c3.basis->at(i) == MultiIndex{3}) ? 1.0 : 0.0;
    CHECK(std::abs(c3.values[i] - want) < 1e-10);
  }
}

TEST_CASE("t^2 e^{-t^2/2} expands per the ladder calculus") {
  // f = pi^{1/4} x^2 h_0; expected coefficients from position_apply twice
  auto basis = make_basis(1, 4);
  auto grid = transform_grid(1, 4);
  GridFn f = GridFn::sample(grid, [](const Point& x) {
    return x[0] * x[0] * std::exp(-0.5 * x[0] * x[0]);
  });
  CoefVec got = transform(f, basis);

  CoefVec seed = CoefVec::unit(make_basis(1, 0), MultiIndex{0});
  CoefVec expect = scaled(position_apply(0, position_apply(0, seed)), std::pow(M_PI, 0.25));
  for (std::size_t i = 0; i < got.values.size(); ++i)
    CHECK(std::abs(got.values[i] - expect.at(got.basis->at(i))) < 1e-10);
  // explicit values: x^2 h_0 = h_2/sqrt(2) + h_0/2
  CHECK(expect.at(MultiIndex{2}) == doctest::Approx(std::pow(M_PI, 0.25) / std::sqrt(2.0)));
  CHECK(expect.at(MultiIndex{0}) == doctest::Approx(std::pow(M_PI, 0.25) * 0.5));
}

TEST_CASE("ladder_apply exact actions") {
  auto b0 = make_basis(1, 0);
  CoefVec h0 = CoefVec::unit(b0, MultiIndex{0});

  CoefVec up = ladder_apply(Ladder::creation, 0, h0);
  CHECK(up.at(MultiIndex{1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(up.at(MultiIndex{0}) == 0.0);

  CoefVec down = ladder_apply(Ladder::annihilation, 0, h0);
  CHECK(down.l2_norm() == 0.0);

  // (A A* + A* A)/2 = L on each basis element
  for (int k : {0, 1, 4, 9}) {
    auto wide = make_basis(1, k + 1);
    CoefVec hk = CoefVec::unit(make_basis(1, k), MultiIndex{k});
    CoefVec path1 = ladder_apply(Ladder::creation, 0, ladder_apply(Ladder::annihilation, 0, hk));
    CoefVec path2 = ladder_apply(Ladder::annihilation, 0, ladder_apply(Ladder::creation, 0, hk));
    CoefVec lhs = scaled(embed(path1, wide) + embed(path2, wide), 0.5);
    CHECK(lhs.at(MultiIndex{k}) == doctest::Approx(2.0 * k + 1.0).epsilon(1e-14));
  }
}

TEST_CASE("position and derivative on the ground state") {
  CoefVec h0 = CoefVec::unit(make_basis(1, 0), MultiIndex{0});
  CoefVec xh0 = position_apply(0, h0);
  CHECK(xh0.at(MultiIndex{1}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CoefVec dh0 = derivative_apply(0, h0);
  CHECK(dh0.at(MultiIndex{1}) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("monomial multiplication: support and growth of coefficients") {
  // x^beta h_xi lives on shifts xi+beta-2w, 0 <= w <= beta, with the
  // top-shift coefficient growing like xi^{beta/2}
  const int beta = 2;
  std::vector<double> top_ratio;
  for (int xi = 10; xi <= 60; xi += 10) {
    CoefVec c = CoefVec::unit(make_basis(1, xi), MultiIndex{xi});
    for (int r = 0; r < beta; ++r) c = position_apply(0, c);
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      int k = c.basis->at(i)[0];
      bool allowed = (k == xi + 2) || (k == xi) || (k == xi - 2);
      if (!allowed) CHECK(std::abs(c.values[i]) < 1e-14);
    }
    top_ratio.push_back(c.at(MultiIndex{xi + 2}) / xi);  // ~ xi^{beta/2} / xi
  }
  for (double r : top_ratio) {
    CHECK(r > 0.1);
    CHECK(r < 10.0);
  }
}

TEST_CASE("apply_L powers") {
  CoefVec c = CoefVec::unit(make_basis(2, 3), MultiIndex{1, 2});
  CHECK(apply_L(c, 1.0).at(MultiIndex{1, 2}) == doctest::Approx(8.0));
  CHECK((apply_L(c, 0.0) - c).l2_norm() == 0.0);
  CoefVec rt = apply_L(apply_L(c, -0.5), 0.5);
  CHECK((rt - c).l2_norm() < 1e-15);
}

TEST_CASE("critical radius") {
  CHECK(critical_radius(Point{0.0}) == 1.0);
  CHECK(critical_radius(Point{3.0, 4.0}) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  // comparability: |x-y| < rho(x) forces rho(y)/rho(x) in (1/2, 2)
  for (double x = -6.0; x <= 6.0; x += 0.37) {
    for (double d = -0.99; d <= 0.99; d += 0.23) {
      Point px{x};
      double rho = critical_radius(px);
      Point py{x + d * rho};
      if (critical_radius_comparable(px, py)) {
        double ratio = critical_radius(py) / rho;
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
      }
    }
  }
}

TEST_CASE("ladder identities hold as pointwise function identities") {
  // (-d/dt + t) h_k = sqrt(2k+2) h_{k+1} and (d/dt + t) h_k = sqrt(2k) h_{k-1},
  // derivative taken by complex step
  double worst_a = 0, worst_b = 0;
  for (int k = 0; k <= 40; ++k) {
    for (double t = -8.0; t <= 8.0; t += 0.37) {
      double d = hermite_derivative_oracle(k, t);
      double v = hermite_eval_1d(k, t);
      double lhs_a = -d + t * v;
      double rhs_a = std::sqrt(2.0 * k + 2.0) * hermite_eval_1d(k + 1, t);
      worst_a = std::max(worst_a, std::abs(lhs_a - rhs_a));
      double lhs_b = d + t * v;
      double rhs_b = k == 0 ? 0.0 : std::sqrt(2.0 * k) * hermite_eval_1d(k - 1, t);
      worst_b = std::max(worst_b, std::abs(lhs_b - rhs_b));
    }
  }
  CHECK(worst_a < 1e-11);
  CHECK(worst_b < 1e-11);
}

TEST_CASE("Parseval for random coefficients") {
  std::mt19937_64 rng(12345);
  for (int dim : {1, 2}) {
    int K = dim == 1 ? 30 : 12;
    auto basis = make_basis(dim, K);
    CoefVec c = random_coefvec(basis, rng);
    GridFn f = synthesize(c, transform_grid(dim, K));
    CHECK(std::abs(f.l2_norm() - c.l2_norm()) < 1e-10 * std::max(1.0, c.l2_norm()));
  }
}

TEST_CASE("eigenrelation via exact ladder derivatives") {
  // (-d^2/dx^2 + x^2) h_xi = (2|xi|+n) h_xi, second derivative by the exact
  // coefficient maps
  for (int k : {0, 3, 17, 40}) {
    CoefVec c = CoefVec::unit(make_basis(1, k), MultiIndex{k});
    CoefVec lap = derivative_apply(0, derivative_apply(0, c));
    CoefVec pos2 = position_apply(0, position_apply(0, c));
    CoefVec lhs = scaled(lap, -1.0) + pos2;
    CoefVec rhs_embedded(lhs.basis);
    rhs_embedded.set(MultiIndex{k}, 2.0 * k + 1.0);
    CHECK((lhs - rhs_embedded).l2_norm() < 1e-12 * (2.0 * k + 1.0));
  }
}

TEST_CASE("heat_apply semantics") {
  auto basis = make_basis(1, 6);
  std::mt19937_64 rng(7);
  CoefVec c = random_coefvec(basis, rng);
  CHECK_THROWS(heat_apply(0.0, c));
  CHECK_THROWS(heat_apply(-1.0, c));
  CoefVec ts = heat_apply(0.25, heat_apply(0.5, c));
  CoefVec direct = heat_apply(0.75, c);
  CHECK((ts - direct).l2_norm() < 1e-15 * c.l2_norm());
  // t -> 0+ limit
  CoefVec tiny = heat_apply(1e-8, c);
  double lam_max = basis->at(basis->count() - 1).eigenvalue();
  CHECK((tiny - c).l2_norm() <= 1e-6 * c.l2_norm() * lam_max);
  // single line: coefficient e^{-t lambda_0}
  CoefVec h0 = CoefVec::unit(make_basis(1, 0), MultiIndex{0});
  CHECK(heat_apply(0.5, h0).at(MultiIndex{0}) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
}
