#include <cmath>
#include <random>

#include "doctest.h"
#include "hak/cancellation.hpp"
#include "hak/decompose.hpp"
#include "hak/hermite.hpp"
#include "hak/norms.hpp"
#include "hak/spaces.hpp"

using namespace hak;

TEST_CASE("ball regimes and annuli") {
  Point c{2.0};  // rho = 1/3
  CHECK(Ball{c, 0.04}.regime() == BallRegime::small);
  CHECK(Ball{c, 0.1}.regime() == BallRegime::medium);
  CHECK(Ball{c, 0.2}.regime() == BallRegime::oversized);
  Ball b{c, 0.05};
  CHECK(b.annulus_of(Point{2.01}) == 0);
  CHECK(b.annulus_of(Point{2.07}) == 1);
  CHECK(b.annulus_of(Point{2.15}) == 2);
  CHECK(b.volume() == doctest::Approx(0.1));
}

TEST_CASE("bump: plateau, support, scaled derivative bounds") {
  for (double c0 : {0.0, 2.0, 8.0}) {
    Point x0{c0};
    double rho = critical_radius(x0);
    CHECK(bump_value(x0, x0) == 1.0);
    CHECK(bump_value(x0, Point{c0 + 0.99 * rho}) == 1.0);
    CHECK(bump_value(x0, Point{c0 + 2.0 * rho}) == 0.0);
    CHECK(bump_value(x0, Point{c0 + 2.5 * rho}) == 0.0);
    // g_{x0,0} = chi
    CHECK(moment_bump_value(x0, MultiIndex{0}, Point{c0 + 1.3 * rho}) ==
          bump_value(x0, Point{c0 + 1.3 * rho}));
  }
  // finite-difference sup of |d^g chi| scales like rho^{-g}
  for (int g = 1; g <= 2; ++g) {
    std::vector<double> scaled;
    for (double c0 : {0.0, 2.0, 8.0}) {
      Point x0{c0};
      double rho = critical_radius(x0);
      double h = rho * 1e-3, sup = 0;
      for (double u = -2.2; u <= 2.2; u += 0.002) {
        double x = c0 + u * rho;
        double d;
        if (g == 1)
          d = (bump_value(x0, Point{x + h}) - bump_value(x0, Point{x - h})) / (2 * h);
        else
          d = (bump_value(x0, Point{x + h}) - 2 * bump_value(x0, Point{x}) +
               bump_value(x0, Point{x - h})) /
              (h * h);
        sup = std::max(sup, std::abs(d));
      }
      scaled.push_back(sup * std::pow(rho, g));
    }
    for (double v : scaled) {
      CHECK(v > 1e-3);
      CHECK(v < 50.0);  // C_g rho^{-g} with a single C_g across centers
    }
    CHECK(*std::max_element(scaled.begin(), scaled.end()) <
          10.0 * *std::min_element(scaled.begin(), scaled.end()));
  }
}

TEST_CASE("validate_atom on canonical examples") {
  SpaceParams params;
  params.p = 1;
  params.q = 2;
  params.M = 0;

  // medium-regime normalized indicator: moments not required
  Ball bm{Point{0.0}, 0.3};
  REQUIRE(bm.regime() == BallRegime::medium);
  auto grid = make_annulus_grid(bm, 3);
  GridFn ind = GridFn::sample(grid, [&](const Point& x) {
    return bm.contains(x) ? std::pow(bm.volume(), -1.0 / params.p) : 0.0;
  });
  auto rep = validate_atom(ind, bm, params);
  CHECK(rep.pass);

  // small-regime antisymmetric pair of indicators has a vanishing moment
  Ball bs{Point{0.0}, 0.05};
  REQUIRE(bs.regime() == BallRegime::small);
  auto grid2 = make_annulus_grid(bs, 3);
  GridFn pair = GridFn::sample(grid2, [&](const Point& x) {
    if (!bs.contains(x)) return 0.0;
    return x[0] > 0 ? 1.0 : -1.0;
  });
  // normalize to the budget
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < pair.values.size(); ++i)
    if (bs.contains(grid2->point(i))) inside.push_back(i);
  double nrm = lq_norm_subset(pair, inside, params.q);
  double budget = std::pow(bs.volume(), 1.0 / params.q - 1.0 / params.p);
  for (auto& v : pair.values) v *= budget / nrm;
  auto rep2 = validate_atom(pair, bs, params);
  CHECK(rep2.pass);

  // oversized ball fails condition (i)
  Ball bo{Point{0.0}, 0.7};
  auto rep3 = validate_atom(ind, bo, params);
  CHECK(!rep3.pass);
}

TEST_CASE("generated smooth atoms validate, and pass as molecules") {
  SpaceParams params;
  params.p = 0.8;
  params.q = 2;
  params.M = 1;
  Ball ball{Point{1.0}, 0.05};  // rho = 1/2, small regime
  REQUIRE(ball.regime() == BallRegime::small);
  auto grid = make_annulus_grid(ball, 4);
  GridFn a = make_smooth_atom(ball, params, grid);
  auto rep = validate_atom(a, ball, params, 1e-10);
  CHECK(rep.pass);

  // any valid (p,q,M)-atom is a (p,q,delta,omega)-molecule for
  // delta <= floor(omega)+1, omega <= M+1
  SpaceParams mol = params;
  mol.omega = 1.5;  // floor = 1 <= M
  mol.delta = 1.9;
  auto mrep = validate_molecule(a, ball, mol, 4);
  CHECK(mrep.pass);
}

TEST_CASE("synthetic molecules validate") {
  for (const char* shape : {"dipole", "gauss", "wiggle"}) {
    SpaceParams params;
    params.p = 0.8;
    params.q = 2;
    params.omega = 1.5;
    params.delta = 1.6;
    Ball ball{Point{0.5}, 0.05};
    REQUIRE(ball.regime() == BallRegime::small);
    int J = 5;
    auto grid = make_annulus_grid(ball, J);
    GridFn m = make_synthetic_molecule(ball, params, grid, shape, J);
    auto rep = validate_molecule(m, ball, params, J);
    CHECK(rep.pass);
  }
}

TEST_CASE("decomposition of a fully cancelled atom is the atom itself") {
  SpaceParams params;
  params.p = 1;
  params.q = 2;
  params.M = 1;
  params.omega = 1.5;  // floor(omega) = 1 = M, so P_0 kills nothing
  params.delta = 1.2;
  Ball ball{Point{0.0}, 0.05};
  int J = 4;
  auto grid = make_annulus_grid(ball, J);
  GridFn a = make_smooth_atom(ball, params, grid);
  Decomposition D = decompose_molecule(a, ball, params, {.J = J});
  CHECK((D.annulus_pieces[0] - a).l2_norm() < 1e-10 * std::max(1.0, a.l2_norm()));
  for (int j = 1; j <= J; ++j) CHECK(D.annulus_pieces[std::size_t(j)].l2_norm() < 1e-10);
  for (const auto& row : D.transfer_pieces)
    for (const auto& piece : row) CHECK(piece.l2_norm() < 1e-10);
  for (const auto& piece : D.moment_pieces) CHECK(piece.l2_norm() < 1e-10);
}

TEST_CASE("decomposition of a synthetic molecule") {
  SpaceParams params;
  params.p = 0.8;
  params.q = 2;
  params.omega = 1.5;
  params.delta = 1.6;
  Ball ball{Point{0.5}, 0.05};
  int J = 6;
  auto grid = make_annulus_grid(ball, J);
  GridFn m = make_synthetic_molecule(ball, params, grid, "dipole", J);
  REQUIRE(validate_molecule(m, ball, params, J).pass);

  Decomposition D = decompose_molecule(m, ball, params, {.J = J});
  CHECK(D.reassembly_l2 < 1e-8 * std::max(1.0, m.l2_norm()));
  CHECK(D.dual_residual < 1e-9);
  CHECK(D.piece_moment_residual < 1e-9);
  CHECK(D.moment_transfer_residual < 1e-9);
  CHECK(D.telescoping_residual < 1e-9);
  CHECK(D.projection_cross_residual < 1e-9);
  CHECK(std::isfinite(D.C1));
  CHECK(std::isfinite(D.C2));
  CHECK(std::isfinite(D.C3));

  // stability under J -> J+1
  auto grid7 = make_annulus_grid(ball, J + 1);
  GridFn m7 = GridFn::sample(grid7, [&](const Point& x) {
    double u = dist(x, ball.center) / ball.radius;
    return ((x[0] - ball.center[0]) / ball.radius) * std::exp(-u * u / 16.0);
  });
  // match the scale of m
  double ratio = m.values[0] / (((grid->point(0)[0] - ball.center[0]) / ball.radius) *
                                std::exp(-std::pow(dist(grid->point(0), ball.center) /
                                                       ball.radius, 2) / 16.0));
  for (auto& v : m7.values) v *= ratio;
  Decomposition D7 = decompose_molecule(m7, ball, params, {.J = J + 1});
  CHECK(D7.C1 <= 1.1 * D.C1 + 1e-12);
  CHECK(D.C1 <= 1.1 * D7.C1 + 1e-12);
  CHECK(D7.C2 <= 1.2 * D.C2 + 1e-12);
  CHECK(D.C2 <= 1.2 * D7.C2 + 1e-12);
  CHECK(D7.C3 <= 1.1 * D.C3 + 1e-12);
  CHECK(D.C3 <= 1.1 * D7.C3 + 1e-12);

  // degenerate parameter rejection
  SpaceParams bad = params;
  bad.delta = 0.1;
  bad.p = 0.8;
  bad.omega = 1.5;  // needs delta > 1 - 0.25
  CHECK_THROWS(decompose_molecule(m, ball, bad, {.J = J}));
}

TEST_CASE("dual basis and Gram-Schmidt bounds across annuli") {
  SpaceParams params;
  params.p = 1;
  params.q = 2;
  params.omega = 1.5;
  params.delta = 1.2;
  Ball ball{Point{0.0}, 0.02};
  int J = 6;
  auto grid = make_annulus_grid(ball, J);
  GridFn m = make_synthetic_molecule(ball, params, grid, "dipole", J);
  Decomposition D = decompose_molecule(m, ball, params, {.J = J});
  // ||nu_{j,alpha}||_inf <= C (2^j r)^{-|alpha|}; C stable across j
  for (std::size_t a = 0; a < D.alphas.size(); ++a) {
    std::vector<double> cs;
    for (int j = 0; j <= J; ++j) {
      double scale = std::pow(std::ldexp(ball.radius, j), D.alphas[a].order());
      cs.push_back(D.dual_sup[std::size_t(j)][a] * scale);
    }
    double lo = *std::min_element(cs.begin(), cs.end());
    double hi = *std::max_element(cs.begin(), cs.end());
    CHECK(hi < 30.0);
    CHECK(hi <= 12.0 * lo);
    // Gram-Schmidt coefficient bound |lambda_{alpha beta}| <= C (2^j r)^{-|alpha|}
    for (int j = 0; j <= J; ++j) {
      double scale = std::pow(std::ldexp(ball.radius, j), D.alphas[a].order());
      CHECK(D.gs_coef_sup[std::size_t(j)][a] * scale < 30.0);
    }
  }
  // tail moment decay: |N_{j,alpha}| <= C 2^{-j delta} (2^j r)^{|alpha|} |2^jB|^{1-1/p}
  for (std::size_t a = 0; a < D.alphas.size(); ++a) {
    for (int j = 0; j <= J; ++j) {
      double bud = std::pow(2.0, -j * params.delta) *
                   std::pow(std::ldexp(ball.radius, j), D.alphas[a].order()) *
                   std::pow(ball.volume(std::pow(2.0, j)), 1.0 - 1.0 / params.p);
      CHECK(std::abs(D.tail_moments[std::size_t(j)][a]) <= 20.0 * bud);
    }
  }
}

TEST_CASE("maximal function basics") {
  auto basis = make_basis(1, 0);
  CoefVec h0 = CoefVec::unit(basis, MultiIndex{0});
  auto grid = Grid::uniform(1, -4.0, 4.0, 161);
  auto ts = default_time_sample();
  GridFn M = maximal_function(h0, grid, ts);
  // sup dominates each sampled t
  for (double t : {ts[0], ts[10], ts.back()}) {
    GridFn ht = synthesize(heat_apply(t, h0), grid);
    for (std::size_t i = 0; i < M.values.size(); ++i)
      CHECK(M.values[i] >= std::abs(ht.values[i]) - 1e-14);
  }
  // at the origin the sup is attained as t -> 0
  double h00 = hermite_eval_1d(0, 0.0);
  std::size_t mid = M.values.size() / 2;
  CHECK(M.values[mid] == doctest::Approx(h00).epsilon(1e-3));
  CHECK(M.values[mid] <= h00);
}

TEST_CASE("norm estimators: basics and monotonicity") {
  // constant function: oscillation zero, oversized means equal 1
  auto grid = Grid::uniform(1, -10.0, 10.0, 2001);
  GridFn one(grid);
  for (auto& v : one.values) v = 1.0;
  BallFamily fam;
  fam.extent = 4.0;
  fam.centers_per_axis = 17;
  fam.radii_count = 8;
  double b = bmo_norm(one, fam);
  CHECK(b == doctest::Approx(1.0).epsilon(1e-12));

  // h_0 has a single spectral line: finitely many nonzero blocks
  CoefVec h0 = CoefVec::unit(make_basis(1, 0), MultiIndex{0});
  AdmissibleSystem sys;
  int nonzero = 0;
  for (int j = 0; j <= 8; ++j)
    if (std::abs(sys.phi_j(j, 1.0)) > 0) ++nonzero;
  CHECK(nonzero >= 1);
  CHECK(nonzero <= 2);
  double l1 = lip_norm(h0, 1.0, {.j_max = 6, .sup_halfwidth = 8.0, .sup_points = 801});
  CHECK(std::isfinite(l1));
  CHECK(l1 > 0.0);

  // estimator monotonicity in the sample family
  LipNormOptions co, fi;
  co.sup_points = 401;
  fi.sup_points = 801;
  CHECK(lip_norm(h0, 0.7, co) <= lip_norm(h0, 0.7, fi) + 1e-15);
}

TEST_CASE("semigroup difference powers are exact binomials") {
  auto basis = make_basis(1, 12);
  std::mt19937_64 rng(41);
  CoefVec c = random_coefvec(basis, rng);
  double r2 = 0.07;
  int N = 2;
  CoefVec direct = multiplier_apply(
      [&](double lam) { return std::pow(1.0 - std::exp(-r2 * lam), N); }, c);
  // (I - e^{-r^2 L})^2 = I - 2 e^{-r^2 L} + e^{-2 r^2 L}
  CoefVec byparts = c + scaled(heat_apply(r2, c), -2.0) + heat_apply(2 * r2, c);
  CHECK((direct - byparts).l2_norm() < 1e-14 * c.l2_norm());
}

TEST_CASE("campanato norm is finite and scales as expected") {
  CoefVec h0 = CoefVec::unit(make_basis(1, 0), MultiIndex{0});
  BallFamily fam;
  fam.extent = 3.0;
  fam.centers_per_axis = 13;
  fam.radii_count = 8;
  double v = campanato_norm(h0, 1.0, 1, fam);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  // zero function
  CoefVec z(make_basis(1, 3));
  CHECK(campanato_norm(z, 0.5, 1, fam) == 0.0);
}

TEST_CASE("far-field heat decay check") {
  SpaceParams params;
  params.p = 0.9;
  params.q = 2;
  params.M = 1;

  // mode (b): generated atom with vanishing moments
  Ball ball{Point{0.0}, 0.05};
  auto grid = make_annulus_grid(ball, 3);
  GridFn a = make_smooth_atom(ball, params, grid);
  FarFieldOptions opts;
  opts.s = 1.5;  // floor(s) = 1 <= M
  BoundReport rep = far_field_heat_decay_check(a, ball, params, FarFieldMode::vanishing_moments,
                                               opts);
  CHECK(rep.finite);
  CHECK(rep.pass);

  // mode (a): comparable radius
  Ball bm{Point{0.0}, 0.55};
  auto grid2 = make_annulus_grid(bm, 3);
  GridFn ind = GridFn::sample(grid2, [&](const Point& x) {
    return bm.contains(x) ? std::pow(bm.volume(), -1.0 / params.p) : 0.0;
  });
  FarFieldOptions opts2;
  opts2.s = 1.0;
  opts2.lambda = 0.5;
  BoundReport rep2 =
      far_field_heat_decay_check(ind, bm, params, FarFieldMode::comparable_radius, opts2);
  CHECK(rep2.finite);

  // hypothesis failure: a bump with mass in mode (b)
  GridFn bump = GridFn::sample(grid, [&](const Point& x) {
    return bm.contains(x) ? 0.1 : 0.0;
  });
  CHECK_THROWS(far_field_heat_decay_check(bump, ball, params, FarFieldMode::vanishing_moments,
                                          opts));
}

TEST_CASE("cancellation functional: identity and heat smoke tests") {
  CancellationOptions opts;
  opts.centers = {0.0, 2.0, -4.0};
  opts.j_max = 4;
  opts.lip.sup_points = 601;

  BoundReport ident = cancellation_functional(identity_operator(), 0.5, MultiIndex{0}, opts);
  CHECK(ident.finite);
  CHECK(ident.pass);

  BoundReport heat = cancellation_functional(heat_operator(1.0), 1.5, MultiIndex{1}, opts);
  CHECK(heat.finite);
}

TEST_CASE("pseudo-multiplier cancellation through the truncated matrix") {
  CancellationOptions opts;
  opts.centers = {0.0, 1.0};
  opts.j_max = 3;
  opts.lip.j_max = 3;
  opts.lip.sup_points = 401;
  PseudoSymbol osc = make_symbol("oscillating", {}, 1);
  BoundReport rep = cancellation_functional_pseudo(osc, 0.5, MultiIndex{0}, opts);
  CHECK(rep.finite);
  CHECK(rep.constant > 0.0);
  // sigma == 1 reduces to the identity functional
  PseudoSymbol one = make_symbol("constant", {1.0}, 1);
  BoundReport rep1 = cancellation_functional_pseudo(one, 0.5, MultiIndex{0}, opts);
  BoundReport repi = cancellation_functional(identity_operator(), 0.5, MultiIndex{0}, opts);
  CHECK(rep1.constant == doctest::Approx(repi.constant).epsilon(1e-6));
}
