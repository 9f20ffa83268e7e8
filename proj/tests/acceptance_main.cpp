// Acceptance suite: every release gate in one binary, one verdict line per
// criterion. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hak/cancellation.hpp"
#include "hak/cli.hpp"
#include "hak/decompose.hpp"
#include "hak/verify.hpp"

using namespace hak;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::pair<Point, Point>> identity_samples(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.2, 2.2);
  std::vector<std::pair<Point, Point>> ps;
  for (int i = 0; i < 8; ++i) {
    Point x(dim), y(dim);
    for (int ax = 0; ax < dim; ++ax) {
      x[ax] = u(rng);
      y[ax] = u(rng);
    }
    ps.emplace_back(x, y);
  }
  return ps;
}

// --- criterion 1: exact identities ----------------------------------------
void criterion_identities() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  AdmissibleSystem sys;
  double worst = 0;
  for (int dim = 1; dim <= 2; ++dim) {
    auto samples = identity_samples(dim, rng);
    auto sym = [&](const MultiIndex& xi) { return sys.phi_j_at(2, xi); };
    int hi = dyadic_block_range(2, dim).hi;
    for (int N = 1; N <= 3; ++N)
      worst = std::max(worst, check_displacement_identity(dim, 0, N, sym, hi, samples));
    for (auto letter : {Ladder::creation, Ladder::annihilation}) {
      for (int M = 0; M <= 3; ++M) {
        for (int N = 1; N <= 3; ++N) {
          MultiIndex xi = MultiIndex(dim, 0).shifted(0, 2);
          MultiIndex eta = MultiIndex(dim, 0).shifted(0, 3);
          worst = std::max(worst, check_commutation_moving_letter(dim, 0, M, N, letter, xi, eta,
                                                                 samples));
          worst = std::max(worst, check_commutation_moving_difference(dim, 0, M, N, letter, xi,
                                                                      eta, samples));
        }
      }
    }
  }
  // ladder identities pointwise for k <= 40 (derivative by complex step)
  for (int k = 0; k <= 40; ++k) {
    for (double t = -8.0; t <= 8.0; t += 0.25) {
      const double h = 1e-150;
      double d = hermite_eval_1d(k, std::complex<double>(t, h)).imag() / h;
      double v = hermite_eval_1d(k, t);
      worst = std::max(worst,
                       std::abs(-d + t * v - std::sqrt(2.0 * k + 2.0) * hermite_eval_1d(k + 1, t)));
      worst = std::max(
          worst,
          std::abs(d + t * v - (k == 0 ? 0.0 : std::sqrt(2.0 * k) * hermite_eval_1d(k - 1, t))));
    }
  }
  for (int ell = 1; ell <= 3; ++ell)
    worst = std::max(worst, check_discrete_leibniz(ell, 555 + unsigned(ell)));
  {
    std::vector<Point> xs;
    for (double x = -2.0; x <= 2.0; x += 0.41) xs.push_back(Point{x});
    for (bool gauss : {false, true})
      for (int p = 0; p <= 2; ++p)
        for (int a = 1; a <= 2; ++a)
          worst = std::max(worst, check_ladder_leibniz(SmoothFn::monomial(MultiIndex{p}, gauss),
                                                       MultiIndex{4}, MultiIndex{a}, xs));
    std::vector<Point> xs2;
    for (double x = -1.5; x <= 1.5; x += 0.75)
      for (double y = -1.5; y <= 1.5; y += 0.75) xs2.push_back(Point{x, y});
    worst = std::max(worst, check_ladder_leibniz(SmoothFn::monomial(MultiIndex{1, 1}, true),
                                                 MultiIndex{2, 1}, MultiIndex{1, 1}, xs2));
  }
  for (int J : {4, 10})
    for (double lam = 0.5; lam <= std::ldexp(1.0, J - 1); lam *= 1.03)
      worst = std::max(worst, std::abs(sys.partial_sum(J, lam) - 1.0));

  double secs = seconds_since(t0);
  verdict(1, "exact identities (displacement, commutation, ladder, Leibniz, partition)",
          worst <= 1e-9 && secs < 120.0,
          "max residual=" + format_double(worst) + ", " + format_double(secs) + "s");
}

// --- criterion 2: orthonormality and Parseval ------------------------------
void criterion_orthonormality() {
  auto rule = gauss_hermite_rule(129);
  double ortho = orthonormality_residual(rule, 64);

  std::mt19937_64 rng(99);
  double parseval = 0;
  for (int dim = 1; dim <= 2; ++dim) {
    int K = dim == 1 ? 30 : 14;
    CoefVec c = random_coefvec(make_basis(dim, K), rng);
    GridFn f = synthesize(c, transform_grid(dim, K));
    parseval = std::max(parseval,
                        std::abs(f.l2_norm() - c.l2_norm()) / std::max(1.0, c.l2_norm()));
  }
  verdict(2, "orthonormality (j,k <= 64) and Parseval (K <= 30, n <= 2)",
          ortho <= 1e-10 && parseval <= 1e-10,
          "ortho=" + format_double(ortho) + " parseval=" + format_double(parseval));
}

// --- criterion 3: eigenrelation via exact ladder derivatives ---------------
void criterion_eigenrelation() {
  double worst = 0;
  for (int k = 0; k <= 40; k += (k < 8 ? 1 : 4)) {
    CoefVec c = CoefVec::unit(make_basis(1, k), MultiIndex{k});
    CoefVec lap = derivative_apply(0, derivative_apply(0, c));
    CoefVec pos2 = position_apply(0, position_apply(0, c));
    CoefVec lhs = scaled(lap, -1.0) + pos2;
    auto grid = Grid::uniform(1, -6.0, 6.0, 481);
    GridFn l = synthesize(lhs, grid);
    GridFn hk = synthesize(embed(c, lhs.basis), grid);
    double lam = 2.0 * k + 1.0;
    double sup = 0;
    for (double v : hk.values) sup = std::max(sup, std::abs(lam * v));
    for (std::size_t i = 0; i < l.values.size(); ++i) {
      double denom = std::max(std::abs(lam * hk.values[i]), 1e-6 * sup);
      worst = std::max(worst, std::abs(l.values[i] - lam * hk.values[i]) / denom);
    }
  }
  verdict(3, "eigenrelation (-Delta + |x|^2) h_k = (2k+n) h_k, degrees <= 40",
          worst <= 1e-9, "max pointwise relative residual=" + format_double(worst));
}

// --- criterion 4: semigroup composition and closed-form agreement ----------
void criterion_semigroup() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4);
  CoefVec c = random_coefvec(make_basis(1, 24), rng);
  double comp = (heat_apply(0.35, heat_apply(0.4, c)) - heat_apply(0.75, c)).l2_norm() /
                std::max(c.l2_norm(), 1e-30);

  double worst = 0;
  for (double t = 0.1; t <= 2.0; t *= 1.45) {
    double floor_scale = 1e-6 * std::pow(2.0 * M_PI * std::sinh(2.0 * t), -0.5);
    for (double x = -3.0; x <= 3.0; x += 0.4) {
      for (double y = -3.0; y <= 3.0; y += 0.4) {
        double s = heat_kernel_series(t, Point{x}, Point{y});
        double m = heat_kernel_mehler(t, Point{x}, Point{y});
        worst = std::max(worst, std::abs(s - m) / std::max(std::abs(m), floor_scale));
      }
    }
  }
  double secs = seconds_since(t0);
  verdict(4, "semigroup composition exact; eigen-series matches the closed form",
          comp <= 1e-14 && worst <= 1e-8 && secs < 30.0,
          "composition=" + format_double(comp) + " kernel rel=" + format_double(worst) + ", " +
              format_double(secs) + "s");
}

// --- criterion 5: projection-kernel growth ----------------------------------
void criterion_projector() {
  bool ok = true;
  std::string detail;
  for (double mu : {0.0, 2.0}) {
    BoundReport rep = check_projector_growth(1, 5, mu, SampleBox{6.0, 41});
    ok = ok && rep.pass;
    detail += "mu=" + format_double(mu) + ":C=" + format_double(rep.constant) + ",r=" +
              format_double(rep.refinement_ratio) + " ";
  }
  verdict(5, "projection kernel growth Q_{4^j}(x,x), mu in {0,2}, j <= 5", ok, detail);
}

// --- criterion 6: heat kernel bounds ----------------------------------------
void criterion_heat_bounds() {
  bool ok = true;
  std::string detail;
  for (int k : {0, 1}) {
    for (double N : {0.0, 2.0}) {
      BoundReport rep = check_heat_kernel_bound(1, k, N, SampleBox{4.0, 13});
      ok = ok && rep.pass;
      detail += "k" + std::to_string(k) + "N" + format_double(N) + "=" +
                format_double(rep.constant) + " ";
    }
  }
  for (int g : {1, 2}) {
    BoundReport rep = check_heat_kernel_deriv_bound(1, MultiIndex{g}, 2.0, SampleBox{4.0, 13});
    ok = ok && rep.pass;
    detail += "d" + std::to_string(g) + "=" + format_double(rep.constant) + " ";
  }
  verdict(6, "heat kernel bounds (powers of L and y-derivatives)", ok, detail);
}

// --- criterion 7: molecular decomposition -----------------------------------
void criterion_decomposition() {
  struct Case {
    double p, omega;
    const char* shape;
  };
  std::vector<Case> cases{{1.0, 0.5, "dipole"}, {0.8, 1.5, "dipole"}, {0.8, 0.5, "gauss"},
                          {1.0, 1.5, "wiggle"}};
  bool ok = true;
  std::string detail;
  for (const auto& cse : cases) {
    auto t0 = std::chrono::steady_clock::now();
    SpaceParams params;
    params.p = cse.p;
    params.q = 2;
    params.omega = cse.omega;
    params.delta = params.floor_omega() + (cse.p < 1 ? 0.5 : 0.7);
    Ball ball{Point{0.5}, 0.05};
    const int J = 6;
    auto grid = make_annulus_grid(ball, J);
    GridFn m = make_synthetic_molecule(ball, params, grid, cse.shape, J);
    Decomposition D = decompose_molecule(m, ball, params, {.J = J});

    // same function (same normalization) on one more annulus
    std::string shape = cse.shape;
    auto shape_value = [&](const Point& x) {
      double u = dist(x, ball.center) / ball.radius;
      double radial = std::exp(-u * u / 16.0);
      if (shape == "dipole") return ((x[0] - ball.center[0]) / ball.radius) * radial;
      if (shape == "gauss") return radial;
      return std::sin(2.0 * u) * radial;
    };
    double scale = m.values[0] / shape_value(grid->point(0));
    auto grid7 = make_annulus_grid(ball, J + 1);
    GridFn m7 = GridFn::sample(grid7, [&](const Point& x) { return scale * shape_value(x); });
    Decomposition D7 = decompose_molecule(m7, ball, params, {.J = J + 1});

    double rel_re = D.reassembly_l2 / std::max(1.0, m.l2_norm());
    bool stable = std::isfinite(D.C1) && std::isfinite(D.C2) && std::isfinite(D.C3) &&
                  D7.C1 <= 1.1 * D.C1 + 1e-12 && D.C1 <= 1.1 * D7.C1 + 1e-12 &&
                  D7.C3 <= 1.1 * D.C3 + 1e-12 && D.C3 <= 1.1 * D7.C3 + 1e-12;
    double secs = seconds_since(t0);
    bool case_ok = rel_re <= 1e-8 && D.piece_moment_residual <= 1e-9 &&
                   D.dual_residual <= 1e-9 && stable && secs < 60.0;
    ok = ok && case_ok;
    detail += std::string(cse.shape) + "(p=" + format_double(cse.p) +
              ",w=" + format_double(cse.omega) + "):re=" + format_double(rel_re) + " ";
  }
  verdict(7, "constructive molecular decomposition on synthetic molecules", ok, detail);
}

// --- criterion 8: HCZO grading of Riesz transforms ---------------------------
void criterion_hczo() {
  bool ok = true;
  std::string detail;
  HczoOptions opts;
  opts.box = SampleBox{4.0, 21};
  for (const char* alpha : {"1", "2"}) {
    RieszOp op = make_riesz_op(alpha, "A", 1);
    KernelEvaluator ev = riesz_kernel_evaluator(op, 2048);
    auto reps = grade_hczo(ev, 0, 0.5, 2.0, opts);
    for (const auto& r : reps) {
      ok = ok && r.pass;
      detail += "|a|=" + std::string(alpha) + ":" + format_double(r.constant) + " ";
    }
  }
  // kernel decay for |gamma|+|eta| <= 1 at mu = 2
  RieszOp op1 = first_order(0, LadderLetter::creation, 1);
  KernelEvaluator ev1 = riesz_kernel_evaluator(op1, 2048);
  for (auto [g, e] : {std::pair<int, int>{0, 0}, {1, 0}, {0, 1}}) {
    BoundReport rep = check_kernel_decay(ev1, MultiIndex{g}, MultiIndex{e}, 2.0, opts);
    ok = ok && rep.pass;
  }
  verdict(8, "HCZO grading of R^alpha, |alpha| in {1,2}, plus kernel decay", ok, detail);
}

// --- criterion 9: dyadic piece bounds ---------------------------------------
void criterion_dyadic() {
  bool ok = true;
  std::string detail;
  RieszOp op1 = first_order(0, LadderLetter::creation, 1);
  PseudoSymbol one = make_symbol("constant", {1.0}, 1);
  for (int N : {0, 1}) {
    DyadicBoundSpec spec;
    spec.N = N;
    auto rr = check_dyadic_kernel_bounds_riesz(op1, spec, 1, 5, 0.0, SampleBox{5.0, 17});
    auto rp = check_dyadic_kernel_bounds_pseudo(one, spec, 1, 5, 0.0, SampleBox{5.0, 17});
    for (const auto& b : rr.per_j) ok = ok && b.finite;
    for (const auto& b : rp.per_j) ok = ok && b.finite;
    ok = ok && rr.stable && rp.stable;
    detail += "N=" + std::to_string(N) + ":riesz=" + format_double(rr.cross_j_ratio) +
              ",pseudo=" + format_double(rp.cross_j_ratio) + " ";
  }
  verdict(9, "dyadic piece bounds stable across j in [1,5] (cross-level factor <= 3)", ok,
          detail);
}

// --- criterion 10: moment-bump norms and the cancellation functional --------
void criterion_cancellation() {
  bool ok = true;
  std::string detail;
  for (double s : {0.0, 0.5, 1.5}) {
    for (int a = 0; a <= 1; ++a) {
      double worst = 0;
      for (double c0 : {0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0}) {
        Point x0{c0};
        double rho = critical_radius(x0);
        double nrm;
        if (s > 0) {
          LipNormOptions lip;
          lip.j_max = 5;
          lip.sup_points = 1201;
          int need = int(std::pow(4.0, lip.j_max) / 2.0) + 2;
          CoefVec g = project_local(
              [&](const Point& y) { return moment_bump_value(x0, MultiIndex{a}, y); },
              c0 - 2.0 * rho, c0 + 2.0 * rho, need);
          nrm = lip_norm(g, s, lip);
        } else {
          BallFamily fam;
          fam.extent = 10.0;
          fam.centers_per_axis = 41;
          fam.radii_count = 10;
          auto grid = Grid::uniform(1, -12.0, 12.0, 4801);
          nrm = bmo_norm(make_g(x0, MultiIndex{a}, grid), fam);
        }
        worst = std::max(worst, std::pow(rho, s - a) * nrm);
      }
      ok = ok && std::isfinite(worst) && worst > 0;
      detail += "s=" + format_double(s) + ",a=" + std::to_string(a) + ":" +
                format_double(worst) + " ";
    }
  }
  CancellationOptions copts;
  copts.j_max = 5;
  copts.lip.j_max = 5;
  copts.lip.sup_points = 1201;
  RieszOp op1 = first_order(0, LadderLetter::creation, 1);
  BoundReport rep = cancellation_functional(riesz_operator(op1, 1), 0.5, MultiIndex{0}, copts);
  ok = ok && rep.pass;
  detail += "cancel(R1)=" + format_double(rep.constant) + ",r=" +
            format_double(rep.refinement_ratio);
  verdict(10, "moment-bump Lipschitz norms and the cancellation functional", ok, detail);
}

// --- criterion 11: Campanato/Lipschitz equivalence ---------------------------
void criterion_campanato() {
  bool ok = true;
  std::string detail;
  BallFamily fam;
  fam.extent = 4.0;
  fam.centers_per_axis = 17;
  fam.radii_count = 8;
  for (double s : {0.5, 1.0}) {
    auto res = check_campanato_equivalence(s, 1 + int(std::floor(s / 2.0)), fam);
    ok = ok && res.window_ok && res.stable;
    detail += "s=" + format_double(s) + ":[" + format_double(res.ratio_min) + "," +
              format_double(res.ratio_max) + "] ";
  }
  verdict(11, "Campanato/Lipschitz ratio window within [1/50, 50], family-doubling stable", ok,
          detail);
}

// --- criterion 12: determinism of the verification pipeline -----------------
void criterion_determinism() {
  fs::path base = fs::temp_directory_path() / "hak_acceptance_det";
  fs::remove_all(base);
  fs::create_directories(base);
  auto run = [&](const std::string& tag) {
    std::stringstream captured;
    auto* old = std::cout.rdbuf(captured.rdbuf());
    int rc = run_cli({"verify", "all", "--seed", "7", "--out", (base / tag).string()});
    std::cout.rdbuf(old);
    std::ifstream is(base / tag / "summary.json");
    std::stringstream ss;
    ss << is.rdbuf();
    std::string sum = ss.str();
    // neutralize the configured output path
    std::string marker = (base / tag).string();
    std::size_t pos;
    while ((pos = sum.find(marker)) != std::string::npos) sum.replace(pos, marker.size(), "OUT");
    return std::make_tuple(rc, captured.str(), sum);
  };
  auto [rc1, out1, sum1] = run("r1");
  auto [rc2, out2, sum2] = run("r2");
  bool ok = rc1 == 0 && rc2 == 0 && out1 == out2 && !sum1.empty() && sum1 == sum2;
  verdict(12, "verify all --seed 7 twice produces byte-identical reports", ok,
          "rc=" + std::to_string(rc1) + "/" + std::to_string(rc2) +
              (out1 == out2 ? " stdout-match" : " stdout-DIFFER") +
              (sum1 == sum2 ? " summary-match" : " summary-DIFFER"));
}

}  // namespace

int main() {
  criterion_identities();
  criterion_orthonormality();
  criterion_eigenrelation();
  criterion_semigroup();
  criterion_projector();
  criterion_heat_bounds();
  criterion_decomposition();
  criterion_hczo();
  criterion_dyadic();
  criterion_cancellation();
  criterion_campanato();
  criterion_determinism();
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
