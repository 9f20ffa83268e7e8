#include "hak/cancellation.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "hak/hermite.hpp"
#include "hak/kernels.hpp"
#include "hak/pseudo.hpp"

namespace hak {

namespace {

double inv_q(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

// e^{-tL} b(x) by closed-form kernel quadrature over b's grid
double heat_of(const GridFn& b, double t, const Point& x) {
  KahanSum s;
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    if (b.values[i] == 0.0) continue;
    s.add(b.grid->weight(i) * heat_kernel_mehler(t, x, b.grid->point(i)) * b.values[i]);
  }
  return s.value();
}

double centered_moment_all(const GridFn& f, const Point& c, const MultiIndex& alpha) {
  KahanSum s;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double v = f.grid->weight(i) * f.values[i];
    const Point& x = f.grid->point(i);
    for (int ax = 0; ax < alpha.dim(); ++ax)
      for (int r = 0; r < alpha[ax]; ++r) v *= x[ax] - c[ax];
    s.add(v);
  }
  return s.value();
}

}  // namespace

BoundReport far_field_heat_decay_check(const GridFn& b, const Ball& ball,
                                       const SpaceParams& params, FarFieldMode mode,
                                       const FarFieldOptions& opts) {
  if (ball.dim() != 1)
    throw std::invalid_argument("far_field_heat_decay_check: implemented for dim 1");
  const double s = opts.s;
  const int fs = int(std::floor(s));

  // hypothesis validation
  if (ball.radius > ball.rho() * (1 + 1e-12))
    throw std::invalid_argument("far-field check: needs r_B <= rho_B");
  double budget = std::pow(ball.volume(), inv_q(params.q) - 1.0 / params.p);
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < b.values.size(); ++i)
    if (ball.contains(b.grid->point(i))) inside.push_back(i);
  double nrm = lq_norm_subset(b, inside, params.q);
  if (nrm > budget * (1 + 1e-9))
    throw std::invalid_argument("far-field check: Lq budget violated, " + format_double(nrm) +
                                " > " + format_double(budget));
  double mass_scale = std::max(1.0, b.linf_norm() * ball.volume());
  if (mode == FarFieldMode::comparable_radius) {
    if (!(opts.lambda * ball.rho() <= ball.radius * (1 + 1e-12)))
      throw std::invalid_argument("far-field check: needs lambda rho <= r_B");
  } else {
    for (const auto& alpha : indices_with_order_between(1, 0, fs)) {
      double m = std::abs(centered_moment_all(b, ball.center, alpha));
      bool is_exempt = mode == FarFieldMode::single_moment && alpha == opts.alpha;
      if (is_exempt) {
        double cap = std::pow(ball.volume(), 1.0 - 1.0 / params.p) *
                     std::pow(ball.radius / ball.rho(), s - alpha.order()) *
                     std::pow(ball.radius, alpha.order());
        if (m > cap * (1 + 1e-9))
          throw std::invalid_argument("far-field check: surviving moment exceeds its budget");
      } else if (m > opts.hypothesis_tol * mass_scale) {
        throw std::invalid_argument("far-field check: moment of order " +
                                    std::to_string(alpha.order()) + " is not zero: " +
                                    format_double(m));
      }
    }
  }

  auto sample = [&](int x_count, int t_count) {
    std::vector<RatioSample> rows;
    double mol_budget = std::pow(ball.volume(), 1.0 - 1.0 / params.p);
    for (int side = -1; side <= 1; side += 2) {
      for (int i = 0; i < x_count; ++i) {
        // geometric reach from just outside 4B
        double mult = 4.5 * std::pow(opts.x_reach / 4.5, double(i) / (x_count - 1));
        Point x{ball.center[0] + side * mult * ball.radius};
        double d = std::abs(x[0] - ball.center[0]);
        auto ts = default_time_sample(t_count, opts.t_min, opts.t_max);
        for (double t : ts) {
          RatioSample r;
          r.label = "x=" + format_double(x[0]) + ";t=" + format_double(t);
          r.lhs = std::abs(heat_of(b, t, x));
          r.rhs = std::pow(ball.radius, s) * mol_budget / std::pow(d, 1.0 + s);
          rows.push_back(r);
        }
      }
    }
    return rows;
  };

  BoundReport rep = make_bound_report("far_field_heat_decay", sample(opts.x_count, opts.t_count),
                                      sample(2 * opts.x_count, 2 * opts.t_count));
  rep.add_param("s", s);
  rep.add_param("mode", mode == FarFieldMode::comparable_radius
                            ? "a"
                            : (mode == FarFieldMode::vanishing_moments ? "b" : "c"));
  return rep;
}

BoundReport cancellation_functional(const CoefOperator& T, double omega, const MultiIndex& alpha,
                                    const CancellationOptions& opts) {
  if (alpha.order() > int(std::floor(omega)) && omega > 0)
    throw std::invalid_argument("cancellation_functional: needs |alpha| <= floor(omega)");

  auto measure = [&](const LipNormOptions& lip, int extra_j) {
    std::vector<RatioSample> rows;
    LipNormOptions lo = lip;
    lo.j_max += extra_j;
    // resolve every dyadic block up to j_max
    int need_degree = int(std::pow(4.0, lo.j_max) / 2.0) + 2;
    for (double c0 : opts.centers) {
      Point x0{c0};
      double rho = critical_radius(x0);
      CoefVec g = project_local(
          [&](const Point& x) { return moment_bump_value(x0, alpha, x); }, x0[0] - 2.0 * rho,
          x0[0] + 2.0 * rho, need_degree);
      CoefVec Tg = opts.use_adjoint ? T.adjoint_apply(g) : T.apply(g);
      double nrm;
      if (omega > 0) {
        nrm = lip_norm(Tg, omega, lo);
      } else {
        GridPtr grid = Grid::uniform(1, -opts.bmo_family.extent, opts.bmo_family.extent, 2401);
        nrm = bmo_norm(synthesize(Tg, grid), opts.bmo_family);
      }
      RatioSample r;
      r.label = "x0=" + format_double(c0);
      r.lhs = std::pow(rho, omega - alpha.order()) * nrm;
      r.rhs = 1.0;
      rows.push_back(r);
    }
    return rows;
  };

  LipNormOptions fine = opts.lip;
  fine.sup_points = 2 * fine.sup_points - 1;
  BoundReport rep =
      make_bound_report("cancellation(" + T.name + ")", measure(opts.lip, 0), measure(fine, 1));
  rep.add_param("omega", omega);
  rep.add_param("|alpha|", double(alpha.order()));
  rep.add_param("adjoint", opts.use_adjoint ? "true" : "false");
  return rep;
}

BoundReport cancellation_functional_pseudo(const PseudoSymbol& sigma, double omega,
                                           const MultiIndex& alpha,
                                           const CancellationOptions& opts) {
  // truncated operator matrix at the degree the dyadic range needs
  auto measure = [&](const LipNormOptions& lip, int extra_j) {
    LipNormOptions lo = lip;
    lo.j_max += extra_j;
    const int D = int(std::pow(4.0, lo.j_max) / 2.0) + 2;
    BasisSpec basis(1, D);
    const std::size_t n = basis.count();
    auto grid = transform_grid(1, D);
    Eigen::MatrixXd H(grid->size(), n);
    for (std::size_t p = 0; p < grid->size(); ++p) {
      auto h = hermite_all_1d(D, grid->point(p)[0]);
      for (std::size_t k = 0; k < n; ++k) H(long(p), long(k)) = h[std::size_t(basis.at(k)[0])];
    }
    Eigen::MatrixXcd T(n, n);
    for (std::size_t col = 0; col < n; ++col) {
      const MultiIndex& xi = basis.at(col);
      Eigen::VectorXcd f(grid->size());
      for (std::size_t p = 0; p < grid->size(); ++p)
        f(long(p)) = sigma.eval(grid->point(p), xi) * (H(long(p), long(col)) * grid->weight(p));
      T.col(long(col)) = H.transpose().cast<std::complex<double>>() * f;
    }
    Eigen::MatrixXcd Tadj = T.adjoint();

    std::vector<RatioSample> rows;
    for (double c0 : opts.centers) {
      Point x0{c0};
      double rho = critical_radius(x0);
      CoefVec g = project_local(
          [&](const Point& x) { return moment_bump_value(x0, alpha, x); }, x0[0] - 2.0 * rho,
          x0[0] + 2.0 * rho, D);
      Eigen::VectorXcd gv(n);
      for (std::size_t k = 0; k < n; ++k) gv(long(k)) = g.values[k];
      Eigen::VectorXcd out = (opts.use_adjoint ? Tadj : T) * gv;
      std::vector<std::complex<double>> coef(n);
      for (std::size_t k = 0; k < n; ++k) coef[k] = out(long(k));
      double nrm = lip_norm_complex(coef, basis, omega, lo);
      RatioSample r;
      r.label = "x0=" + format_double(c0);
      r.lhs = std::pow(rho, omega - alpha.order()) * nrm;
      r.rhs = 1.0;
      rows.push_back(r);
    }
    return rows;
  };
  LipNormOptions fine = opts.lip;
  fine.sup_points = 2 * fine.sup_points - 1;
  BoundReport rep = make_bound_report("cancellation_pseudo(" + sigma.name + ")",
                                      measure(opts.lip, 0), measure(fine, 1));
  rep.add_param("omega", omega);
  rep.add_param("|alpha|", double(alpha.order()));
  return rep;
}

}  // namespace hak
