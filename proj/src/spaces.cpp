#include "hak/spaces.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hak/admissible.hpp"

namespace hak {

double Ball::volume(double scale) const {
  double r = scale * radius;
  switch (center.dim()) {
    case 1: return 2.0 * r;
    case 2: return M_PI * r * r;
    default: return 4.0 * M_PI / 3.0 * r * r * r;
  }
}

int Ball::annulus_of(const Point& x) const {
  double d = dist(x, center);
  if (d <= radius) return 0;
  return std::max(1, int(std::ceil(std::log2(d / radius) - 1e-12)));
}

double lq_norm_subset(const GridFn& f, const std::vector<std::size_t>& idx, double q) {
  if (std::isinf(q)) {
    double m = 0;
    for (std::size_t i : idx) m = std::max(m, std::abs(f.values[i]));
    return m;
  }
  KahanSum s;
  for (std::size_t i : idx) s.add(f.grid->weight(i) * std::pow(std::abs(f.values[i]), q));
  return std::pow(s.value(), 1.0 / q);
}

double bump_value(const Point& x0, const Point& x) {
  double rho = critical_radius(x0);
  return smooth_step_down(dist(x, x0) / rho - 1.0);
}

double moment_bump_value(const Point& x0, const MultiIndex& alpha, const Point& x) {
  double v = bump_value(x0, x);
  for (int i = 0; i < alpha.dim(); ++i)
    for (int r = 0; r < alpha[i]; ++r) v *= x[i] - x0[i];
  return v;
}

GridFn make_bump(const Point& x0, GridPtr grid) {
  return GridFn::sample(std::move(grid), [&x0](const Point& x) { return bump_value(x0, x); });
}

GridFn make_g(const Point& x0, const MultiIndex& alpha, GridPtr grid) {
  return GridFn::sample(std::move(grid),
                        [&](const Point& x) { return moment_bump_value(x0, alpha, x); });
}

void ValidationReport::add(std::string name, double measured, double bound, bool required,
                           double slack) {
  ConditionReport c;
  c.name = std::move(name);
  c.measured = measured;
  c.bound = bound;
  c.required = required;
  c.pass = !required || measured <= bound * slack;
  items.push_back(c);
  pass = true;
  for (const auto& it : items) pass = pass && it.pass;
}

namespace {

double centered_moment(const GridFn& f, const Point& center, const MultiIndex& alpha,
                       const std::vector<std::size_t>& idx) {
  KahanSum s;
  for (std::size_t i : idx) {
    double v = f.grid->weight(i) * f.values[i];
    const Point& x = f.grid->point(i);
    for (int ax = 0; ax < alpha.dim(); ++ax)
      for (int r = 0; r < alpha[ax]; ++r) v *= x[ax] - center[ax];
    s.add(v);
  }
  return s.value();
}

std::vector<std::size_t> all_indices(const GridFn& f) {
  std::vector<std::size_t> idx(f.values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

double inv_q(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

}  // namespace

ValidationReport validate_atom(const GridFn& a, const Ball& ball, const SpaceParams& params,
                               double moment_tol) {
  ValidationReport rep;
  rep.regime = ball.regime();
  double sup_all = a.linf_norm();

  rep.add("radius <= rho/2", ball.radius, 0.5 * ball.rho());

  double outside = 0;
  std::vector<std::size_t> inside_idx;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (ball.contains(a.grid->point(i)))
      inside_idx.push_back(i);
    else
      outside = std::max(outside, std::abs(a.values[i]));
  }
  rep.add("support in B", outside, 1e-12 * std::max(sup_all, 1.0));

  double budget = std::pow(ball.volume(), inv_q(params.q) - 1.0 / params.p);
  rep.add("Lq size", lq_norm_subset(a, inside_idx, params.q), budget);

  bool need_moments = rep.regime == BallRegime::small;
  auto idx = all_indices(a);
  double scale = std::max(1.0, sup_all * ball.volume());
  for (const auto& alpha : indices_with_order_between(ball.dim(), 0, params.M)) {
    double m = std::abs(centered_moment(a, ball.center, alpha, idx));
    std::string nm = "moment order " + std::to_string(alpha.order());
    rep.add(nm, m, moment_tol * scale, need_moments);
  }
  return rep;
}

ValidationReport validate_molecule(const GridFn& m, const Ball& ball, const SpaceParams& params,
                                   int J) {
  ValidationReport rep;
  rep.regime = ball.regime();
  rep.add("radius <= rho/2", ball.radius, 0.5 * ball.rho());

  auto bins = bin_by_annulus(*m.grid, ball, J);
  for (int j = 0; j <= J; ++j) {
    double nrm = lq_norm_subset(m, bins[std::size_t(j)], params.q);
    double budget = std::pow(2.0, -j * params.delta) *
                    std::pow(ball.volume(std::pow(2.0, j)), inv_q(params.q) - 1.0 / params.p);
    rep.add("Lq on annulus " + std::to_string(j), nrm, budget);
  }

  bool need_moments = rep.regime == BallRegime::small;
  auto idx = all_indices(m);
  for (const auto& alpha : indices_with_order_between(ball.dim(), 0, params.floor_omega())) {
    double mom = std::abs(centered_moment(m, ball.center, alpha, idx));
    double budget = std::pow(ball.volume(), 1.0 - 1.0 / params.p) *
                    std::pow(ball.radius, alpha.order()) *
                    std::pow(ball.radius / ball.rho(), params.omega - alpha.order());
    rep.add("approx moment order " + std::to_string(alpha.order()), mom, budget, need_moments);
  }
  return rep;
}

GridPtr make_annulus_grid(const Ball& ball, int J, int points_per_panel, int panels_per_interval) {
  if (ball.dim() != 1)
    throw std::invalid_argument("make_annulus_grid: built-in construction is one-dimensional");
  std::vector<Point> pts;
  std::vector<double> ws;
  auto add_interval = [&](double a, double b) {
    QuadratureRule r = gauss_legendre_rule(a, b, points_per_panel, panels_per_interval);
    for (std::size_t i = 0; i < r.size(); ++i) {
      pts.push_back(Point{r.nodes[i]});
      ws.push_back(r.weights[i]);
    }
  };
  double c = ball.center[0], r = ball.radius;
  add_interval(c - r, c + r);
  for (int j = 1; j <= J; ++j) {
    double lo = std::ldexp(r, j - 1), hi = std::ldexp(r, j);
    add_interval(c - hi, c - lo);
    add_interval(c + lo, c + hi);
  }
  return Grid::scattered(std::move(pts), std::move(ws));
}

std::vector<std::vector<std::size_t>> bin_by_annulus(const Grid& grid, const Ball& ball, int J) {
  std::vector<std::vector<std::size_t>> bins(std::size_t(J) + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int j = ball.annulus_of(grid.point(i));
    if (j <= J) bins[std::size_t(j)].push_back(i);
  }
  return bins;
}

GridFn make_smooth_atom(const Ball& ball, const SpaceParams& params, GridPtr grid,
                        unsigned variant) {
  const int dim = ball.dim();
  const int M = params.M;
  // envelope supported strictly inside B
  auto envelope = [&](const Point& x) {
    return smooth_step_down(2.0 * dist(x, ball.center) / ball.radius - 1.0);
  };
  auto monomial = [&](const Point& x, const MultiIndex& alpha) {
    double v = 1;
    for (int ax = 0; ax < dim; ++ax)
      for (int r = 0; r < alpha[ax]; ++r) v *= (x[ax] - ball.center[ax]) / ball.radius;
    return v;
  };
  // seed of degree M+1 (+variant twist), then kill moments <= M against the
  // envelope-weighted monomials
  MultiIndex seed_pow = MultiIndex(dim, 0).shifted(0, int(M + 1 + variant % 2));
  auto mom_basis = indices_with_order_between(dim, 0, M);
  const std::size_t nb = mom_basis.size();

  Eigen::MatrixXd G(nb, nb);
  Eigen::VectorXd rhs(nb);
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      KahanSum s;
      for (std::size_t i = 0; i < grid->size(); ++i) {
        const Point& x = grid->point(i);
        if (!ball.contains(x)) continue;
        s.add(grid->weight(i) * envelope(x) * monomial(x, mom_basis[a]) *
              monomial(x, mom_basis[b]));
      }
      G(long(a), long(b)) = s.value();
    }
    KahanSum s;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const Point& x = grid->point(i);
      if (!ball.contains(x)) continue;
      s.add(grid->weight(i) * envelope(x) * monomial(x, seed_pow) * monomial(x, mom_basis[a]));
    }
    rhs(long(a)) = s.value();
  }
  Eigen::VectorXd coef = G.ldlt().solve(rhs);

  GridFn atom(grid);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const Point& x = grid->point(i);
    if (!ball.contains(x)) continue;
    double corr = 0;
    for (std::size_t a = 0; a < nb; ++a) corr += coef(long(a)) * monomial(x, mom_basis[a]);
    atom.values[i] = envelope(x) * (monomial(x, seed_pow) - corr);
  }
  // normalize to the atom budget
  std::vector<std::size_t> idx = [&] {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < grid->size(); ++i)
      if (ball.contains(grid->point(i))) v.push_back(i);
    return v;
  }();
  double nrm = lq_norm_subset(atom, idx, params.q);
  double budget = std::pow(ball.volume(), inv_q(params.q) - 1.0 / params.p);
  if (nrm > 0)
    for (auto& v : atom.values) v *= budget / nrm;
  return atom;
}

GridFn make_synthetic_molecule(const Ball& ball, const SpaceParams& params, GridPtr grid,
                               const std::string& shape, int J) {
  const double r = ball.radius;
  GridFn m(grid);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const Point& x = grid->point(i);
    double u = dist(x, ball.center) / r;
    double radial = std::exp(-u * u / 16.0);  // spread over ~4 r
    double v = 0;
    if (shape == "dipole")
      v = ((x[0] - ball.center[0]) / r) * radial;
    else if (shape == "gauss")
      v = radial;
    else if (shape == "wiggle")
      v = std::sin(2.0 * u) * radial;
    else
      throw std::invalid_argument("make_synthetic_molecule: shapes are dipole|gauss|wiggle");
    m.values[i] = v;
  }
  // scale to sit at the molecule budget: make the binding condition tight
  auto bins = bin_by_annulus(*grid, ball, J);
  double worst = 0;
  for (int j = 0; j <= J; ++j) {
    double nrm = lq_norm_subset(m, bins[std::size_t(j)], params.q);
    double budget = std::pow(2.0, -j * params.delta) *
                    std::pow(ball.volume(std::pow(2.0, j)), inv_q(params.q) - 1.0 / params.p);
    worst = std::max(worst, nrm / budget);
  }
  if (ball.regime() == BallRegime::small) {
    auto idx = all_indices(m);
    for (const auto& alpha : indices_with_order_between(ball.dim(), 0, params.floor_omega())) {
      double mom = std::abs(centered_moment(m, ball.center, alpha, idx));
      double budget = std::pow(ball.volume(), 1.0 - 1.0 / params.p) *
                      std::pow(r, alpha.order()) *
                      std::pow(r / ball.rho(), params.omega - alpha.order());
      if (budget > 0) worst = std::max(worst, mom / budget);
    }
  }
  if (worst > 0)
    for (auto& v : m.values) v /= worst;
  return m;
}

}  // namespace hak
