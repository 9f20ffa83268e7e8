#include "hak/norms.hpp"

#include <algorithm>
#include <cmath>

#include "hak/hermite.hpp"

namespace hak {

std::vector<double> default_time_sample(int count, double t_min, double t_max) {
  std::vector<double> ts(std::size_t(count), 0.0);
  double ratio = std::pow(t_max / t_min, 1.0 / (count - 1));
  double t = t_min;
  for (auto& v : ts) {
    v = t;
    t *= ratio;
  }
  return ts;
}

GridFn maximal_function(const CoefVec& c, GridPtr grid, const std::vector<double>& t_sample) {
  GridFn out(grid);
  const BasisSpec& b = *c.basis;
  parallel_for(grid->size(), [&](std::size_t p) {
    const Point& x = grid->point(p);
    std::array<std::vector<double>, kMaxDim> h1;
    for (int ax = 0; ax < b.dim(); ++ax)
      h1[std::size_t(ax)] = hermite_all_1d(b.max_degree(), x[ax]);
    // basis values weighted by coefficients, grouped by eigenvalue power
    std::vector<double> ch(b.count());
    for (std::size_t k = 0; k < b.count(); ++k) {
      double v = c.values[k];
      const MultiIndex& xi = b.at(k);
      for (int ax = 0; ax < b.dim(); ++ax) v *= h1[std::size_t(ax)][std::size_t(xi[ax])];
      ch[k] = v;
    }
    double best = 0;
    for (double t : t_sample) {
      KahanSum s;
      for (std::size_t k = 0; k < b.count(); ++k)
        s.add(std::exp(-t * b.at(k).eigenvalue()) * ch[k]);
      best = std::max(best, std::abs(s.value()));
    }
    out.values[p] = best;
  });
  return out;
}

double hp_norm(const CoefVec& c, GridPtr grid, double p, const std::vector<double>& t_sample) {
  GridFn mf = maximal_function(c, std::move(grid), t_sample);
  return mf.lq_norm(p);
}

namespace {

double block_sup(const CoefVec& c, const AdmissibleSystem& sys, int j, double halfwidth,
                 int points) {
  // sup over a 1-D (or axis-aligned 2-D) grid of |phi_j(sqrt L) f|
  CoefVec piece = dyadic_multiplier_apply(sys, j, c);
  bool any = false;
  for (double v : piece.values) any = any || v != 0.0;
  if (!any) return 0.0;
  const int dim = c.basis->dim();
  GridPtr g = Grid::uniform(dim, -halfwidth, halfwidth, dim == 1 ? points : 101);
  GridFn vals = synthesize(piece, g);
  return vals.linf_norm();
}

}  // namespace

double lip_norm(const CoefVec& c, double s, const LipNormOptions& opts) {
  AdmissibleSystem sys;
  double best = 0;
  for (int j = 0; j <= opts.j_max; ++j) {
    double b = block_sup(c, sys, j, opts.sup_halfwidth, opts.sup_points);
    best = std::max(best, std::pow(2.0, j * s) * b);
  }
  return best;
}

double lip_norm_complex(const std::vector<std::complex<double>>& coef, const BasisSpec& basis,
                        double s, const LipNormOptions& opts) {
  // reuse the real path on the two components; |z| <= |re| + |im| and each
  // component is a genuine sup, so take the 2-norm combination per block
  CoefVec re(make_basis(basis.dim(), basis.max_degree()));
  CoefVec im(re.basis);
  for (std::size_t i = 0; i < coef.size(); ++i) {
    re.values[i] = coef[i].real();
    im.values[i] = coef[i].imag();
  }
  AdmissibleSystem sys;
  double best = 0;
  for (int j = 0; j <= opts.j_max; ++j) {
    CoefVec pr = dyadic_multiplier_apply(sys, j, re);
    CoefVec pi = dyadic_multiplier_apply(sys, j, im);
    if (pr.l2_norm() == 0.0 && pi.l2_norm() == 0.0) continue;
    GridPtr g = Grid::uniform(basis.dim(), -opts.sup_halfwidth, opts.sup_halfwidth,
                              basis.dim() == 1 ? opts.sup_points : 101);
    GridFn vr = synthesize(pr, g);
    GridFn vi = synthesize(pi, g);
    double sup = 0;
    for (std::size_t i = 0; i < vr.values.size(); ++i)
      sup = std::max(sup, std::hypot(vr.values[i], vi.values[i]));
    best = std::max(best, std::pow(2.0, j * s) * sup);
  }
  return best;
}

std::vector<Ball> BallFamily::enumerate(int dim) const {
  std::vector<Ball> balls;
  std::vector<double> cs(std::size_t(centers_per_axis), 0.0);
  for (int i = 0; i < centers_per_axis; ++i)
    cs[std::size_t(i)] =
        centers_per_axis == 1 ? 0.0 : -extent + 2.0 * extent * i / (centers_per_axis - 1);
  auto add_center = [&](const Point& c) {
    double rho = critical_radius(c);
    double r_min = rho * r_min_factor;
    double ratio = std::pow(r_max / r_min, 1.0 / (radii_count - 1));
    double r = r_min;
    for (int k = 0; k < radii_count; ++k) {
      balls.push_back(Ball{c, r});
      r *= ratio;
    }
  };
  if (dim == 1) {
    for (double c : cs) add_center(Point{c});
  } else if (dim == 2) {
    for (double a : cs)
      for (double b : cs) add_center(Point{a, b});
  } else {
    for (double a : cs)
      for (double b : cs)
        for (double c : cs) add_center(Point{a, b, c});
  }
  return balls;
}

double bmo_norm(const GridFn& f, const BallFamily& family) {
  const Grid& g = *f.grid;
  double best = 0;
  for (const Ball& ball : family.enumerate(g.dim())) {
    KahanSum mass, weight;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!ball.contains(g.point(i))) continue;
      mass.add(g.weight(i) * f.values[i]);
      weight.add(g.weight(i));
    }
    double w = weight.value();
    if (w <= 0) continue;
    double mean = mass.value() / w;
    KahanSum osc, size;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!ball.contains(g.point(i))) continue;
      osc.add(g.weight(i) * std::abs(f.values[i] - mean));
      size.add(g.weight(i) * std::abs(f.values[i]));
    }
    best = std::max(best, osc.value() / w);
    if (ball.radius >= ball.rho()) best = std::max(best, size.value() / w);
  }
  return best;
}

double lip_or_bmo_norm(const CoefVec& c, double s, GridPtr grid, const LipNormOptions& opts,
                       const BallFamily& family) {
  if (s > 0) return lip_norm(c, s, opts);
  GridFn f = synthesize(c, std::move(grid));
  return bmo_norm(f, family);
}

double campanato_norm(const CoefVec& c, double alpha, int N, const BallFamily& family,
                      const CampanatoOptions& opts) {
  const int dim = c.basis->dim();
  if (dim != 1)
    throw std::invalid_argument("campanato_norm: ball quadrature implemented for dim 1");
  double best = 0;
  for (const Ball& ball : family.enumerate(dim)) {
    double r2 = ball.radius * ball.radius;
    CoefVec damped = multiplier_apply(
        [&](double lam) { return std::pow(1.0 - std::exp(-r2 * lam), N); }, c);
    QuadratureRule q =
        gauss_legendre_rule(ball.center[0] - ball.radius, ball.center[0] + ball.radius,
                            opts.ball_quad_points, 1);
    KahanSum s;
    for (std::size_t i = 0; i < q.size(); ++i) {
      double v = synthesize_at(damped, Point{q.nodes[i]});
      s.add(q.weights[i] * v * v);
    }
    double avg = s.value() / ball.volume();
    best = std::max(best, std::pow(ball.volume(), -alpha) * std::sqrt(std::max(avg, 0.0)));
  }
  return best;
}

CoefVec project_local(const std::function<double(const Point&)>& f, double lo, double hi,
                      int max_degree) {
  // resolve the basis oscillation: wavelength ~ 2 pi / sqrt(2K+1)
  double wavelength = 2.0 * M_PI / std::sqrt(2.0 * max_degree + 1.0);
  int panels = std::max(4, int(std::ceil((hi - lo) / (2.0 * wavelength))));
  QuadratureRule q = gauss_legendre_rule(lo, hi, 24, panels);
  CoefVec c(make_basis(1, max_degree));
  std::vector<KahanSum> acc(c.values.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    double fv = f(Point{q.nodes[i]});
    if (fv == 0.0) continue;
    auto h = hermite_all_1d(max_degree, q.nodes[i]);
    double w = q.weights[i];
    for (std::size_t k = 0; k < c.values.size(); ++k) acc[k].add(w * fv * h[k]);
  }
  for (std::size_t k = 0; k < c.values.size(); ++k) c.values[k] = acc[k].value();
  return c;
}

}  // namespace hak
