#include <cmath>

#include "hak/cancellation.hpp"
#include "hak/hermite.hpp"
#include "hak/verify.hpp"

namespace hak {

namespace {

std::vector<double> axis_points(double halfwidth, int count) {
  std::vector<double> xs(std::size_t(count), 0.0);
  for (int i = 0; i < count; ++i)
    xs[std::size_t(i)] = count == 1 ? 0.0 : -halfwidth + 2.0 * halfwidth * i / (count - 1);
  return xs;
}

constexpr double kHeatGaussianC = 8.0;  // pinned constant in e^{-|x-y|^2/(ct)}

}  // namespace

BoundReport check_projector_growth(int dim, int j_max, double mu, const SampleBox& box) {
  auto sample = [&](int count) {
    std::vector<RatioSample> rows;
    for (int j = 0; j <= j_max; ++j) {
      int N = int(std::pow(4.0, j));
      for (double xv : axis_points(box.halfwidth, count)) {
        Point x = dim == 1 ? Point{xv} : Point{xv, 0.3 * xv};
        RatioSample r;
        r.label = "j=" + std::to_string(j) + ";x=" + format_double(xv);
        r.lhs = projector_diag(N, x);
        r.rhs = std::pow(2.0, j * dim) *
                std::pow(1.0 + (1.0 + x.norm()) / std::pow(2.0, j), -mu);
        rows.push_back(r);
      }
    }
    return rows;
  };
  BoundReport rep = make_bound_report("projector_growth", sample(box.points_per_axis),
                                      sample(2 * box.points_per_axis - 1));
  rep.add_param("mu", mu);
  rep.add_param("j_max", double(j_max));
  rep.add_param("dim", double(dim));
  return rep;
}

namespace {

// Below this the right side cannot be confirmed in doubles: the truncated
// series bottoms out near 1e-16 absolute, so ratios against smaller targets
// measure roundoff, not the kernel.
constexpr double kHeatBoundFloor = 1e-13;

std::vector<RatioSample> heat_bound_samples(int dim, int k, const MultiIndex* gamma, double N,
                                            const SampleBox& box, double t_lo, double t_hi,
                                            int xc, int tc) {
  std::vector<RatioSample> rows;
  auto ts = default_time_sample(tc, t_lo, t_hi);
  auto xs = axis_points(box.halfwidth, xc);
  for (double t : ts) {
    for (double xv : xs) {
      for (double yv : xs) {
        Point x = dim == 1 ? Point{xv} : Point{xv, -0.4 * xv};
        Point y = dim == 1 ? Point{yv} : Point{yv, 0.2 * yv};
        RatioSample r;
        r.label = "t=" + format_double(t) + ";x=" + format_double(xv) +
                  ";y=" + format_double(yv);
        double d2 = (x - y).norm2();
        double power = gamma ? 0.5 * (dim + gamma->order()) : 0.5 * dim + k;
        r.rhs = std::exp(-d2 / (kHeatGaussianC * t)) / std::pow(t, power) *
                std::pow(1.0 + std::sqrt(t) / critical_radius(x) +
                             std::sqrt(t) / critical_radius(y),
                         -N);
        if (r.rhs < kHeatBoundFloor) continue;
        double lhs = gamma ? heat_kernel_dy(*gamma, t, x, y) : heat_kernel_Lk(k, t, x, y);
        r.lhs = std::abs(lhs);
        rows.push_back(r);
      }
    }
  }
  return rows;
}

}  // namespace

BoundReport check_heat_kernel_bound(int dim, int k, double N, const SampleBox& box, double t_lo,
                                    double t_hi) {
  const int tc = 9;
  BoundReport rep = make_bound_report(
      "heat_kernel_bound",
      heat_bound_samples(dim, k, nullptr, N, box, t_lo, t_hi, box.points_per_axis, tc),
      heat_bound_samples(dim, k, nullptr, N, box, t_lo, t_hi, 2 * box.points_per_axis - 1,
                         2 * tc));
  rep.add_param("k", double(k));
  rep.add_param("N", N);
  rep.add_param("c", kHeatGaussianC);
  rep.add_param("rhs_floor", 1e-13);
  return rep;
}

BoundReport check_heat_kernel_deriv_bound(int dim, const MultiIndex& gamma, double N,
                                          const SampleBox& box, double t_lo, double t_hi) {
  const int tc = 9;
  BoundReport rep = make_bound_report(
      "heat_kernel_deriv_bound",
      heat_bound_samples(dim, 0, &gamma, N, box, t_lo, t_hi, box.points_per_axis, tc),
      heat_bound_samples(dim, 0, &gamma, N, box, t_lo, t_hi, 2 * box.points_per_axis - 1,
                         2 * tc));
  rep.add_param("|gamma|", double(gamma.order()));
  rep.add_param("N", N);
  rep.add_param("c", kHeatGaussianC);
  rep.add_param("rhs_floor", 1e-13);
  return rep;
}

namespace {

// (sum_{xi in I_j} |integral|^2)^{1/2} with integral supplied per xi
double block_l2(int j, int dim, const std::function<double(const MultiIndex&)>& val) {
  BlockRange r = dyadic_block_range(j, dim);
  if (r.hi < r.lo) return 0.0;
  KahanSum s;
  for (const auto& xi : indices_with_order_between(dim, r.lo, r.hi)) {
    double v = val(xi);
    s.add(v * v);
  }
  return std::sqrt(s.value());
}

}  // namespace

BoundReport check_block_coefficient_decay(BlockDecayVariant variant,
                                          const BlockDecayOptions& opts) {
  const int dim = opts.beta.dim();
  if (dim != 1)
    throw std::invalid_argument("check_block_coefficient_decay: implemented for dim 1");

  auto run = [&](const std::vector<double>& centers, int j_hi) {
    std::vector<RatioSample> rows;
    for (double c0 : centers) {
      Point x0{c0};
      double rho = critical_radius(x0);
      int top_pad = opts.word ? opts.word->order() : 0;
      int top = dyadic_block_range(j_hi, dim).hi + top_pad + 1;

      // plain coefficients of g_{x0,beta} up to the top block
      CoefVec cg = project_local(
          [&](const Point& y) { return moment_bump_value(x0, opts.beta, y); }, c0 - 2.0 * rho,
          c0 + 2.0 * rho, top);

      // symbol-weighted integrals need a fresh quadrature per xi
      QuadratureRule q;
      std::vector<std::vector<double>> htab;
      if (variant == BlockDecayVariant::with_symbol ||
          variant == BlockDecayVariant::with_symbol_averaged) {
        double wl = 2.0 * M_PI / std::sqrt(2.0 * top + 1.0);
        int panels = std::max(4, int(std::ceil(4.0 * rho / (2.0 * wl))));
        q = gauss_legendre_rule(c0 - 2.0 * rho, c0 + 2.0 * rho, 24, panels);
        htab.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) htab[i] = hermite_all_1d(top, q.nodes[i]);
      }

      for (int j = opts.j_lo; j <= j_hi; ++j) {
        double lhs = 0, rhs = 1;
        switch (variant) {
          case BlockDecayVariant::plain: {
            lhs = block_l2(j, dim, [&](const MultiIndex& xi) { return cg.at(xi); });
            rhs = std::pow(rho, opts.beta.order() + dim - 2.0 * opts.N) *
                  std::pow(2.0, -j * (2.0 * opts.N - 0.5 * dim));
            break;
          }
          case BlockDecayVariant::with_symbol:
          case BlockDecayVariant::with_symbol_averaged: {
            const PseudoSymbol& sig = *opts.symbol;
            lhs = block_l2(j, dim, [&](const MultiIndex& xi) {
              KahanSum sre, sim;
              for (std::size_t i = 0; i < q.size(); ++i) {
                Point y{q.nodes[i]};
                double gv = moment_bump_value(x0, opts.beta, y);
                if (gv == 0.0) continue;
                auto sv = sig.eval(y, xi);
                double whv = q.weights[i] * gv * htab[i][std::size_t(xi[0])];
                sre.add(whv * sv.real());
                sim.add(whv * sv.imag());
              }
              return std::hypot(sre.value(), sim.value());
            });
            if (variant == BlockDecayVariant::with_symbol) {
              double delta = sig.declared.delta;
              rhs = std::pow(rho, opts.beta.order() + dim - 2.0 * opts.N) *
                    std::pow(2.0, -j * (2.0 * opts.N - 0.5 * dim)) *
                    std::pow(std::max(1.0, std::pow(2.0, j) * rho), 2.0 * opts.N * delta);
            } else {
              int Nt = (dim + opts.M) / 2 + 1;
              rhs = std::pow(rho, opts.beta.order() + dim - 2.0 * Nt) *
                    std::pow(2.0, -j * (2.0 * Nt - 0.5 * dim));
            }
            break;
          }
          case BlockDecayVariant::with_ladder_word: {
            const LadderWord& w = *opts.word;
            lhs = block_l2(j, dim, [&](const MultiIndex& xi) {
              double f = ladder_factor(w, xi);
              if (f == 0.0) return 0.0;
              bool ok = true;
              MultiIndex sh = word_shift(w, xi, ok);
              if (!ok) return 0.0;
              return f * cg.at(sh);
            });
            rhs = std::pow(rho, opts.beta.order() + dim - 2.0 * opts.N) *
                  std::pow(2.0, -j * (2.0 * opts.N - 0.5 * dim - w.order()));
            break;
          }
        }
        RatioSample r;
        r.label = "x0=" + format_double(c0) + ";j=" + std::to_string(j);
        r.lhs = lhs;
        r.rhs = rhs;
        rows.push_back(r);
      }
    }
    return rows;
  };

  // refinement: midpoint centers added, one more dyadic level
  std::vector<double> refined = opts.centers;
  for (std::size_t i = 0; i + 1 < opts.centers.size(); ++i)
    refined.push_back(0.5 * (opts.centers[i] + opts.centers[i + 1]));
  BoundReport rep = make_bound_report("block_coefficient_decay", run(opts.centers, opts.j_hi),
                                      run(refined, opts.j_hi + 1));
  rep.add_param("variant", variant == BlockDecayVariant::plain
                               ? "plain"
                               : variant == BlockDecayVariant::with_symbol
                                     ? "symbol"
                                     : variant == BlockDecayVariant::with_symbol_averaged
                                           ? "symbol_averaged"
                                           : "ladder");
  rep.add_param("N", double(opts.N));
  rep.add_param("|beta|", double(opts.beta.order()));
  return rep;
}

std::vector<BoundReport> grade_hczo(const KernelEvaluator& kernel, int M, double eps, double mu,
                                    const HczoOptions& opts) {
  const int dim = kernel.dim;
  if (dim != 1) throw std::invalid_argument("grade_hczo: sampling implemented for dim 1");
  double min_sep = opts.min_separation > 0
                       ? opts.min_separation
                       : riesz_kernel_min_separation(kernel.truncation);

  std::vector<BoundReport> out;

  // (i) L^2 bound: the operator-norm estimate itself
  {
    std::vector<RatioSample> one{{"l2", kernel.l2_norm(), 1.0}};
    BoundReport rep = make_bound_report("hczo_l2", one, one);
    out.push_back(rep);
  }

  // (ii) size with critical-radius damping
  auto size_rows = [&](int count) {
    std::vector<RatioSample> rows;
    auto xs = axis_points(opts.box.halfwidth, count);
    for (double xv : xs) {
      for (double yv : xs) {
        if (std::abs(xv - yv) < min_sep) continue;
        Point x{xv}, y{yv};
        double d = std::abs(xv - yv);
        RatioSample r;
        r.label = "x=" + format_double(xv) + ";y=" + format_double(yv);
        r.lhs = std::abs(kernel.value(x, y));
        r.rhs = std::pow(d, -dim) * std::pow(1.0 + d / critical_radius(y), -(M + eps)) *
                std::pow(1.0 + d / critical_radius(x) + d / critical_radius(y), -mu);
        rows.push_back(r);
      }
    }
    return rows;
  };
  {
    BoundReport rep = make_bound_report("hczo_size", size_rows(opts.box.points_per_axis),
                                        size_rows(2 * opts.box.points_per_axis - 1));
    rep.add_param("M", double(M));
    rep.add_param("eps", eps);
    rep.add_param("mu", mu);
    rep.add_param("min_separation", min_sep);
    out.push_back(rep);
  }

  // (iii)/(iv): Hoelder continuity in each slot at order M. The sup lives
  // near the admissible-region boundary |x-y| = 2|x-x'|, so the displaced
  // point is sampled at fixed fractions of the allowed distance; refinement
  // densifies fractions and the (x,y) grid, never the fraction cap.
  auto holder_rows = [&](int count, int frac_count, bool first_slot) {
    std::vector<RatioSample> rows;
    auto xs = axis_points(opts.box.halfwidth, count);
    auto gammas = indices_with_order_between(dim, M, M);
    std::vector<double> fracs(std::size_t(frac_count), 0.0);
    for (int i = 0; i < frac_count; ++i)
      fracs[std::size_t(i)] = 0.97 * (i + 1) / frac_count;
    for (double a : xs) {
      for (double b : xs) {
        double d = std::abs(a - b);
        if (d < std::max(min_sep, 1e-6)) continue;
        for (double f : fracs) {
          for (int dir = -1; dir <= 1; dir += 2) {
            double a2 = a + dir * f * 0.5 * d;
            double d_arg = std::abs(a - a2);
            if (d_arg == 0.0 || d <= 2.0 * d_arg) continue;
            RatioSample r;
            double worst = 0;
            for (const auto& g : gammas) {
              MultiIndex zero(dim, 0);
              std::complex<double> k1, k2;
              if (first_slot) {
                k1 = kernel.deriv(g, zero, Point{a}, Point{b});
                k2 = kernel.deriv(g, zero, Point{a2}, Point{b});
              } else {
                k1 = kernel.deriv(zero, g, Point{b}, Point{a});
                k2 = kernel.deriv(zero, g, Point{b}, Point{a2});
              }
              worst = std::max(worst, std::abs(k1 - k2));
            }
            r.label = (first_slot ? "x=" : "y=") + format_double(a) +
                      ";prime=" + format_double(a2) + ";other=" + format_double(b);
            r.lhs = worst;
            r.rhs = std::pow(d_arg, eps) / std::pow(d, dim + M + eps);
            rows.push_back(r);
          }
        }
      }
    }
    return rows;
  };
  for (bool first : {true, false}) {
    int base = opts.box.points_per_axis;
    BoundReport rep = make_bound_report(first ? "hczo_holder_x" : "hczo_holder_y",
                                        holder_rows(base, 4, first),
                                        holder_rows(2 * base - 1, 8, first));
    rep.add_param("M", double(M));
    rep.add_param("eps", eps);
    out.push_back(rep);
  }
  return out;
}

BoundReport check_kernel_decay(const KernelEvaluator& kernel, const MultiIndex& gamma,
                               const MultiIndex& eta, double mu, const HczoOptions& opts) {
  const int dim = kernel.dim;
  double min_sep = opts.min_separation > 0
                       ? opts.min_separation
                       : riesz_kernel_min_separation(kernel.truncation);
  auto rows_for = [&](int count) {
    std::vector<RatioSample> rows;
    auto xs = axis_points(opts.box.halfwidth, count);
    for (double xv : xs) {
      for (double yv : xs) {
        double d = std::abs(xv - yv);
        if (d < min_sep) continue;
        Point x{xv}, y{yv};
        RatioSample r;
        r.label = "x=" + format_double(xv) + ";y=" + format_double(yv);
        r.lhs = std::abs(kernel.deriv(gamma, eta, x, y));
        r.rhs = std::pow(d, -(dim + gamma.order() + eta.order())) *
                std::pow(1.0 + d / critical_radius(x) + d / critical_radius(y), -mu);
        rows.push_back(r);
      }
    }
    return rows;
  };
  BoundReport rep = make_bound_report("kernel_decay(" + kernel.name + ")",
                                      rows_for(opts.box.points_per_axis),
                                      rows_for(2 * opts.box.points_per_axis - 1));
  rep.add_param("|gamma|", double(gamma.order()));
  rep.add_param("|eta|", double(eta.order()));
  rep.add_param("mu", mu);
  return rep;
}

namespace {

template <typename PieceDeriv>
DyadicBoundResult dyadic_bounds_impl(const std::string& name, int dim, double m_order, double rho_par,
                                     const DyadicBoundSpec& spec, int j_lo, int j_hi, double mu,
                                     const SampleBox& box, PieceDeriv&& piece) {
  DyadicBoundResult result;
  // pieces oscillate at wavelength ~ 2^{-j}; sample displacements from a
  // quarter wavelength outward geometrically so every frequency regime is
  // visited, then refine by densifying both the base grid and the
  // displacement ladder
  auto rows_for = [&](int j, int base_count, int disp_count) {
    std::vector<RatioSample> rows;
    auto xs = axis_points(box.halfwidth, base_count);
    double scale = std::pow(2.0, j * (dim + m_order + spec.gamma.order() + spec.eta.order() +
                                      spec.N * (1.0 - 2.0 * rho_par)));
    double d_lo = 0.25 * std::pow(2.0, -j);
    double d_hi = 2.0 * box.halfwidth;
    for (double xv : xs) {
      for (int i = 0; i < disp_count; ++i) {
        double d = d_lo * std::pow(d_hi / d_lo, double(i) / (disp_count - 1));
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          double yv = xv + sgn * d;
          Point x{xv}, y{yv};
          RatioSample r;
          r.label = "x=" + format_double(xv) + ";y=" + format_double(yv);
          r.lhs = std::pow(d, spec.N) * std::abs(piece(j, x, y));
          r.rhs = scale * std::pow(1.0 + std::pow(2.0, -j) / critical_radius(x) +
                                       std::pow(2.0, -j) / critical_radius(y),
                                   -mu);
          rows.push_back(r);
        }
      }
      // the diagonal itself matters for N = 0
      if (spec.N == 0) {
        RatioSample r;
        r.label = "x=" + format_double(xv) + ";y=" + format_double(xv);
        r.lhs = std::abs(piece(j, Point{xv}, Point{xv}));
        r.rhs = scale * std::pow(1.0 + 2.0 * std::pow(2.0, -j) / critical_radius(Point{xv}), -mu);
        rows.push_back(r);
      }
    }
    return rows;
  };
  double cmin = INFINITY, cmax = 0;
  for (int j = j_lo; j <= j_hi; ++j) {
    BoundReport rep =
        make_bound_report(name + " j=" + std::to_string(j),
                          rows_for(j, box.points_per_axis, 48),
                          rows_for(j, 2 * box.points_per_axis - 1, 96));
    rep.add_param("N", double(spec.N));
    rep.add_param("mu", mu);
    cmin = std::min(cmin, rep.constant);
    cmax = std::max(cmax, rep.constant);
    result.per_j.push_back(std::move(rep));
  }
  result.cross_j_ratio = cmin > 0 ? cmax / cmin : INFINITY;
  result.stable = std::isfinite(result.cross_j_ratio) && result.cross_j_ratio <= 3.0;
  return result;
}

}  // namespace

DyadicBoundResult check_dyadic_kernel_bounds_pseudo(const PseudoSymbol& sigma,
                                                    const DyadicBoundSpec& spec, int j_lo,
                                                    int j_hi, double mu, const SampleBox& box) {
  AdmissibleSystem sys;
  return dyadic_bounds_impl(
      "dyadic_pseudo(" + sigma.name + ")", 1, sigma.declared.m, sigma.declared.rho, spec, j_lo,
      j_hi, mu, box, [&sigma, &sys, &spec](int j, const Point& x, const Point& y) {
        if (spec.gamma.order() == 0 && spec.eta.order() == 0)
          return std::abs(pseudo_kernel_piece(sigma, sys, j, x, y));
        return std::abs(pseudo_kernel_piece_deriv(sigma, sys, j, spec.gamma, spec.eta, x, y));
      });
}

DyadicBoundResult check_dyadic_kernel_bounds_riesz(const RieszOp& op, const DyadicBoundSpec& spec,
                                                   int j_lo, int j_hi, double mu,
                                                   const SampleBox& box) {
  AdmissibleSystem sys;
  return dyadic_bounds_impl(
      "dyadic_riesz", 1, 0.0, 1.0, spec, j_lo, j_hi, mu, box,
      [&op, &sys, &spec](int j, const Point& x, const Point& y) {
        if (spec.gamma.order() == 0 && spec.eta.order() == 0)
          return riesz_kernel_piece(op, sys, j, x, y);
        return riesz_kernel_piece_deriv(op, sys, j, spec.gamma, spec.eta, x, y);
      });
}

CampanatoEquivResult check_campanato_equivalence(double s, int N, const BallFamily& family) {
  CampanatoEquivResult res;
  if (!(N >= 1 + int(std::floor(s / 2.0))))
    throw std::invalid_argument("check_campanato_equivalence: needs N >= 1 + floor(s/2)");

  // test set: low Hermite modes, localized moment bumps, an off-scale Gaussian
  std::vector<std::pair<std::string, CoefVec>> fns;
  fns.emplace_back("h0", CoefVec::unit(make_basis(1, 0), MultiIndex{0}));
  fns.emplace_back("h3", CoefVec::unit(make_basis(1, 3), MultiIndex{3}));
  for (double c0 : {0.0, 2.0}) {
    Point x0{c0};
    double rho = critical_radius(x0);
    CoefVec g = project_local(
        [&](const Point& y) { return moment_bump_value(x0, MultiIndex{0}, y); }, c0 - 2.0 * rho,
        c0 + 2.0 * rho, 160);
    fns.emplace_back("bump@" + format_double(c0), std::move(g));
  }
  {
    CoefVec gs = project_local(
        [&](const Point& y) { return std::exp(-0.5 * std::pow(y[0] / 1.3, 2)); }, -9.0, 9.0, 160);
    fns.emplace_back("gauss1.3", std::move(gs));
  }

  LipNormOptions lip;
  lip.j_max = 4;
  lip.sup_points = 801;

  auto ratios = [&](const BallFamily& fam) {
    double lo = INFINITY, hi = 0;
    res.per_function_ratio.clear();
    for (const auto& [name, c] : fns) {
      double ln = lip_norm(c, s, lip);
      double cn = campanato_norm(c, s, N, fam);
      if (cn <= 0 || ln <= 0) continue;
      double r = ln / cn;
      res.per_function_ratio.emplace_back(name, r);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return std::make_pair(lo, hi);
  };

  auto [lo, hi] = ratios(family);
  res.ratio_min = lo;
  res.ratio_max = hi;
  auto [rlo, rhi] = ratios(family.refined());
  res.refined_ratio_min = rlo;
  res.refined_ratio_max = rhi;
  res.window_ok = lo >= 1.0 / 50.0 && hi <= 50.0 && rlo >= 1.0 / 50.0 && rhi <= 50.0;
  // doubling the family can only increase the campanato norm (sup); demand
  // the window is stable within 25%
  res.stable = rhi >= hi / 1.25 && rlo <= lo * 1.25 && (hi / lo) <= 1.5 * (rhi / rlo) &&
               (rhi / rlo) <= 1.5 * (hi / lo);
  return res;
}

}  // namespace hak
