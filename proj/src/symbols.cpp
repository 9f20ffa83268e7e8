#include "hak/symbols.hpp"

#include <cmath>

namespace hak {

using C = PseudoSymbol::C;

C PseudoSymbol::dx(const MultiIndex& nu, const Point& x, const MultiIndex& xi) const {
  if (nu.order() == 0) return eval(x, xi);
  if (eval_dx) return eval_dx(nu, x, xi);
  // central differences, one axis at a time
  int axis = -1;
  for (int i = 0; i < nu.dim(); ++i)
    if (nu[i] > 0) {
      axis = i;
      break;
    }
  MultiIndex rest = nu.shifted(axis, -1);
  double h = 1e-4 * std::max(1.0, std::abs(x[axis]));
  Point xp = x, xm = x;
  xp[axis] += h;
  xm[axis] -= h;
  return (dx(rest, xp, xi) - dx(rest, xm, xi)) / (2.0 * h);
}

C symbol_forward_difference(const PseudoSymbol& sigma, const MultiIndex& kappa, const Point& x,
                            const MultiIndex& xi) {
  return symbol_dx_forward_difference(sigma, MultiIndex(kappa.dim(), 0), kappa, x, xi);
}

C symbol_dx_forward_difference(const PseudoSymbol& sigma, const MultiIndex& nu,
                               const MultiIndex& kappa, const Point& x, const MultiIndex& xi) {
  if (kappa.order() == 0) return sigma.dx(nu, x, xi);
  int axis = -1;
  for (int i = 0; i < kappa.dim(); ++i)
    if (kappa[i] > 0) {
      axis = i;
      break;
    }
  MultiIndex rest = kappa.shifted(axis, -1);
  return symbol_dx_forward_difference(sigma, nu, rest, x, xi.shifted(axis, +1)) -
         symbol_dx_forward_difference(sigma, nu, rest, x, xi);
}

PseudoSymbol make_symbol(const std::string& key, const std::vector<double>& params, int dim) {
  PseudoSymbol s;
  s.name = key;
  auto param = [&params](std::size_t i, double dflt) {
    return i < params.size() ? params[i] : dflt;
  };
  if (key == "constant") {
    double v = param(0, 1.0);
    s.declared = SymbolClass{0, INFINITY, INFINITY, 1, 0};
    s.x_independent = true;
    s.eval = [v](const Point&, const MultiIndex&) { return C(v, 0); };
    s.eval_dx = [](const MultiIndex&, const Point&, const MultiIndex&) { return C(0, 0); };
    return s;
  }
  if (key == "eig_power" || key == "riesz") {
    // riesz: p = -|alpha|/2 supplied as alpha order
    double p = key == "riesz" ? -0.5 * param(0, 1.0) : param(0, -0.5);
    s.declared = SymbolClass{2.0 * p, INFINITY, INFINITY, 1, 0};
    s.x_independent = true;
    s.eval = [p](const Point&, const MultiIndex& xi) {
      return C(std::pow(xi.eigenvalue(), p), 0);
    };
    s.eval_dx = [](const MultiIndex&, const Point&, const MultiIndex&) { return C(0, 0); };
    return s;
  }
  if (key == "hormander") {
    // (2|xi|+n)^{m/2} (1 + sin(x_1)/2): order-m test symbol, rho=1, delta=0
    double m = param(0, 0.0);
    s.declared = SymbolClass{m, INFINITY, INFINITY, 1, 0};
    s.eval = [m](const Point& x, const MultiIndex& xi) {
      return C(std::pow(xi.eigenvalue(), 0.5 * m) * (1.0 + 0.5 * std::sin(x[0])), 0);
    };
    s.eval_dx = [m](const MultiIndex& nu, const Point& x, const MultiIndex& xi) {
      for (int i = 1; i < nu.dim(); ++i)
        if (nu[i] > 0) return C(0, 0);
      double base = std::pow(xi.eigenvalue(), 0.5 * m);
      if (nu.order() == 0) return C(base * (1.0 + 0.5 * std::sin(x[0])), 0);
      double trig = 0;  // d^k sin = sin(x + k pi/2)
      switch (nu[0] % 4) {
        case 0: trig = std::sin(x[0]); break;
        case 1: trig = std::cos(x[0]); break;
        case 2: trig = -std::sin(x[0]); break;
        case 3: trig = -std::cos(x[0]); break;
      }
      return C(base * 0.5 * trig, 0);
    };
    return s;
  }
  if (key == "oscillating") {
    // e^{i x_1}: multiplication operator in disguise
    s.declared = SymbolClass{0, INFINITY, INFINITY, 1, 0};
    s.eval = [](const Point& x, const MultiIndex&) {
      return std::exp(C(0, 1) * C(x[0], 0));
    };
    s.eval_dx = [](const MultiIndex& nu, const Point& x, const MultiIndex&) {
      for (int i = 1; i < nu.dim(); ++i)
        if (nu[i] > 0) return C(0, 0);
      return std::pow(C(0, 1), nu[0]) * std::exp(C(0, 1) * C(x[0], 0));
    };
    return s;
  }
  std::string keys;
  for (const auto& k : symbol_registry_keys()) keys += (keys.empty() ? "" : ", ") + k;
  throw std::invalid_argument("unknown symbol key '" + key + "'; registry: " + keys);
  (void)dim;
}

std::vector<std::string> symbol_registry_keys() {
  return {"constant", "eig_power", "riesz", "hormander", "oscillating"};
}

namespace {

std::vector<RatioSample> symbol_samples(const PseudoSymbol& sigma, int dim,
                                        const SymbolCheckOptions& opts, int x_pts, int xi_max) {
  std::vector<RatioSample> rows;
  const SymbolClass& cls = sigma.declared;
  int kmax = int(std::min<double>(opts.max_diff_check, cls.max_diff_order));
  int nmax = int(std::min<double>(opts.max_deriv_check, cls.max_deriv_order));

  std::vector<Point> xs;
  if (sigma.x_independent) {
    xs.push_back(Point(dim, 0.0));
  } else {
    double H = opts.box_halfwidth;
    int P = x_pts;
    if (dim == 1) {
      for (int i = 0; i < P; ++i) xs.push_back(Point{-H + 2 * H * i / (P - 1)});
    } else {
      for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j)
          xs.push_back(dim == 2 ? Point{-H + 2 * H * i / (P - 1), -H + 2 * H * j / (P - 1)}
                                : Point{-H + 2 * H * i / (P - 1), -H + 2 * H * j / (P - 1), 0.0});
    }
  }
  std::vector<MultiIndex> xis;
  for (int o = 0; o <= xi_max; o = (o < 8 ? o + 1 : o * 2)) xis.push_back(MultiIndex(dim, 0).shifted(0, o));

  for (int ko = 0; ko <= kmax; ++ko) {
    for (int no = 0; no <= nmax; ++no) {
      MultiIndex kappa(dim, 0), nu(dim, 0);
      kappa = kappa.shifted(0, ko);
      nu = nu.shifted(0, no);
      for (const auto& x : xs) {
        for (const auto& xi : xis) {
          double lhs = std::abs(symbol_dx_forward_difference(sigma, nu, kappa, x, xi));
          double bracket = 1.0 + xi.order();
          double rhs = std::pow(bracket, 0.5 * cls.m + 0.5 * cls.delta * no - cls.rho * ko);
          RatioSample r;
          r.label = "k=" + std::to_string(ko) + ";n=" + std::to_string(no) +
                    ";xi=" + std::to_string(xi.order()) + ";x0=" + format_double(x[0]);
          r.lhs = lhs;
          r.rhs = rhs;
          rows.push_back(r);
        }
      }
    }
  }
  return rows;
}

}  // namespace

BoundReport symbol_class_check(const PseudoSymbol& sigma, int dim,
                               const SymbolCheckOptions& opts) {
  auto base = symbol_samples(sigma, dim, opts, opts.x_points_per_axis, opts.xi_max_order);
  auto refined =
      symbol_samples(sigma, dim, opts, 2 * opts.x_points_per_axis - 1, 2 * opts.xi_max_order);
  BoundReport rep = make_bound_report("symbol_class(" + sigma.name + ")", base, refined);
  rep.add_param("m", sigma.declared.m);
  rep.add_param("rho", sigma.declared.rho);
  rep.add_param("delta", sigma.declared.delta);
  rep.add_param("dim", double(dim));
  return rep;
}

}  // namespace hak
