#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hak/bound.hpp"
#include "hak/core.hpp"

namespace hak {

/// Declared symbol-class parameters (m, K, N, rho, delta); K or N may be
/// infinite. Membership is checked, never assumed.
struct SymbolClass {
  double m = 0;
  double max_diff_order = std::numeric_limits<double>::infinity();   // K
  double max_deriv_order = std::numeric_limits<double>::infinity();  // N
  double rho = 1;
  double delta = 0;
};

/// sigma(x, xi) defining a pseudo-multiplier sigma(x, L).
struct PseudoSymbol {
  using C = std::complex<double>;

  std::string name;
  SymbolClass declared;
  bool x_independent = false;
  std::function<C(const Point&, const MultiIndex&)> eval;
  /// Analytic x-derivative d^nu sigma, when available; empty -> central
  /// differences with step 1e-4 * max(1, |x|).
  std::function<C(const MultiIndex& nu, const Point&, const MultiIndex&)> eval_dx;

  C dx(const MultiIndex& nu, const Point& x, const MultiIndex& xi) const;
};

/// Forward difference in xi: prod_i Delta_i^{kappa_i}, exact integer shifts.
PseudoSymbol::C symbol_forward_difference(const PseudoSymbol& sigma, const MultiIndex& kappa,
                                          const Point& x, const MultiIndex& xi);
PseudoSymbol::C symbol_dx_forward_difference(const PseudoSymbol& sigma, const MultiIndex& nu,
                                             const MultiIndex& kappa, const Point& x,
                                             const MultiIndex& xi);

/// Built-in registry (CLI-facing): constant, eig_power, riesz, hormander,
/// oscillating. Unknown keys throw with the list of valid ones.
PseudoSymbol make_symbol(const std::string& key, const std::vector<double>& params, int dim);
std::vector<std::string> symbol_registry_keys();

struct SymbolCheckOptions {
  double box_halfwidth = 4.0;
  int x_points_per_axis = 9;
  int xi_max_order = 64;
  int max_diff_check = 2;   // |kappa| cap actually sampled
  int max_deriv_check = 2;  // |nu| cap actually sampled
};

/// sup over samples of |d^nu Delta^kappa sigma| / <xi>^{m/2 + delta|nu|/2 -
/// rho|kappa|} for all orders within the declared class and the sampled cap.
BoundReport symbol_class_check(const PseudoSymbol& sigma, int dim,
                               const SymbolCheckOptions& opts = {});

}  // namespace hak
