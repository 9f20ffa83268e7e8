#pragma once

#include <vector>

#include "hak/core.hpp"

namespace hak {

/// One-dimensional rule for integrals of Hermite-function products against
/// plain Lebesgue measure: the Gauss--Hermite weights carry the e^{t^2}
/// compensation folded in. Exact for h_j*h_k with j,k <= precision_degree.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int precision_degree = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Golub--Welsch nodes (with one Newton polish pass) and compensated weights
/// w_i = 1 / (m * h_{m-1}(t_i)^2).
QuadratureRule gauss_hermite_rule(int m);

/// max_{j,k <= maxdeg} |sum_i w_i h_j(t_i) h_k(t_i) - delta_jk|.
double orthonormality_residual(const QuadratureRule& rule, int maxdeg);

/// Panel-composite Gauss--Legendre rule on [a,b] (for ball/annulus integrals).
QuadratureRule gauss_legendre_rule(double a, double b, int points_per_panel, int panels = 1);

}  // namespace hak
