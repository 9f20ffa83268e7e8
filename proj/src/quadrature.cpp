#include "hak/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hak/hermite.hpp"

namespace hak {

QuadratureRule gauss_hermite_rule(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite_rule: need m >= 1");
  QuadratureRule rule;
  rule.precision_degree = m - 1;
  rule.nodes.resize(std::size_t(m));
  rule.weights.resize(std::size_t(m));

  if (m == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 1.0 / hermite_eval_1d(0, 0.0) / hermite_eval_1d(0, 0.0);
    return rule;
  }

  // Jacobi matrix for the orthonormal Hermite family: zero diagonal,
  // off-diagonal sqrt(k/2).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    double b = std::sqrt(0.5 * k);
    J(k - 1, k) = b;
    J(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite_rule: eigen-decomposition failed");

  for (int i = 0; i < m; ++i) {
    double t = es.eigenvalues()(i);
    // Newton polish on h_m; h_m' = (sqrt(2m) h_{m-1} - sqrt(2m+2) h_{m+1})/2.
    for (int it = 0; it < 2; ++it) {
      auto h = hermite_all_1d(m + 1, t);
      double d = 0.5 * (std::sqrt(2.0 * m) * h[std::size_t(m) - 1] -
                        std::sqrt(2.0 * m + 2.0) * h[std::size_t(m) + 1]);
      if (d == 0.0) throw std::runtime_error("gauss_hermite_rule: zero derivative at node " +
                                             std::to_string(i));
      double step = h[std::size_t(m)] / d;
      t -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) break;
    }
    if (!std::isfinite(t))
      throw std::runtime_error("gauss_hermite_rule: node refinement diverged at index " +
                               std::to_string(i));
    rule.nodes[std::size_t(i)] = t;
    double hm1 = hermite_eval_1d(m - 1, t);
    rule.weights[std::size_t(i)] = 1.0 / (double(m) * hm1 * hm1);
  }
  // enforce exact symmetry of the rule
  std::vector<std::size_t> order(std::size_t(m), 0);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rule.nodes[a] < rule.nodes[b]; });
  QuadratureRule sorted;
  sorted.precision_degree = rule.precision_degree;
  for (std::size_t i : order) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  for (int i = 0; i < m / 2; ++i) {
    std::size_t j = std::size_t(m) - 1 - std::size_t(i);
    double t = 0.5 * (sorted.nodes[j] - sorted.nodes[std::size_t(i)]);
    sorted.nodes[std::size_t(i)] = -t;
    sorted.nodes[j] = t;
    double w = 0.5 * (sorted.weights[j] + sorted.weights[std::size_t(i)]);
    sorted.weights[std::size_t(i)] = w;
    sorted.weights[j] = w;
  }
  if (m % 2 == 1) sorted.nodes[std::size_t(m) / 2] = 0.0;
  return sorted;
}

double orthonormality_residual(const QuadratureRule& rule, int maxdeg) {
  const std::size_t npts = rule.size();
  std::vector<std::vector<double>> H(npts);
  for (std::size_t i = 0; i < npts; ++i) H[i] = hermite_all_1d(maxdeg, rule.nodes[i]);
  double worst = 0;
  for (int j = 0; j <= maxdeg; ++j) {
    for (int k = j; k <= maxdeg; ++k) {
      KahanSum s;
      for (std::size_t i = 0; i < npts; ++i)
        s.add(rule.weights[i] * H[i][std::size_t(j)] * H[i][std::size_t(k)]);
      double target = (j == k) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(s.value() - target));
    }
  }
  return worst;
}

QuadratureRule gauss_legendre_rule(double a, double b, int points_per_panel, int panels) {
  if (points_per_panel < 1 || panels < 1)
    throw std::invalid_argument("gauss_legendre_rule: bad point/panel count");
  const int m = points_per_panel;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    double bk = k / std::sqrt(4.0 * k * k - 1.0);
    J(k - 1, k) = bk;
    J(k, k - 1) = bk;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule rule;
  rule.precision_degree = 2 * m - 1;
  for (int p = 0; p < panels; ++p) {
    double lo = a + (b - a) * p / panels;
    double hi = a + (b - a) * (p + 1) / panels;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < m; ++i) {
      rule.nodes.push_back(mid + half * es.eigenvalues()(i));
      double v0 = es.eigenvectors()(0, i);
      rule.weights.push_back(2.0 * v0 * v0 * half);
    }
  }
  return rule;
}

}  // namespace hak
