#pragma once

#include <string>
#include <vector>

#include "hak/grid.hpp"

namespace hak {

enum class BallRegime { small, medium, oversized };

/// Ball with its critical radius and size regime relative to it.
struct Ball {
  Point center;
  double radius = 1;

  double rho() const { return critical_radius(center); }
  BallRegime regime() const {
    double p = rho();
    if (radius < p / 8) return BallRegime::small;
    if (radius <= p / 2) return BallRegime::medium;
    return BallRegime::oversized;
  }
  int dim() const { return center.dim(); }
  /// Lebesgue volume c_n r^n.
  double volume(double scale = 1.0) const;
  bool contains(const Point& x, double scale = 1.0) const {
    return dist(x, center) <= scale * radius * (1.0 + 1e-12);
  }
  /// Annulus index: 0 inside B, else smallest j with |x-c| <= 2^j r.
  int annulus_of(const Point& x) const;
};

/// Index bundle (p, q, M, delta, omega, s, eps) with floor(omega) and
/// omega* = omega - floor(omega).
struct SpaceParams {
  double p = 1;
  double q = 2;  // use INFINITY for the sup norm
  int M = 0;
  double delta = 1;
  double omega = 0;
  double s = 0;
  double eps = 1;

  int floor_omega() const { return int(std::floor(omega)); }
  double omega_star() const { return omega - floor_omega(); }
  /// Molecule-to-atom decomposition needs delta > max{0, floor(omega) -
  /// n(1/p - 1)}.
  bool decomposition_admissible(int dim) const {
    return delta > std::max(0.0, floor_omega() - dim * (1.0 / p - 1.0));
  }
};

/// L^q norm over a weighted point subset; q = INFINITY -> sup.
double lq_norm_subset(const GridFn& f, const std::vector<std::size_t>& idx, double q);

/// Smooth cutoff chi for B(x0, rho(x0)): 1 on the ball, 0 outside twice it,
/// with |d^gamma chi| <= C rho^{-|gamma|} by scaling.
double bump_value(const Point& x0, const Point& x);
/// g_{x0,alpha}(x) = (x - x0)^alpha chi(x).
double moment_bump_value(const Point& x0, const MultiIndex& alpha, const Point& x);

GridFn make_bump(const Point& x0, GridPtr grid);
GridFn make_g(const Point& x0, const MultiIndex& alpha, GridPtr grid);

/// One measured condition of an atom/molecule contract.
struct ConditionReport {
  std::string name;
  double measured = 0;
  double bound = 0;
  bool pass = false;
  bool required = true;
};

struct ValidationReport {
  std::vector<ConditionReport> items;
  BallRegime regime = BallRegime::medium;
  bool pass = false;

  void add(std::string name, double measured, double bound, bool required = true,
           double slack = 1.0 + 1e-9);
};

/// (p,q,M)-atom contract: support, L^q size, and (small balls only) vanishing
/// moments up to M.
ValidationReport validate_atom(const GridFn& a, const Ball& ball, const SpaceParams& params,
                               double moment_tol = 1e-9);

/// (p,q,delta,omega)-molecule contract: per-annulus L^q decay and (small
/// balls) approximate moments up to floor(omega).
ValidationReport validate_molecule(const GridFn& m, const Ball& ball, const SpaceParams& params,
                                   int J);

/// Composite Gauss-Legendre grid organized by annulus (dim 1): panels align
/// with every dyadic boundary, so annulus integrals never straddle a cut.
GridPtr make_annulus_grid(const Ball& ball, int J, int points_per_panel = 32,
                          int panels_per_interval = 2);

/// indices of grid points lying in U_j(B), j = 0..J
std::vector<std::vector<std::size_t>> bin_by_annulus(const Grid& grid, const Ball& ball, int J);

/// Smooth compactly supported atom on B: a bump times polynomial with
/// moments up to M projected away, L^q-normalized to the atom budget.
GridFn make_smooth_atom(const Ball& ball, const SpaceParams& params, GridPtr grid,
                        unsigned variant = 0);

/// Synthetic molecule shapes ("dipole", "gauss", "wiggle") scaled to sit
/// exactly at the molecule budget.
GridFn make_synthetic_molecule(const Ball& ball, const SpaceParams& params, GridPtr grid,
                               const std::string& shape, int J);

}  // namespace hak
