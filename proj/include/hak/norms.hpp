#pragma once

#include <complex>
#include <functional>

#include "hak/admissible.hpp"
#include "hak/coef.hpp"
#include "hak/spaces.hpp"

namespace hak {

/// Geometric time sample for the heat maximal operator.
std::vector<double> default_time_sample(int count = 48, double t_min = 1e-4, double t_max = 10.0);

/// M f = max over the time sample of |e^{-tL} f| at grid points. A finite
/// sample under-estimates the true sup; callers compare against a doubled
/// sample for a refinement diagnostic.
GridFn maximal_function(const CoefVec& c, GridPtr grid,
                        const std::vector<double>& t_sample = default_time_sample());

/// ||M f||_{L^p} (quasi-norm for p < 1, direct |.|^p integration).
double hp_norm(const CoefVec& c, GridPtr grid, double p,
               const std::vector<double>& t_sample = default_time_sample());

struct LipNormOptions {
  int j_max = 6;
  double sup_halfwidth = 10.0;
  int sup_points = 1201;
};

/// sup_{0<=j<=j_max} 2^{js} sup_x |phi_j(sqrt L) f(x)|; s = 0 callers should
/// use bmo_norm instead (routing helper below).
double lip_norm(const CoefVec& c, double s, const LipNormOptions& opts = {});

/// Complex-coefficient variant (pseudo-multiplier images).
double lip_norm_complex(const std::vector<std::complex<double>>& coef, const BasisSpec& basis,
                        double s, const LipNormOptions& opts = {});

struct BallFamily {
  double extent = 8.0;          // centers fill [-extent, extent]^n
  int centers_per_axis = 33;
  int radii_count = 12;
  double r_min_factor = 1.0 / 16.0;  // r_min = rho(center) * factor
  double r_max = 4.0;

  std::vector<Ball> enumerate(int dim) const;
  BallFamily refined() const {
    BallFamily f = *this;
    f.centers_per_axis = 2 * f.centers_per_axis - 1;
    f.radii_count *= 2;
    return f;
  }
};

/// bmo norm estimate: max of mean oscillation over the family and plain
/// means over oversized balls (r >= rho(center)).
double bmo_norm(const GridFn& f, const BallFamily& family = {});

/// lip_norm with the s = 0 -> bmo routing; f sampled on `grid` when needed.
double lip_or_bmo_norm(const CoefVec& c, double s, GridPtr grid, const LipNormOptions& opts = {},
                       const BallFamily& family = {});

struct CampanatoOptions {
  int ball_quad_points = 24;
};

/// sup_B |B|^{-alpha} ( avg_B |(I - e^{r_B^2 L})^N f|^2 )^{1/2}; the
/// semigroup factor is the exact coefficient multiplier (1 - e^{-r^2
/// lambda})^N.
double campanato_norm(const CoefVec& c, double alpha, int N, const BallFamily& family = {},
                      const CampanatoOptions& opts = {});

/// Hermite coefficients of a compactly supported function by composite
/// Gauss-Legendre quadrature over [lo, hi] (dim 1), resolved for degrees up
/// to max_degree.
CoefVec project_local(const std::function<double(const Point&)>& f, double lo, double hi,
                      int max_degree);

}  // namespace hak
