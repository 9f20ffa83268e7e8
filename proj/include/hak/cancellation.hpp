#pragma once

#include "hak/bound.hpp"
#include "hak/norms.hpp"
#include "hak/riesz.hpp"
#include "hak/symbols.hpp"
#include "hak/spaces.hpp"

namespace hak {

enum class FarFieldMode { comparable_radius, vanishing_moments, single_moment };

struct FarFieldOptions {
  double s = 1.0;
  double lambda = 0.5;            // mode (a): lambda rho <= r <= rho
  MultiIndex alpha{0};            // mode (c): the one surviving moment
  int x_count = 24;               // far-field sample points per side
  double x_reach = 8.0;           // farthest multiple of r_B sampled
  int t_count = 16;
  double t_min = 1e-3, t_max = 10.0;
  double hypothesis_tol = 1e-8;
};

/// Validates the hypothesis set for the requested mode, then measures
/// |e^{-tL} b(x)| against r^s |B|^{1-1/p} / |x-x_B|^{n+s} outside 4B.
/// The semigroup action is evaluated through the closed-form kernel, so all
/// t > 0 are on equal footing.
BoundReport far_field_heat_decay_check(const GridFn& b, const Ball& ball,
                                       const SpaceParams& params, FarFieldMode mode,
                                       const FarFieldOptions& opts = {});

struct CancellationOptions {
  std::vector<double> centers{0, 1, -1, 2, -2, 4, -4, 8, -8};
  int j_max = 5;
  LipNormOptions lip;
  BallFamily bmo_family;   // used when omega == 0
  bool use_adjoint = true; // T*[g] (Hardy route) vs T[g] (Lipschitz route)
};

/// sup over centers x0 of rho(x0)^{omega-|alpha|} || T*[(.-x0)^alpha chi]
/// ||_{Lambda^omega}; refinement doubles the Lipschitz sup grid and extends
/// j_max by one.
BoundReport cancellation_functional(const CoefOperator& T, double omega, const MultiIndex& alpha,
                                    const CancellationOptions& opts = {});

/// Pseudo-multiplier variant: the operator is the truncated matrix
/// T_{eta,xi} = <sigma(.,xi) h_xi, h_eta>, its adjoint the conjugate
/// transpose (exact at the truncation level). Coarse dyadic range only: the
/// matrix is dense in the truncation degree.
BoundReport cancellation_functional_pseudo(const PseudoSymbol& sigma, double omega,
                                           const MultiIndex& alpha,
                                           const CancellationOptions& opts = {});

}  // namespace hak
