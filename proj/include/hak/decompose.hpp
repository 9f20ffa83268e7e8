#pragma once

#include <map>

#include "hak/spaces.hpp"

namespace hak {

struct DecomposeOptions {
  int J = -1;               // annulus count; -1 -> budget rule, capped at 8
  int J_cap = 8;
  double tail_budget = 1e-3;  // fraction of the j=0 L^q budget
  double gram_cond_limit = 1e12;
};

/// Output of the molecule -> scaled-atoms decomposition. Pieces live on the
/// molecule's grid; every annulus-local polynomial object is also recorded
/// for the contract checks.
struct Decomposition {
  Ball ball;
  SpaceParams params;
  int J = 0;
  std::vector<MultiIndex> alphas;  // |alpha| <= floor(omega), graded-lex

  std::vector<GridFn> annulus_pieces;               // a_j, j = 0..J
  std::vector<std::vector<GridFn>> transfer_pieces; // [alpha][j], j = 0..J-1
  std::vector<GridFn> moment_pieces;                // a_alpha

  // per-annulus scaffolding
  std::vector<double> annulus_measure;       // discrete |U_j|
  std::vector<double> gram_condition;        // scaled-Gram condition numbers
  std::vector<std::vector<double>> tail_moments;    // [j][alpha] N_{j,alpha}
  std::vector<std::vector<double>> dual_sup;        // [j][alpha] sup |nu_{j,alpha}| on U_j
  std::vector<std::vector<double>> gs_coef_sup;     // [j][alpha] max_beta |lambda_{alpha beta}|

  // measured constants and residuals
  double C1 = 0, C2 = 0, C3 = 0;
  double reassembly_l2 = 0;
  double dual_residual = 0;         // max |<nu_{j,alpha}, (.-x_B)^beta>_j - delta|
  double piece_moment_residual = 0; // annulus/transfer pieces, normalized
  double moment_transfer_residual = 0;  // a_alpha moments vs N_{0,alpha}
  double telescoping_residual = 0;
  double projection_cross_residual = 0;  // dual-basis vs Gram-Schmidt route

  GridFn reassemble() const;
};

/// The constructive decomposition: split over annuli, project away moments
/// per annulus, move the removed moments outward-to-inward by summation by
/// parts, and land them on the central ball.
Decomposition decompose_molecule(const GridFn& m, const Ball& ball, const SpaceParams& params,
                                 const DecomposeOptions& opts = {});

/// Budget rule for J: smallest J with 2^{-J delta} |2^J B|^{1/q-1/p} below
/// tail_budget times the j=0 budget, capped.
int default_annulus_count(const Ball& ball, const SpaceParams& params,
                          const DecomposeOptions& opts = {});

}  // namespace hak
