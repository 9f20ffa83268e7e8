#pragma once

#include "hak/admissible.hpp"
#include "hak/coef.hpp"
#include "hak/kernels.hpp"
#include "hak/symbols.hpp"

namespace hak {

/// sigma(x, L) f(x) = sum_xi sigma(x, xi) <f, h_xi> h_xi(x) on grid points.
std::vector<std::complex<double>> pseudo_apply(const PseudoSymbol& sigma, const CoefVec& c,
                                               const GridPtr& grid);

/// Smooth spectral taper ending at eigenvalue 2K+n: 1 up to (2K+n)/4, 0
/// beyond 2K+n. The raw kernel series converges only conditionally off the
/// diagonal, so truncation is always tapered.
double kernel_taper_weight(double eigenvalue, int K, int dim);

/// K^sigma(x,y) = sum_xi sigma(x,xi) h_xi(x) h_xi(y), tapered at degree K.
/// `diagnostic` (optional) receives |S(K) - S(K/2)|.
std::complex<double> pseudo_kernel(const PseudoSymbol& sigma, const Point& x, const Point& y,
                                   int K, double* diagnostic = nullptr);

/// Explicit eigenvalue-cut form; dyadic pieces j <= J sum to cut = 4^J.
std::complex<double> pseudo_kernel_cut(const PseudoSymbol& sigma, const Point& x, const Point& y,
                                       double eig_cut, double* diagnostic = nullptr);

/// Dyadic piece: sum over I_j with the phi_j weight (the z-integral in the
/// defining composition collapses by orthogonality).
std::complex<double> pseudo_kernel_piece(const PseudoSymbol& sigma, const AdmissibleSystem& sys,
                                         int j, const Point& x, const Point& y);

/// d_x^gamma d_y^eta of the tapered kernel / dyadic piece; symbol
/// x-derivatives analytic when registered, else central differences; basis
/// derivatives by exact ladder calculus.
std::complex<double> pseudo_kernel_deriv(const PseudoSymbol& sigma, const MultiIndex& gamma,
                                         const MultiIndex& eta, const Point& x, const Point& y,
                                         int K);
std::complex<double> pseudo_kernel_piece_deriv(const PseudoSymbol& sigma,
                                               const AdmissibleSystem& sys, int j,
                                               const MultiIndex& gamma, const MultiIndex& eta,
                                               const Point& x, const Point& y);

/// Kernel contract for HCZO grading (dim 1).
KernelEvaluator pseudo_kernel_evaluator(const PseudoSymbol& sigma, int K);

/// Largest singular value of the truncated operator matrix
/// T_{eta,xi} = <sigma(.,xi) h_xi, h_eta>.
double pseudo_l2_norm_estimate(const PseudoSymbol& sigma, int dim, int K);

}  // namespace hak
