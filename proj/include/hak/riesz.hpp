#pragma once

#include "hak/admissible.hpp"
#include "hak/coef.hpp"
#include "hak/hermite.hpp"
#include "hak/kernels.hpp"

namespace hak {

enum class LadderLetter { creation, annihilation };  // A_i / A*_i

/// Per-axis ladder word A_1^{a_1} ... A_n^{a_n} with each letter chosen
/// independently; carries the signed index shift.
struct LadderWord {
  MultiIndex exponents;                            // alpha
  std::array<LadderLetter, kMaxDim> letters{};     // per axis

  int dim() const { return exponents.dim(); }
  int order() const { return exponents.order(); }
  int signed_shift(int axis) const {
    return letters[std::size_t(axis)] == LadderLetter::creation ? exponents[axis]
                                                                : -exponents[axis];
  }
  LadderWord flipped() const;  // A <-> A* on every axis
};

/// Word coefficient a_alpha(xi) from the exact ladder identities; vanishes
/// when an annihilation exponent exceeds the index entry.
double ladder_factor(const LadderWord& word, const MultiIndex& xi);

/// Shifted index xi + alpha~; ok=false when an entry would go negative.
MultiIndex word_shift(const LadderWord& word, const MultiIndex& xi, bool& ok);

/// R^alpha = (ladder word) L^{-|alpha|/2}.
struct RieszOp {
  LadderWord word;
  double symbol(const MultiIndex& xi) const {
    return std::pow(xi.eigenvalue(), -0.5 * word.order());
  }
};

RieszOp first_order(int axis, LadderLetter letter, int dim);

/// Build from CLI grammar: exponents "1,2" and letters "A,AStar".
RieszOp make_riesz_op(const std::string& alpha_csv, const std::string& word_csv, int dim);

CoefVec riesz_apply(const RieszOp& op, const CoefVec& c);
CoefVec riesz_adjoint_apply(const RieszOp& op, const CoefVec& c);

/// sup over |xi| <= max_order of |a_alpha(xi) sigma_alpha(xi)|.
double riesz_diagonal_sup(const RieszOp& op, int max_order, int dim);

/// Tapered kernel series (see pseudo.hpp for the taper rationale).
double riesz_kernel(const RieszOp& op, const Point& x, const Point& y, int K,
                    double* diagnostic = nullptr);

/// Same with an explicit eigenvalue cut: weight theta(sqrt(lambda/cut)).
/// Summing the dyadic pieces j <= J reproduces cut = 4^J exactly.
double riesz_kernel_cut(const RieszOp& op, const Point& x, const Point& y, double eig_cut,
                        double* diagnostic = nullptr, Herm1DCache* cache = nullptr);
double riesz_kernel_piece(const RieszOp& op, const AdmissibleSystem& sys, int j, const Point& x,
                          const Point& y);
double riesz_kernel_deriv(const RieszOp& op, const MultiIndex& gamma, const MultiIndex& eta,
                          const Point& x, const Point& y, int K, Herm1DCache* cache = nullptr);
double riesz_kernel_piece_deriv(const RieszOp& op, const AdmissibleSystem& sys, int j,
                                const MultiIndex& gamma, const MultiIndex& eta, const Point& x,
                                const Point& y);

/// Diagonal-proximity refusal: smallest |x-y| the taper degree resolves.
double riesz_kernel_min_separation(int K);

KernelEvaluator riesz_kernel_evaluator(const RieszOp& op, int K);

/// Coefficient-space operator with an exact adjoint at the truncation level.
struct CoefOperator {
  std::string name;
  std::function<CoefVec(const CoefVec&)> apply;
  std::function<CoefVec(const CoefVec&)> adjoint_apply;
  std::function<double()> l2_norm;
};

CoefOperator riesz_operator(const RieszOp& op, int dim);
CoefOperator identity_operator();
CoefOperator heat_operator(double t);

}  // namespace hak
