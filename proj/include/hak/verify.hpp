#pragma once

#include <map>

#include "hak/bound.hpp"
#include "hak/kernels.hpp"
#include "hak/norms.hpp"
#include "hak/pseudo.hpp"
#include "hak/riesz.hpp"
#include "hak/sparse.hpp"

namespace hak {

/// Two-variable Hermite expansion sum c_{xi,eta} h_xi(x) h_eta(y) with
/// ladder/position maps acting on either slot; the workhorse for the exact
/// operator identities.
class PairExpansion {
 public:
  enum class Side { x, y };

  static PairExpansion basis_term(const MultiIndex& xi, const MultiIndex& eta);

  PairExpansion ladder(Side side, Ladder kind, int axis) const;
  PairExpansion position(Side side, int axis) const;
  PairExpansion scaled(double c) const;
  PairExpansion plus(const PairExpansion& o) const;
  PairExpansion minus(const PairExpansion& o) const;
  /// (A_i^{(y)} - A_i^{(x)})^m, creation letters.
  PairExpansion ladder_diff_pow(int axis, int m) const;
  /// (A_i^{(x)} - A_i^{(y)})^m with the letter chosen per side.
  PairExpansion letter_diff_pow(int axis, int m, Ladder letter) const;

  double eval(const Point& x, const Point& y) const;
  bool empty() const { return terms_.empty(); }

 private:
  std::map<std::pair<MultiIndex, MultiIndex>, double> terms_;
  void add(const MultiIndex& xi, const MultiIndex& eta, double c);
};

/// Polynomial (optionally times e^{-|x|^2/2}) with analytic derivatives;
/// the smooth test family for the ladder Leibniz rule.
struct SmoothFn {
  std::map<MultiIndex, double> coef;
  bool gaussian = false;

  double eval(const Point& x) const;
  SmoothFn derivative(int axis) const;
  SmoothFn derivative(const MultiIndex& nu) const;
  static SmoothFn monomial(const MultiIndex& power, bool gaussian = false);
};

// --- exact identities (hard assertions; results are max residuals) --------

/// Kernel displacement identity: for K(x,y) = sum k(xi) h_xi(x) h_xi(y),
/// 2^N (x_i-y_i)^N K equals the finite-difference/ladder recombination with
/// coefficients (-4)^{N-l} (2N-2l-1)!! binom(N, 2l-N).
double check_displacement_identity(int dim, int axis, int N,
                                   const std::function<double(const MultiIndex&)>& symbol,
                                   int support_order_hi,
                                   const std::vector<std::pair<Point, Point>>& samples);

/// Commutation of powers of x_i with ladder-letter differences, both forms,
/// including the (-1)^k sign rule for the annihilation letter.
double check_commutation_moving_letter(int dim, int axis, int M, int N, Ladder letter,
                                       const MultiIndex& xi, const MultiIndex& eta,
                                       const std::vector<std::pair<Point, Point>>& samples);
double check_commutation_moving_difference(int dim, int axis, int M, int N, Ladder letter,
                                           const MultiIndex& xi, const MultiIndex& eta,
                                           const std::vector<std::pair<Point, Point>>& samples);

/// Discrete Leibniz rule for forward differences on sampled sequences.
double check_discrete_leibniz(int ell, unsigned seed);

/// Ladder Leibniz rule A^alpha(fg) = sum binom (-1)^{|nu|} d^nu f A^{alpha-nu} g
/// with f from the smooth family and g a Hermite function.
double check_ladder_leibniz(const SmoothFn& f, const MultiIndex& g_index,
                            const MultiIndex& alpha, const std::vector<Point>& samples);

// --- empirical-constant checks ---------------------------------------------

struct SampleBox {
  double halfwidth = 6.0;
  int points_per_axis = 41;
};

/// Projection-kernel growth: Q_{4^j}(x,x) <= C 2^{jn} (1+(1+|x|)/2^j)^{-mu}.
BoundReport check_projector_growth(int dim, int j_max, double mu, const SampleBox& box = {});

/// Heat kernel bounds with the Gaussian factor e^{-|x-y|^2/(c t)}, c pinned
/// to 8; `k` powers of L or a d_y^gamma derivative order.
BoundReport check_heat_kernel_bound(int dim, int k, double N, const SampleBox& box = {},
                                    double t_lo = 0.05, double t_hi = 2.0);
BoundReport check_heat_kernel_deriv_bound(int dim, const MultiIndex& gamma, double N,
                                          const SampleBox& box = {}, double t_lo = 0.05,
                                          double t_hi = 2.0);

/// Block coefficient sums of localized moments against Hermite functions:
/// variants plain / with symbol / with symbol and averaged-derivative class
/// / with a ladder word applied.
enum class BlockDecayVariant { plain, with_symbol, with_symbol_averaged, with_ladder_word };

struct BlockDecayOptions {
  int N = 0;                     // spectral integration-by-parts order
  MultiIndex beta{0};            // moment power
  std::vector<double> centers{0.0, 1.0, -2.0, 4.0};
  int j_lo = 1, j_hi = 4;
  const PseudoSymbol* symbol = nullptr;  // variants with symbols
  int M = 0;                             // averaged variant
  const LadderWord* word = nullptr;      // ladder variant
};

BoundReport check_block_coefficient_decay(BlockDecayVariant variant,
                                          const BlockDecayOptions& opts);

/// HCZO grading: L^2 bound, size, and the two Hoelder conditions at order M
/// with exponent eps; mu adds the symmetric critical-radius damping to the
/// size condition.
struct HczoOptions {
  SampleBox box{4.0, 13};
  double min_separation = 0.0;  // defaults to the kernel resolution limit
};

std::vector<BoundReport> grade_hczo(const KernelEvaluator& kernel, int M, double eps, double mu,
                                    const HczoOptions& opts = {});

/// Off-diagonal kernel decay |d^gamma d^eta K| <= C |x-y|^{-n-|gamma|-|eta|}
/// (1+|x-y|/rho(x)+|x-y|/rho(y))^{-mu}.
BoundReport check_kernel_decay(const KernelEvaluator& kernel, const MultiIndex& gamma,
                               const MultiIndex& eta, double mu, const HczoOptions& opts = {});

/// Dyadic piece bounds: |x-y|^N |d^gamma_x d^eta_y K_j| against
/// 2^{j(n+m+|gamma|+|eta|+N(1-2rho))} with critical-radius damping; one
/// report per j, plus a cross-j stability flag (constants within factor 3).
struct DyadicBoundSpec {
  int N = 0;
  MultiIndex gamma{0};
  MultiIndex eta{0};
};

struct DyadicBoundResult {
  std::vector<BoundReport> per_j;
  double cross_j_ratio = 0;  // max C_j / min C_j over the range
  bool stable = false;       // ratio <= 3
};

DyadicBoundResult check_dyadic_kernel_bounds_pseudo(const PseudoSymbol& sigma,
                                                    const DyadicBoundSpec& spec, int j_lo,
                                                    int j_hi, double mu,
                                                    const SampleBox& box = {});
DyadicBoundResult check_dyadic_kernel_bounds_riesz(const RieszOp& op, const DyadicBoundSpec& spec,
                                                   int j_lo, int j_hi, double mu,
                                                   const SampleBox& box = {});

/// Lipschitz vs Campanato norms over a test set; equivalence is evidenced by
/// the min/max ratio window staying bounded and stable under doubling the
/// ball family.
struct CampanatoEquivResult {
  double ratio_min = 0, ratio_max = 0;
  double refined_ratio_min = 0, refined_ratio_max = 0;
  bool window_ok = false;   // within [1/50, 50]
  bool stable = false;
  std::vector<std::pair<std::string, double>> per_function_ratio;
};

CampanatoEquivResult check_campanato_equivalence(double s, int N,
                                                 const BallFamily& family = {});

}  // namespace hak
