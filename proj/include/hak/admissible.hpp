#pragma once

#include <vector>

#include "hak/basis.hpp"
#include "hak/coef.hpp"

namespace hak {

/// C^infty cutoff theta: 1 on [0,1/2], 0 on [1,inf); built from e^{-1/s}.
double smooth_cutoff(double lambda);

/// Smooth step: 1 on (-inf,0], 0 on [1,inf) of the same regularity.
double smooth_step_down(double s);

enum class AdmissibleMode { partition, plain };

/// Dyadic spectral cutoffs phi_j(lambda) = phi(2^{-j} lambda) with
/// supp phi in [1/4, 1]. In partition mode phi = theta(.) - theta(2 .), so
/// sum_{j>=0} phi_j(lambda) = 1 for lambda >= 1/2 telescopically.
class AdmissibleSystem {
 public:
  explicit AdmissibleSystem(AdmissibleMode mode = AdmissibleMode::partition);

  AdmissibleMode mode() const { return mode_; }
  double phi(double lambda) const;
  double phi_j(int j, double lambda) const { return phi(std::ldexp(lambda, -j)); }
  /// phi_j evaluated on the spectrum: phi_j(sqrt(2|xi|+n)).
  double phi_j_at(int j, const MultiIndex& xi) const {
    return phi_j(j, std::sqrt(xi.eigenvalue()));
  }
  /// Partial partition sum sum_{j=0..J} phi_j(lambda) = theta(2^{-J} lambda)
  /// - theta(2 lambda); used as the smooth spectral taper for kernel series.
  double partial_sum(int J, double lambda) const;

 private:
  AdmissibleMode mode_;
};

/// Degree range of the dyadic index block I_j:
/// (1/2) 4^{j-2} - n/2 <= |xi| <= (1/2) 4^j - n/2.
struct BlockRange {
  int lo = 0;
  int hi = -1;  // empty when hi < lo
  bool contains(int order) const { return order >= lo && order <= hi; }
};

BlockRange dyadic_block_range(int j, int dim);

/// Members of I_j, graded-lex.
std::vector<MultiIndex> dyadic_block(int j, int dim);

/// phi_j(sqrt L) as a coefficient multiplier (any integer j; vanishes
/// identically for j < 0 thanks to the spectral gap).
CoefVec dyadic_multiplier_apply(const AdmissibleSystem& sys, int j, const CoefVec& c);

}  // namespace hak
