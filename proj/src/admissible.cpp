#include "hak/admissible.hpp"

#include <cmath>

namespace hak {

namespace {

inline double bump_half(double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double smooth_step_down(double s) {
  if (s <= 0) return 1.0;
  if (s >= 1) return 0.0;
  double a = bump_half(1.0 - s);
  double b = bump_half(s);
  return a / (a + b);
}

double smooth_cutoff(double lambda) {
  // 1 on [0, 1/2], 0 on [1, inf)
  return smooth_step_down(2.0 * lambda - 1.0);
}

AdmissibleSystem::AdmissibleSystem(AdmissibleMode mode) : mode_(mode) {}

double AdmissibleSystem::phi(double lambda) const {
  if (mode_ == AdmissibleMode::partition)
    return smooth_cutoff(lambda) - smooth_cutoff(2.0 * lambda);
  // plain: a single bump supported in [1/4, 1], positive on (1/4, 1)
  if (lambda <= 0.25 || lambda >= 1.0) return 0.0;
  double u = (lambda - 0.25) / 0.75;
  double a = bump_half(u);
  double b = bump_half(1.0 - u);
  return 4.0 * a * b / ((a + b) * (a + b));
}

double AdmissibleSystem::partial_sum(int J, double lambda) const {
  if (mode_ == AdmissibleMode::partition)
    return smooth_cutoff(std::ldexp(lambda, -J)) - smooth_cutoff(2.0 * lambda);
  double s = 0;
  for (int j = 0; j <= J; ++j) s += phi_j(j, lambda);
  return s;
}

BlockRange dyadic_block_range(int j, int dim) {
  BlockRange r;
  double lo = 0.5 * std::pow(4.0, j - 2) - 0.5 * dim;
  double hi = 0.5 * std::pow(4.0, j) - 0.5 * dim;
  r.lo = int(std::ceil(lo - 1e-12));
  if (r.lo < 0) r.lo = 0;
  r.hi = int(std::floor(hi + 1e-12));
  return r;
}

std::vector<MultiIndex> dyadic_block(int j, int dim) {
  BlockRange r = dyadic_block_range(j, dim);
  return indices_with_order_between(dim, r.lo, r.hi);
}

CoefVec dyadic_multiplier_apply(const AdmissibleSystem& sys, int j, const CoefVec& c) {
  CoefVec out = c;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= sys.phi_j(j, std::sqrt(out.basis->at(i).eigenvalue()));
  return out;
}

}  // namespace hak
