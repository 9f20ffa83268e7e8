#pragma once

#include <complex>
#include <cstring>
#include <span>
#include <unordered_map>
#include <vector>

#include "hak/core.hpp"

namespace hak {

/// L^2-normalized Hermite function h_k(t). Three-term recurrence on values
/// scaled by a tracked power of two, so the Gaussian seed neither underflows
/// nor drags the oscillatory regime down with it; valid for k up to ~1e4 and
/// |t| up to ~50.
double hermite_eval_1d(int k, double t);

std::vector<double> hermite_eval_1d(int k, std::span<const double> ts);

/// h_0(t), ..., h_kmax(t) in one sweep.
std::vector<double> hermite_all_1d(int kmax, double t);

/// Same recurrence over complex arguments (for complex-step derivatives).
std::complex<double> hermite_eval_1d(int k, std::complex<double> t);

/// Memoized hermite_all_1d keyed by the coordinate bits; kernel samplers
/// revisit the same product-grid coordinates thousands of times. Not
/// thread-safe; samplers run sequentially for determinism anyway.
class Herm1DCache {
 public:
  explicit Herm1DCache(int kmax) : kmax_(kmax) {}
  const std::vector<double>& get(double t);
  int kmax() const { return kmax_; }

 private:
  int kmax_;
  std::unordered_map<std::uint64_t, std::vector<double>> map_;
};

/// Tensor product h_xi(x) = prod_i h_{xi_i}(x_i).
double hermite_eval_nd(const MultiIndex& xi, const Point& x);

std::vector<double> hermite_eval_nd(const MultiIndex& xi, std::span<const Point> xs);

}  // namespace hak
