#pragma once

#include <map>

#include "hak/coef.hpp"
#include "hak/core.hpp"

namespace hak {

/// Sparse Hermite expansion sum c_xi h_xi without a fixed truncation; the
/// degree drifts freely under ladder and position maps. Deterministic
/// (graded-lex) term order.
class SparseCoef {
 public:
  SparseCoef() = default;
  static SparseCoef unit(const MultiIndex& xi) {
    SparseCoef s;
    s.terms_[xi] = 1.0;
    return s;
  }

  const std::map<MultiIndex, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add_term(const MultiIndex& xi, double c) {
    if (c == 0.0) return;
    auto [it, fresh] = terms_.emplace(xi, c);
    if (!fresh) it->second += c;
  }

  SparseCoef ladder(Ladder kind, int axis) const;
  SparseCoef position(int axis) const;    // (A + A*)/2
  SparseCoef derivative(int axis) const;  // (A* - A)/2
  SparseCoef derivative(const MultiIndex& gamma) const;
  SparseCoef scaled(double c) const;
  SparseCoef plus(const SparseCoef& o) const;
  SparseCoef minus(const SparseCoef& o) const;

  int max_degree() const;
  double eval(const Point& x) const;
  /// Evaluation with caller-provided per-axis tables h_all(x[ax]).
  double eval_with_tables(const std::vector<const std::vector<double>*>& tables) const;

  CoefVec to_coefvec(int dim) const;

 private:
  std::map<MultiIndex, double> terms_;
};

}  // namespace hak
