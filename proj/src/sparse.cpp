#include "hak/sparse.hpp"

#include <cmath>

#include "hak/hermite.hpp"

namespace hak {

SparseCoef SparseCoef::ladder(Ladder kind, int axis) const {
  SparseCoef out;
  for (const auto& [xi, c] : terms_) {
    if (kind == Ladder::creation) {
      out.add_term(xi.shifted(axis, +1), std::sqrt(2.0 * xi[axis] + 2.0) * c);
    } else if (xi[axis] > 0) {
      out.add_term(xi.shifted(axis, -1), std::sqrt(2.0 * xi[axis]) * c);
    }
  }
  return out;
}

SparseCoef SparseCoef::position(int axis) const {
  return ladder(Ladder::creation, axis).plus(ladder(Ladder::annihilation, axis)).scaled(0.5);
}

SparseCoef SparseCoef::derivative(int axis) const {
  return ladder(Ladder::annihilation, axis).minus(ladder(Ladder::creation, axis)).scaled(0.5);
}

SparseCoef SparseCoef::derivative(const MultiIndex& gamma) const {
  SparseCoef out = *this;
  for (int ax = 0; ax < gamma.dim(); ++ax)
    for (int r = 0; r < gamma[ax]; ++r) out = out.derivative(ax);
  return out;
}

SparseCoef SparseCoef::scaled(double c) const {
  SparseCoef out;
  for (const auto& [xi, v] : terms_) out.add_term(xi, v * c);
  return out;
}

SparseCoef SparseCoef::plus(const SparseCoef& o) const {
  SparseCoef out = *this;
  for (const auto& [xi, v] : o.terms_) out.add_term(xi, v);
  return out;
}

SparseCoef SparseCoef::minus(const SparseCoef& o) const {
  SparseCoef out = *this;
  for (const auto& [xi, v] : o.terms_) out.add_term(xi, -v);
  return out;
}

int SparseCoef::max_degree() const {
  int d = 0;
  for (const auto& [xi, v] : terms_) d = std::max(d, xi.order());
  return d;
}

double SparseCoef::eval(const Point& x) const {
  if (terms_.empty()) return 0.0;
  const int maxdeg = max_degree();
  std::array<std::vector<double>, kMaxDim> h1;
  for (int ax = 0; ax < x.dim(); ++ax) h1[std::size_t(ax)] = hermite_all_1d(maxdeg, x[ax]);
  KahanSum s;
  for (const auto& [xi, c] : terms_) {
    double v = c;
    for (int ax = 0; ax < xi.dim(); ++ax) v *= h1[std::size_t(ax)][std::size_t(xi[ax])];
    s.add(v);
  }
  return s.value();
}

double SparseCoef::eval_with_tables(const std::vector<const std::vector<double>*>& tables) const {
  KahanSum s;
  for (const auto& [xi, c] : terms_) {
    double v = c;
    for (int ax = 0; ax < xi.dim(); ++ax) v *= (*tables[std::size_t(ax)])[std::size_t(xi[ax])];
    s.add(v);
  }
  return s.value();
}

CoefVec SparseCoef::to_coefvec(int dim) const {
  CoefVec c(make_basis(dim, max_degree()));
  for (const auto& [xi, v] : terms_) c.values[std::size_t(c.basis->index_of(xi))] += v;
  return c;
}

}  // namespace hak
