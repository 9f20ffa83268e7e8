#include "hak/coef.hpp"

#include <cmath>

#include "hak/hermite.hpp"

namespace hak {

CoefVec::CoefVec(BasisPtr b, std::vector<double> v) : basis(std::move(b)), values(std::move(v)) {
  if (values.size() != basis->count())
    throw std::invalid_argument("CoefVec: value/basis length mismatch");
}

CoefVec CoefVec::unit(BasisPtr b, const MultiIndex& xi) {
  CoefVec c(std::move(b));
  long i = c.basis->index_of(xi);
  if (i < 0) throw std::invalid_argument("CoefVec::unit: index outside basis");
  c.values[std::size_t(i)] = 1.0;
  return c;
}

double CoefVec::at(const MultiIndex& xi) const {
  long i = basis->index_of(xi);
  return i < 0 ? 0.0 : values[std::size_t(i)];
}

void CoefVec::set(const MultiIndex& xi, double v) {
  long i = basis->index_of(xi);
  if (i < 0) throw std::invalid_argument("CoefVec::set: index outside basis");
  values[std::size_t(i)] = v;
}

double CoefVec::l2_norm() const {
  KahanSum s;
  for (double v : values) s.add(v * v);
  return std::sqrt(s.value());
}

CoefVec embed(const CoefVec& c, BasisPtr basis) {
  CoefVec out(std::move(basis));
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    double v = c.values[i];
    if (v == 0.0) continue;
    long j = out.basis->index_of(c.basis->at(i));
    if (j < 0) throw std::invalid_argument("embed: nonzero coefficient outside target basis");
    out.values[std::size_t(j)] = v;
  }
  return out;
}

CoefVec operator-(const CoefVec& a, const CoefVec& b) {
  if (!(*a.basis == *b.basis)) throw std::invalid_argument("CoefVec: basis mismatch");
  CoefVec out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

CoefVec operator+(const CoefVec& a, const CoefVec& b) {
  if (!(*a.basis == *b.basis)) throw std::invalid_argument("CoefVec: basis mismatch");
  CoefVec out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

CoefVec scaled(const CoefVec& a, double c) {
  CoefVec out = a;
  for (auto& v : out.values) v *= c;
  return out;
}

double inner(const CoefVec& a, const CoefVec& b) {
  if (!(*a.basis == *b.basis)) throw std::invalid_argument("CoefVec: basis mismatch");
  KahanSum s;
  for (std::size_t i = 0; i < a.values.size(); ++i) s.add(a.values[i] * b.values[i]);
  return s.value();
}

CoefVec ladder_apply(Ladder kind, int axis, const CoefVec& c) {
  const BasisSpec& b = *c.basis;
  if (axis < 0 || axis >= b.dim()) throw std::invalid_argument("ladder_apply: bad axis");
  const int out_deg = (kind == Ladder::creation) ? b.max_degree() + 1
                                                 : std::max(b.max_degree() - 1, 0);
  CoefVec out(make_basis(b.dim(), out_deg));
  for (std::size_t i = 0; i < b.count(); ++i) {
    double v = c.values[i];
    if (v == 0.0) continue;
    const MultiIndex& xi = b.at(i);
    if (kind == Ladder::creation) {
      // A_i h_xi = sqrt(2 xi_i + 2) h_{xi+e_i}
      MultiIndex eta = xi.shifted(axis, +1);
      long j = out.basis->index_of(eta);
      out.values[std::size_t(j)] += std::sqrt(2.0 * xi[axis] + 2.0) * v;
    } else {
      // A*_i h_xi = sqrt(2 xi_i) h_{xi-e_i}; annihilates xi_i = 0
      if (xi[axis] == 0) continue;
      MultiIndex eta = xi.shifted(axis, -1);
      long j = out.basis->index_of(eta);
      if (j >= 0) out.values[std::size_t(j)] += std::sqrt(2.0 * xi[axis]) * v;
    }
  }
  return out;
}

CoefVec position_apply(int axis, const CoefVec& c) {
  CoefVec up = ladder_apply(Ladder::creation, axis, c);
  CoefVec down = ladder_apply(Ladder::annihilation, axis, c);
  CoefVec out(up.basis);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const MultiIndex& xi = out.basis->at(i);
    out.values[i] = 0.5 * (up.values[i] + down.at(xi));
  }
  return out;
}

CoefVec derivative_apply(int axis, const CoefVec& c) {
  CoefVec up = ladder_apply(Ladder::creation, axis, c);
  CoefVec down = ladder_apply(Ladder::annihilation, axis, c);
  CoefVec out(up.basis);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const MultiIndex& xi = out.basis->at(i);
    out.values[i] = 0.5 * (down.at(xi) - up.values[i]);
  }
  return out;
}

CoefVec apply_L(const CoefVec& c, double power) {
  CoefVec out = c;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= std::pow(out.basis->at(i).eigenvalue(), power);
  return out;
}

CoefVec multiplier_apply(const std::function<double(double)>& m, const CoefVec& c) {
  CoefVec out = c;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= m(out.basis->at(i).eigenvalue());
  return out;
}

CoefVec heat_apply(double t, const CoefVec& c) {
  if (!(t > 0)) throw std::invalid_argument("heat_apply: need t > 0");
  CoefVec out = c;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= std::exp(-t * out.basis->at(i).eigenvalue());
  return out;
}

namespace {

// per-axis tables H[axis][node][degree]
std::vector<std::vector<std::vector<double>>> axis_tables(const Grid& g, int maxdeg) {
  std::vector<std::vector<std::vector<double>>> H(std::size_t(g.dim()));
  for (int ax = 0; ax < g.dim(); ++ax) {
    const auto& nodes = g.axis_nodes(ax);
    H[std::size_t(ax)].resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      H[std::size_t(ax)][i] = hermite_all_1d(maxdeg, nodes[i]);
  }
  return H;
}

}  // namespace

CoefVec transform(const GridFn& f, BasisPtr basis) {
  const Grid& g = *f.grid;
  if (g.dim() != basis->dim()) throw std::invalid_argument("transform: dimension mismatch");
  CoefVec out(std::move(basis));
  const int maxdeg = out.basis->max_degree();
  if (g.is_tensor()) {
    auto H = axis_tables(g, maxdeg);
    std::vector<KahanSum> acc(out.basis->count());
    for (std::size_t p = 0; p < g.size(); ++p) {
      double wf = g.weight(p) * f.values[p];
      if (wf == 0.0) continue;
      for (std::size_t k = 0; k < out.basis->count(); ++k) {
        const MultiIndex& xi = out.basis->at(k);
        double prod = wf;
        for (int ax = 0; ax < g.dim(); ++ax)
          prod *= H[std::size_t(ax)][g.axis_index(p, ax)][std::size_t(xi[ax])];
        acc[k].add(prod);
      }
    }
    for (std::size_t k = 0; k < out.basis->count(); ++k) out.values[k] = acc[k].value();
  } else {
    std::vector<KahanSum> acc(out.basis->count());
    for (std::size_t p = 0; p < g.size(); ++p) {
      double wf = g.weight(p) * f.values[p];
      if (wf == 0.0) continue;
      const Point& x = g.point(p);
      std::array<std::vector<double>, kMaxDim> h1;
      for (int ax = 0; ax < g.dim(); ++ax) h1[std::size_t(ax)] = hermite_all_1d(maxdeg, x[ax]);
      for (std::size_t k = 0; k < out.basis->count(); ++k) {
        const MultiIndex& xi = out.basis->at(k);
        double prod = wf;
        for (int ax = 0; ax < g.dim(); ++ax) prod *= h1[std::size_t(ax)][std::size_t(xi[ax])];
        acc[k].add(prod);
      }
    }
    for (std::size_t k = 0; k < out.basis->count(); ++k) out.values[k] = acc[k].value();
  }
  return out;
}

GridFn synthesize(const CoefVec& c, GridPtr grid) {
  const Grid& g = *grid;
  if (g.dim() != c.basis->dim()) throw std::invalid_argument("synthesize: dimension mismatch");
  GridFn out(grid);
  const int maxdeg = c.basis->max_degree();
  if (g.is_tensor()) {
    auto H = axis_tables(g, maxdeg);
    parallel_for(g.size(), [&](std::size_t p) {
      KahanSum s;
      for (std::size_t k = 0; k < c.basis->count(); ++k) {
        double v = c.values[k];
        if (v == 0.0) continue;
        const MultiIndex& xi = c.basis->at(k);
        for (int ax = 0; ax < g.dim(); ++ax)
          v *= H[std::size_t(ax)][g.axis_index(p, ax)][std::size_t(xi[ax])];
        s.add(v);
      }
      out.values[p] = s.value();
    });
  } else {
    parallel_for(g.size(), [&](std::size_t p) { out.values[p] = synthesize_at(c, g.point(p)); });
  }
  return out;
}

double synthesize_at(const CoefVec& c, const Point& x) {
  if (x.dim() != c.basis->dim()) throw std::invalid_argument("synthesize_at: dimension mismatch");
  const int maxdeg = c.basis->max_degree();
  std::array<std::vector<double>, kMaxDim> h1;
  for (int ax = 0; ax < x.dim(); ++ax) h1[std::size_t(ax)] = hermite_all_1d(maxdeg, x[ax]);
  KahanSum s;
  for (std::size_t k = 0; k < c.basis->count(); ++k) {
    double v = c.values[k];
    if (v == 0.0) continue;
    const MultiIndex& xi = c.basis->at(k);
    for (int ax = 0; ax < x.dim(); ++ax) v *= h1[std::size_t(ax)][std::size_t(xi[ax])];
    s.add(v);
  }
  return s.value();
}

GridPtr transform_grid(int dim, int max_degree) {
  const int m = 2 * max_degree + 33;
  QuadratureRule axis = gauss_hermite_rule(m);
  double residual = orthonormality_residual(axis, std::min(max_degree, 64));
  if (residual > 1e-10)
    throw std::runtime_error("transform_grid: quadrature failed orthonormality validation, residual " +
                             format_double(residual));
  return Grid::tensor(std::vector<QuadratureRule>(std::size_t(dim), axis));
}

CoefVec random_coefvec(BasisPtr basis, std::mt19937_64& rng) {
  CoefVec c(std::move(basis));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : c.values) v = u(rng);
  return c;
}

}  // namespace hak
