#pragma once

#include <functional>
#include <random>

#include "hak/basis.hpp"
#include "hak/grid.hpp"

namespace hak {

/// Finite Hermite-coefficient vector; the exact-arithmetic home of all
/// spectral operators.
struct CoefVec {
  BasisPtr basis;
  std::vector<double> values;

  CoefVec() = default;
  explicit CoefVec(BasisPtr b) : basis(std::move(b)), values(basis->count(), 0.0) {}
  CoefVec(BasisPtr b, std::vector<double> v);

  static CoefVec unit(BasisPtr b, const MultiIndex& xi);

  double at(const MultiIndex& xi) const;
  void set(const MultiIndex& xi, double v);
  double l2_norm() const;
};

/// Copy into another truncation; coefficients outside it must be zero.
CoefVec embed(const CoefVec& c, BasisPtr basis);

CoefVec operator-(const CoefVec& a, const CoefVec& b);
CoefVec operator+(const CoefVec& a, const CoefVec& b);
CoefVec scaled(const CoefVec& a, double c);
double inner(const CoefVec& a, const CoefVec& b);

enum class Ladder { creation, annihilation };  // A_i raises, A*_i lowers

/// Exact coefficient action of A_i / A*_i; output degree grows or shrinks
/// by one.
CoefVec ladder_apply(Ladder kind, int axis, const CoefVec& c);

/// x_i = (A_i + A*_i)/2 and d/dx_i = (A*_i - A_i)/2 as coefficient maps.
CoefVec position_apply(int axis, const CoefVec& c);
CoefVec derivative_apply(int axis, const CoefVec& c);

/// c_xi -> (2|xi|+n)^power c_xi. Negative powers allowed: the spectrum is
/// bounded below by n.
CoefVec apply_L(const CoefVec& c, double power);

/// c_xi -> m(lambda_xi) c_xi for a scalar spectral function m.
CoefVec multiplier_apply(const std::function<double(double)>& m, const CoefVec& c);

/// Heat semigroup e^{-tL} on coefficients; rejects t <= 0.
CoefVec heat_apply(double t, const CoefVec& c);

/// Analysis against the truncated basis; the grid must integrate
/// h-products up to degree 2K.
CoefVec transform(const GridFn& f, BasisPtr basis);

GridFn synthesize(const CoefVec& c, GridPtr grid);
double synthesize_at(const CoefVec& c, const Point& x);

/// Default quadrature for a transform at max degree K (nodes = 2K+33 per
/// axis), validated by the orthonormality residual.
GridPtr transform_grid(int dim, int max_degree);

CoefVec random_coefvec(BasisPtr basis, std::mt19937_64& rng);

}  // namespace hak
