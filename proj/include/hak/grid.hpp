#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hak/core.hpp"
#include "hak/quadrature.hpp"

namespace hak {

/// Weighted point set in R^n. Tensor grids keep their axis factorization so
/// transforms can reuse one-dimensional basis evaluations.
class Grid {
 public:
  static std::shared_ptr<const Grid> tensor(const std::vector<QuadratureRule>& axes);
  static std::shared_ptr<const Grid> uniform(int dim, double lo, double hi, int count_per_axis);
  static std::shared_ptr<const Grid> scattered(std::vector<Point> points,
                                               std::vector<double> weights);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const Point& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  bool is_tensor() const { return !axis_nodes_.empty(); }
  const std::vector<double>& axis_nodes(int axis) const { return axis_nodes_[std::size_t(axis)]; }
  const std::vector<double>& axis_weights(int axis) const {
    return axis_weights_[std::size_t(axis)];
  }
  /// Per-axis node index of flattened point i (tensor grids, row-major).
  std::size_t axis_index(std::size_t flat, int axis) const;

 private:
  Grid() = default;
  int dim_ = 1;
  std::vector<Point> points_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> axis_nodes_;
  std::vector<std::vector<double>> axis_weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Function samples on a grid.
struct GridFn {
  GridPtr grid;
  std::vector<double> values;

  GridFn() = default;
  explicit GridFn(GridPtr g) : grid(std::move(g)), values(grid->size(), 0.0) {}
  GridFn(GridPtr g, std::vector<double> v);

  template <typename F>
  static GridFn sample(GridPtr g, F&& f) {
    GridFn out(g);
    for (std::size_t i = 0; i < g->size(); ++i) out.values[i] = f(g->point(i));
    return out;
  }

  double integral() const;
  double lq_norm(double q) const;  // q = inf allowed via q <= 0 sentinel? no: use lq_norm_inf
  double linf_norm() const;
  double l2_norm() const { return lq_norm(2.0); }
};

GridFn operator-(const GridFn& a, const GridFn& b);
GridFn operator+(const GridFn& a, const GridFn& b);
GridFn scaled(const GridFn& a, double c);

/// CSV: header "# dim=<n> weighted=<bool>", rows x_1,...,x_n,w,value.
void write_gridfn_csv(std::ostream& os, const GridFn& f);
void write_gridfn_csv(const std::string& path, const GridFn& f);
GridFn read_gridfn_csv(std::istream& is);
GridFn read_gridfn_csv(const std::string& path);

}  // namespace hak
