#include "hak/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hak {

namespace {

std::size_t tensor_size(const std::vector<QuadratureRule>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

}  // namespace

std::shared_ptr<const Grid> Grid::tensor(const std::vector<QuadratureRule>& axes) {
  if (axes.empty() || axes.size() > std::size_t(kMaxDim))
    throw std::invalid_argument("Grid::tensor: need 1..3 axes");
  auto g = std::shared_ptr<Grid>(new Grid);
  g->dim_ = int(axes.size());
  for (const auto& a : axes) {
    g->axis_nodes_.push_back(a.nodes);
    g->axis_weights_.push_back(a.weights);
  }
  const std::size_t total = tensor_size(axes);
  g->points_.reserve(total);
  g->weights_.reserve(total);
  std::vector<std::size_t> idx(axes.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Point p(g->dim_);
    double w = 1;
    std::size_t rem = flat;
    for (int ax = g->dim_ - 1; ax >= 0; --ax) {
      std::size_t m = axes[std::size_t(ax)].size();
      std::size_t i = rem % m;
      rem /= m;
      p[ax] = axes[std::size_t(ax)].nodes[i];
      w *= axes[std::size_t(ax)].weights[i];
    }
    g->points_.push_back(p);
    g->weights_.push_back(w);
  }
  return g;
}

std::shared_ptr<const Grid> Grid::uniform(int dim, double lo, double hi, int count_per_axis) {
  if (count_per_axis < 1) throw std::invalid_argument("Grid::uniform: need at least one point");
  QuadratureRule axis;
  axis.precision_degree = 1;
  const double h = (count_per_axis > 1) ? (hi - lo) / (count_per_axis - 1) : (hi - lo);
  for (int i = 0; i < count_per_axis; ++i) {
    axis.nodes.push_back(lo + h * i);
    axis.weights.push_back(h > 0 ? h : 1.0);
  }
  std::vector<QuadratureRule> axes(std::size_t(dim), axis);
  return tensor(axes);
}

std::shared_ptr<const Grid> Grid::scattered(std::vector<Point> points,
                                            std::vector<double> weights) {
  if (points.empty()) throw std::invalid_argument("Grid::scattered: empty point set");
  if (points.size() != weights.size())
    throw std::invalid_argument("Grid::scattered: points/weights length mismatch");
  auto g = std::shared_ptr<Grid>(new Grid);
  g->dim_ = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != g->dim_) throw std::invalid_argument("Grid::scattered: mixed dimensions");
  g->points_ = std::move(points);
  g->weights_ = std::move(weights);
  return g;
}

std::size_t Grid::axis_index(std::size_t flat, int axis) const {
  std::size_t rem = flat;
  for (int ax = dim_ - 1; ax > axis; --ax) rem /= axis_nodes_[std::size_t(ax)].size();
  return rem % axis_nodes_[std::size_t(axis)].size();
}

GridFn::GridFn(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid->size())
    throw std::invalid_argument("GridFn: value/grid length mismatch");
}

double GridFn::integral() const {
  KahanSum s;
  for (std::size_t i = 0; i < values.size(); ++i) s.add(grid->weight(i) * values[i]);
  return s.value();
}

double GridFn::lq_norm(double q) const {
  KahanSum s;
  for (std::size_t i = 0; i < values.size(); ++i)
    s.add(grid->weight(i) * std::pow(std::abs(values[i]), q));
  return std::pow(s.value(), 1.0 / q);
}

double GridFn::linf_norm() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

GridFn operator-(const GridFn& a, const GridFn& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("GridFn: size mismatch");
  GridFn out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

GridFn operator+(const GridFn& a, const GridFn& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("GridFn: size mismatch");
  GridFn out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

GridFn scaled(const GridFn& a, double c) {
  GridFn out = a;
  for (auto& v : out.values) v *= c;
  return out;
}

void write_gridfn_csv(std::ostream& os, const GridFn& f) {
  os << "# dim=" << f.grid->dim() << " weighted=true\n";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Point& p = f.grid->point(i);
    for (int d = 0; d < f.grid->dim(); ++d) os << format_double(p[d]) << ",";
    os << format_double(f.grid->weight(i)) << "," << format_double(f.values[i]) << "\n";
  }
}

void write_gridfn_csv(const std::string& path, const GridFn& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_gridfn_csv(os, f);
}

GridFn read_gridfn_csv(std::istream& is) {
  std::string line;
  int dim = -1;
  std::vector<Point> pts;
  std::vector<double> ws, vals;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("dim=");
      if (pos != std::string::npos) dim = std::atoi(line.c_str() + pos + 4);
      continue;
    }
    std::stringstream ss(line);
    std::vector<double> fields;
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        fields.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::runtime_error("malformed CSV field at line " + std::to_string(lineno));
      }
    }
    if (dim < 0) dim = int(fields.size()) - 2;
    if (int(fields.size()) != dim + 2)
      throw std::runtime_error("wrong column count at line " + std::to_string(lineno));
    Point p(dim);
    for (int d = 0; d < dim; ++d) p[d] = fields[std::size_t(d)];
    pts.push_back(p);
    ws.push_back(fields[std::size_t(dim)]);
    vals.push_back(fields[std::size_t(dim) + 1]);
  }
  if (pts.empty()) throw std::runtime_error("empty grid CSV");
  return GridFn(Grid::scattered(std::move(pts), std::move(ws)), std::move(vals));
}

GridFn read_gridfn_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_gridfn_csv(is);
}

}  // namespace hak
