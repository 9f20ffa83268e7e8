#include "hak/basis.hpp"

#include <algorithm>

namespace hak {

namespace {

void emit_degree(int dim, int degree, std::vector<MultiIndex>& out) {
  // lexicographic within a fixed total degree
  if (dim == 1) {
    out.push_back(MultiIndex{degree});
    return;
  }
  if (dim == 2) {
    for (int a = 0; a <= degree; ++a) out.push_back(MultiIndex{a, degree - a});
    return;
  }
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; b <= degree - a; ++b) out.push_back(MultiIndex{a, b, degree - a - b});
}

}  // namespace

BasisSpec::BasisSpec(int dim, int max_total_degree) : dim_(dim), max_degree_(max_total_degree) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("BasisSpec: dimension must be 1..3");
  if (max_total_degree < 0) throw std::invalid_argument("BasisSpec: max degree must be >= 0");
  block_start_.reserve(std::size_t(max_degree_) + 2);
  for (int d = 0; d <= max_degree_; ++d) {
    block_start_.push_back(indices_.size());
    emit_degree(dim_, d, indices_);
  }
  block_start_.push_back(indices_.size());
  pos_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) pos_.emplace(indices_[i], i);
}

long BasisSpec::index_of(const MultiIndex& xi) const {
  if (xi.dim() != dim_) return -1;
  auto it = pos_.find(xi);
  return it == pos_.end() ? -1 : long(it->second);
}

std::pair<std::size_t, std::size_t> BasisSpec::degree_block(int degree) const {
  if (degree < 0 || degree > max_degree_) return {0, 0};
  return {block_start_[std::size_t(degree)], block_start_[std::size_t(degree) + 1]};
}

std::vector<MultiIndex> indices_with_order_between(int dim, int lo, int hi) {
  std::vector<MultiIndex> out;
  if (hi < 0) return out;
  lo = std::max(lo, 0);
  for (int d = lo; d <= hi; ++d) emit_degree(dim, d, out);
  return out;
}

}  // namespace hak
