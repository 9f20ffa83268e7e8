#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "hak/core.hpp"

namespace hak {

/// Truncated Hermite basis {h_xi : |xi| <= K} with a graded-lexicographic
/// enumeration. Degree blocks are contiguous, so spectral cutoffs slice
/// cheaply.
class BasisSpec {
 public:
  BasisSpec(int dim, int max_total_degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  std::size_t count() const { return indices_.size(); }

  const MultiIndex& at(std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Position of xi in the enumeration; -1 if |xi| > K or dim mismatch.
  long index_of(const MultiIndex& xi) const;

  /// [first, last) positions of the block {|xi| == degree}.
  std::pair<std::size_t, std::size_t> degree_block(int degree) const;

  friend bool operator==(const BasisSpec& a, const BasisSpec& b) {
    return a.dim_ == b.dim_ && a.max_degree_ == b.max_degree_;
  }

 private:
  int dim_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> block_start_;  // size max_degree_+2
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> pos_;
};

using BasisPtr = std::shared_ptr<const BasisSpec>;

inline BasisPtr make_basis(int dim, int max_total_degree) {
  return std::make_shared<const BasisSpec>(dim, max_total_degree);
}

/// All xi in N_0^n with lo <= |xi| <= hi (graded lex order).
std::vector<MultiIndex> indices_with_order_between(int dim, int lo, int hi);

}  // namespace hak
