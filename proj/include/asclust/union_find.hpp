#pragma once

#include <numeric>
#include <vector>

#include "asclust/linalg.hpp"

namespace asclust {

// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(Index a, Index b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  Index set_size(Index x) noexcept { return size_[find(x)]; }

 private:
  std::vector<Index> parent_;
  std::vector<Index> size_;
};

}  // namespace asclust
