#pragma once

#include <utility>
#include <vector>

#include "asclust/linalg.hpp"

namespace asclust {

// Pairwise-difference map B(X) = X J for the node-arc incidence matrix J
// (N x m, column l has +1 at row i(l) and -1 at row j(l)).
class IncidenceMap {
 public:
  IncidenceMap() = default;
  IncidenceMap(Index num_nodes, std::vector<std::pair<Index, Index>> arcs);

  Index num_nodes() const noexcept { return num_nodes_; }
  Index num_edges() const noexcept { return static_cast<Index>(arcs_.size()); }
  const std::vector<std::pair<Index, Index>>& arcs() const noexcept { return arcs_; }
  const SparseMatrix& matrix() const noexcept { return j_; }

  // d x N -> d x m, column l holds X_:i - X_:j.
  Matrix apply(const Matrix& x) const;
  // d x m -> d x N, Z J^T.
  Matrix adjoint(const Matrix& z) const;

  // J restricted to the given rows (nodes) and columns (edges), in the
  // order the index lists are given.
  SparseMatrix submatrix(const std::vector<Index>& nodes, const std::vector<Index>& edges) const;

 private:
  Index num_nodes_ = 0;
  std::vector<std::pair<Index, Index>> arcs_;
  SparseMatrix j_;
};

}  // namespace asclust
