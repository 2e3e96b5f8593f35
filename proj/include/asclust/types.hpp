#pragma once

#include <cstddef>
#include <vector>

#include "asclust/incidence.hpp"
#include "asclust/linalg.hpp"

namespace asclust {

// Undirected weighted edge, i < j, stored 0-based.
struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Data of the weighted convex clustering problem
//
//   min_X 1/2 ||X - A||_F^2 + lambda * sum_l w_l ||X_:i(l) - X_:j(l)||
//
// A is d x N with one data point per column. Edges are kept in
// lexicographic order; the position of an edge in `edges` is its block index.
class ProblemInstance {
 public:
  ProblemInstance() = default;
  // Sorts the edges lexicographically and validates every invariant.
  ProblemInstance(Matrix data, std::vector<Edge> edges, double norm_exponent = 2.0);

  const Matrix& data() const noexcept { return data_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  double norm_exponent() const noexcept { return norm_exponent_; }

  Index num_points() const noexcept { return data_.cols(); }
  Index block_dim() const noexcept { return data_.rows(); }
  Index num_blocks() const noexcept { return static_cast<Index>(edges_.size()); }
  Vector weights() const;
  const IncidenceMap& incidence() const noexcept { return incidence_; }

 private:
  Matrix data_;
  std::vector<Edge> edges_;
  double norm_exponent_ = 2.0;
  IncidenceMap incidence_;
};

// Candidate primal/dual triple with residual and relative gap computed
// from the stored fields.
struct KktTriple {
  Matrix x;  // d x N
  Matrix y;  // d x m
  Matrix z;  // d x m
  double residual_norm = 0.0;
  double gap = 0.0;
};

}  // namespace asclust
