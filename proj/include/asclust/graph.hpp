#pragma once

#include <vector>

#include "asclust/types.hpp"

namespace asclust {

// Gaussian-kernel k-nearest-neighbour graph on the columns of `data`.
// (i, j) is an edge when either point is among the other's k nearest
// neighbours; w_ij = exp(-||A_:i - A_:j||^2 / 2). Distance ties go to the
// smaller index.
ProblemInstance build_knn_graph(const Matrix& data, Index k);

// Node split induced by a set I of edge blocks assumed to vanish.
//
// Connected components of the subgraph spanned by I give the clusters; the
// smallest node of each component is its representative (alpha), the other
// component nodes are eliminated (gamma) and nodes touched by no edge of I
// stay free (beta). Every list below is sorted ascending, and components are
// ordered by their representative.
struct IndexPartition {
  Index num_nodes = 0;
  std::vector<Index> sieved;      // I
  std::vector<Index> complement;  // I^c
  std::vector<Index> alpha;
  std::vector<Index> beta;
  std::vector<Index> gamma;
  std::vector<std::vector<Index>> components;
  // |alpha| x |gamma| 0/1 map with X_:gamma = X_:alpha M.
  SparseMatrix m_gamma_alpha;
  // Representative node of every node (itself for alpha and beta).
  std::vector<Index> representative;
  // Column of the node's representative in the reduced variable [alpha, beta].
  std::vector<Index> reduced_column;

  Index reduced_dim() const noexcept {
    return static_cast<Index>(alpha.size() + beta.size());
  }
};

// Partition for the edge set `sieved` (any order, duplicates rejected).
IndexPartition build_partition(const IncidenceMap& inc, std::vector<Index> sieved);

// The problem over (x_alpha, x_beta, y_{I^c}) left after eliminating x_gamma:
//
//   min 1/2 sum_r h_r ||x_r||^2 - <x_r, s_r> + c + lambda sum_{l in I^c} w_l ||y_l||
//   s.t. X H - Y = 0
//
// where h_r is the size of the component represented by column r, s_r the sum
// of its data columns and H (reduced_dim x |I^c|) the incidence of the
// contracted graph. Edges of I^c with both ends in one component get a zero
// column in H.
struct ReducedProblem {
  double lambda = 0.0;
  Index block_dim = 0;
  Index num_alpha = 0;
  Vector hessian;                   // h
  Matrix data_sum;                  // d x reduced_dim
  double constant = 0.0;            // 1/2 ||A||^2
  SparseMatrix constraint;          // H
  Vector weights;                   // w over I^c
  std::vector<Index> edges;         // original block ids of I^c
  std::vector<Index> column_nodes;  // representative node of each reduced column

  Index dim() const noexcept { return hessian.size(); }
  Index num_blocks() const noexcept { return weights.size(); }

  double primal_value(const Matrix& x) const;
  // Dual value at xi after projecting it onto the feasible balls.
  double dual_value(const Matrix& xi) const;
  // Stacked KKT residual of the reduced problem.
  double kkt_residual(const Matrix& x, const Matrix& y, const Matrix& xi) const;
  double relative_gap(const Matrix& x, const Matrix& xi) const;
};

ReducedProblem reduce_problem(const ProblemInstance& inst, const IndexPartition& partition,
                              double lambda);

struct FullPrimal {
  Matrix x;  // d x N
  Matrix y;  // d x m
};

// x_gamma = x_alpha M, y_I = 0, everything else copied.
FullPrimal recover_primal(const IndexPartition& partition, const Matrix& x_reduced,
                          const Matrix& y_reduced);

}  // namespace asclust
