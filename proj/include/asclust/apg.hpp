#pragma once

#include <vector>

#include <Eigen/SparseCholesky>

#include "asclust/linalg.hpp"

namespace asclust {

// Projector onto Null(B_{I,gamma}^T) for a full-column-rank incidence block.
//
// `block` is J restricted to gamma rows and I columns (|gamma| x |I|), so that
// B_{I,gamma}^T U = U block^T for U of shape d x |I|. The Gram matrix
// block block^T is a grounded graph Laplacian and is factored once.
class NullSpaceProjector {
 public:
  explicit NullSpaceProjector(SparseMatrix block);

  Index num_edges() const noexcept { return block_.cols(); }
  Index num_nodes() const noexcept { return block_.rows(); }
  const SparseMatrix& block() const noexcept { return block_; }

  // (Id - B (B^T B)^{-1} B^T) applied to every row of D (d x |I|).
  Matrix project(const Matrix& d) const;
  // Minimum-norm U with B^T U = -rhs, i.e. -B (B^T B)^{-1} rhs, for rhs d x |gamma|.
  Matrix particular_solution(const Matrix& rhs) const;
  // B^T U, shape d x |gamma|.
  Matrix apply_transpose(const Matrix& u) const;

 private:
  Matrix solve_gram(const Matrix& rhs) const;

  SparseMatrix block_;
  Eigen::SimplicialLLT<SparseMatrix> gram_;
};

struct ApgConfig {
  double tol = 1e-6;
  int max_iter = 10;
  bool record_trace = false;
};

struct ApgResult {
  Matrix d;
  int iterations = 0;
  double objective = 0.0;  // h(d)
  bool converged = false;
  std::vector<double> trace;  // h(d^k), k = 1.., when requested
};

// h(d) = 1/2 ||(u0 + d) - Pi_C(u0 + d)||^2 with C the product of balls of the
// given radii (one per column).
double ball_distance_objective(const Matrix& u0, const Vector& radii, const Matrix& d);

// Accelerated projected gradient with unit step for min h(d) over
// d in Null(B^T), started from d = 0. Stops when both the step length and
// ||grad h(d^k)|| drop below tol, or after max_iter iterations.
ApgResult apg_minimize(const Matrix& u0, const Vector& radii, const NullSpaceProjector& null_space,
                       const ApgConfig& cfg);

}  // namespace asclust
