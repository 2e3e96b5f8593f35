#pragma once

#include <optional>

#include "asclust/graph.hpp"
#include "asclust/types.hpp"

namespace asclust {

struct AdmmConfig {
  double sigma = 1.0;
  int max_iter = 20000;
  // Stop once both the reduced KKT residual and the relative gap are <= tol.
  double tol = 1e-6;
  // Residual balancing: rescale sigma by `sigma_factor` when the primal and
  // dual residuals differ by more than `balance_ratio`; the Cholesky factor is
  // rebuilt only then.
  bool adapt_sigma = true;
  double balance_ratio = 10.0;
  double sigma_factor = 2.0;
  int balance_every = 20;
};

// Iterate of the reduced problem in its own shapes.
struct AdmmStart {
  Matrix x;   // d x reduced_dim
  Matrix y;   // d x |I^c|
  Matrix xi;  // d x |I^c|
};

struct SubSolution {
  Matrix x;   // reduced variable, columns [alpha, beta]
  Matrix y;   // y over I^c
  Matrix xi;  // multiplier over I^c
  double achieved_kkt = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_sigma = 1.0;

  auto x_alpha(Index num_alpha) const { return x.leftCols(num_alpha); }
  auto x_beta(Index num_alpha) const { return x.rightCols(x.cols() - num_alpha); }
};

// Two-block ADMM on the reduced problem: the x-step solves
// (diag(h) + sigma H H^T) x = rhs with a cached sparse Cholesky factor and the
// y-step is blockwise soft-thresholding.
SubSolution solve_reduced_admm(const ReducedProblem& red, const AdmmConfig& cfg,
                               const AdmmStart* warm = nullptr);

// Maps a full-space iterate (X d x N, Z d x m) onto the reduced shapes. The
// multiplier is projected onto the feasible balls.
AdmmStart map_warm_start(const ReducedProblem& red, const Matrix& x_full, const Matrix& z_full);

// ADMM on the unreduced problem; (x, y, z) are the full iterate and multiplier.
struct FullSolve {
  KktTriple triple;
  int iterations = 0;
  bool converged = false;
};

FullSolve solve_full(const ProblemInstance& inst, double lambda, const AdmmConfig& cfg,
                     const KktTriple* warm = nullptr);

}  // namespace asclust
