#include <algorithm>
#include <cmath>

#include "asclust/apg.hpp"
#include "asclust/errors.hpp"
#include "asclust/regularizer.hpp"

namespace asclust {

NullSpaceProjector::NullSpaceProjector(SparseMatrix block) : block_(std::move(block)) {
  if (block_.rows() == 0) return;
  SparseMatrix gram = block_ * SparseMatrix(block_.transpose());
  gram.makeCompressed();
  gram_.compute(gram);
  if (gram_.info() != Eigen::Success) {
    throw SolverError("B_{I,gamma} does not have full column rank");
  }
}

Matrix NullSpaceProjector::solve_gram(const Matrix& rhs) const {
  return gram_.solve(rhs.transpose()).transpose();
}

Matrix NullSpaceProjector::apply_transpose(const Matrix& u) const { return u * block_.transpose(); }

Matrix NullSpaceProjector::project(const Matrix& d) const {
  if (block_.rows() == 0) return d;
  return d - solve_gram(apply_transpose(d)) * block_;
}

Matrix NullSpaceProjector::particular_solution(const Matrix& rhs) const {
  if (block_.rows() == 0) return Matrix::Zero(rhs.rows(), block_.cols());
  return -(solve_gram(rhs) * block_);
}

namespace {

// (u - Pi_C(u)) column by column.
Matrix ball_excess(const Matrix& u, const Vector& radii) {
  Matrix out(u.rows(), u.cols());
  for (Index l = 0; l < u.cols(); ++l) {
    const double nu = u.col(l).norm();
    out.col(l) = nu > radii(l) ? Vector((1.0 - radii(l) / nu) * u.col(l)) : Vector::Zero(u.rows());
  }
  return out;
}

}  // namespace

double ball_distance_objective(const Matrix& u0, const Vector& radii, const Matrix& d) {
  return 0.5 * ball_excess(u0 + d, radii).squaredNorm();
}

ApgResult apg_minimize(const Matrix& u0, const Vector& radii, const NullSpaceProjector& null_space,
                       const ApgConfig& cfg) {
  ApgResult res;
  Matrix d_prev = Matrix::Zero(u0.rows(), u0.cols());
  Matrix d_hat = d_prev;
  Matrix d = d_prev;
  Matrix excess = ball_excess(u0, radii);
  res.objective = 0.5 * excess.squaredNorm();
  double t = 1.0;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    // grad h(d_hat) = (u0 + d_hat) - Pi_C(u0 + d_hat), step 1/L with L = 1
    d = null_space.project(d_hat - ball_excess(u0 + d_hat, radii));
    excess = ball_excess(u0 + d, radii);
    res.objective = 0.5 * excess.squaredNorm();
    res.iterations = k;
    if (cfg.record_trace) res.trace.push_back(res.objective);
    if (std::max((d - d_prev).norm(), excess.norm()) <= cfg.tol) {
      res.converged = true;
      break;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    d_hat = d + ((t - 1.0) / t_next) * (d - d_prev);
    d_prev = d;
    t = t_next;
  }
  res.d = std::move(d);
  return res;
}

}  // namespace asclust
