#include <cmath>
#include <limits>

#include <Eigen/SparseCholesky>

#include "asclust/admm.hpp"
#include "asclust/errors.hpp"
#include "asclust/model.hpp"
#include "asclust/regularizer.hpp"

namespace asclust {
namespace {

class XStepSolver {
 public:
  XStepSolver(const ReducedProblem& red, double sigma) : red_(red) { factor(sigma); }

  void factor(double sigma) {
    SparseMatrix k = sigma * (red_.constraint * SparseMatrix(red_.constraint.transpose()));
    for (Index r = 0; r < red_.dim(); ++r) k.coeffRef(r, r) += red_.hessian(r);
    k.makeCompressed();
    llt_.compute(k);
    if (llt_.info() != Eigen::Success) throw SolverError("ADMM x-step factorization failed");
  }

  // Solves X K = rhs for X (d x n).
  Matrix solve(const Matrix& rhs) const { return llt_.solve(rhs.transpose()).transpose(); }

 private:
  const ReducedProblem& red_;
  Eigen::SimplicialLLT<SparseMatrix> llt_;
};

void prox_columns(const Matrix& v, const Vector& radii, Matrix& out) {
  for (Index l = 0; l < v.cols(); ++l) out.col(l) = prox_block(v.col(l), radii(l));
}

}  // namespace

AdmmStart map_warm_start(const ReducedProblem& red, const Matrix& x_full, const Matrix& z_full) {
  AdmmStart start;
  start.x.resize(red.block_dim, red.dim());
  for (Index r = 0; r < red.dim(); ++r) {
    start.x.col(r) = x_full.col(red.column_nodes[static_cast<std::size_t>(r)]);
  }
  start.xi.resize(red.block_dim, red.num_blocks());
  for (Index c = 0; c < red.num_blocks(); ++c) {
    start.xi.col(c) = project_ball(z_full.col(red.edges[static_cast<std::size_t>(c)]),
                                   red.lambda * red.weights(c));
  }
  start.y = start.x * red.constraint;
  return start;
}

SubSolution solve_reduced_admm(const ReducedProblem& red, const AdmmConfig& cfg, const AdmmStart* warm) {
  if (!(cfg.sigma > 0.0)) throw ContractViolation("ADMM penalty sigma must be positive");
  const Index d = red.block_dim;
  const Index n = red.dim();
  const Index mc = red.num_blocks();
  if ((red.hessian.array() <= 0.0).any()) throw SolverError("reduced Hessian is not positive definite");

  Matrix x, y, z;
  if (warm != nullptr) {
    if (warm->x.rows() != d || warm->x.cols() != n || warm->y.cols() != mc || warm->xi.cols() != mc ||
        warm->y.rows() != d || warm->xi.rows() != d) {
      throw ContractViolation("ADMM warm start has the wrong shape");
    }
    x = warm->x;
    y = warm->y;
    z = warm->xi;
  } else {
    x = red.data_sum * red.hessian.cwiseInverse().asDiagonal();
    y = x * red.constraint;
    z = Matrix::Zero(d, mc);
  }

  SubSolution out;
  if (red.lambda == 0.0) {
    // No penalty: the minimiser is S / h and the multiplier vanishes.
    out.x = red.data_sum * red.hessian.cwiseInverse().asDiagonal();
    out.y = out.x * red.constraint;
    out.xi = Matrix::Zero(d, mc);
    out.iterations = 1;
    out.converged = true;
    out.final_sigma = cfg.sigma;
    out.achieved_kkt = red.kkt_residual(out.x, out.y, out.xi);
    out.gap = red.relative_gap(out.x, out.xi);
    return out;
  }

  const SparseMatrix h = red.constraint;
  const SparseMatrix ht = red.constraint.transpose();
  const Vector radii = red.lambda * red.weights;
  double sigma = cfg.sigma;
  XStepSolver xstep(red, sigma);

  Matrix zht = z * ht;
  Matrix xh(d, mc), y_prev(d, mc);
  int it = 0;
  bool converged = false;
  // Snapshot of the best checkpoint, returned when max_iter is hit.
  Matrix best_x, best_y, best_z;
  double best_res = std::numeric_limits<double>::infinity();
  for (it = 1; it <= cfg.max_iter; ++it) {
    x = xstep.solve(red.data_sum + sigma * (y * ht) - zht);
    xh = x * h;
    y_prev.swap(y);
    prox_columns(xh + z / sigma, radii / sigma, y);
    z += sigma * (xh - y);
    zht = z * ht;

    const double primal_res = (xh - y).norm();
    const double dual_res = (x * red.hessian.asDiagonal() - red.data_sum + zht).norm();
    if (std::hypot(primal_res, dual_res) <= cfg.tol) {
      if (red.kkt_residual(x, y, z) <= cfg.tol && red.relative_gap(x, z) <= cfg.tol) {
        converged = true;
        break;
      }
    }
    if (it % cfg.balance_every == 0 && std::hypot(primal_res, dual_res) < best_res) {
      best_res = std::hypot(primal_res, dual_res);
      best_x = x;
      best_y = y;
      best_z = z;
    }
    if (cfg.adapt_sigma && it % cfg.balance_every == 0) {
      double next = sigma;
      if (primal_res > cfg.balance_ratio * dual_res) {
        next = sigma * cfg.sigma_factor;
      } else if (dual_res > cfg.balance_ratio * primal_res) {
        next = sigma / cfg.sigma_factor;
      }
      if (next != sigma) {
        sigma = next;
        xstep.factor(sigma);
      }
    }
  }

  if (!converged && best_x.size() > 0 &&
      red.kkt_residual(best_x, best_y, best_z) < red.kkt_residual(x, y, z)) {
    x = std::move(best_x);
    y = std::move(best_y);
    z = std::move(best_z);
  }
  out.iterations = converged ? it : cfg.max_iter;
  out.converged = converged;
  out.final_sigma = sigma;
  out.achieved_kkt = red.kkt_residual(x, y, z);
  out.gap = red.relative_gap(x, z);
  out.x = std::move(x);
  out.y = std::move(y);
  out.xi = std::move(z);
  return out;
}

FullSolve solve_full(const ProblemInstance& inst, double lambda, const AdmmConfig& cfg,
                     const KktTriple* warm) {
  const IndexPartition part = build_partition(inst.incidence(), {});
  const ReducedProblem red = reduce_problem(inst, part, lambda);
  SubSolution sub;
  if (warm != nullptr) {
    const AdmmStart start = map_warm_start(red, warm->x, warm->z);
    sub = solve_reduced_admm(red, cfg, &start);
  } else {
    sub = solve_reduced_admm(red, cfg);
  }
  FullPrimal primal = recover_primal(part, sub.x, sub.y);
  Matrix z = Matrix::Zero(inst.block_dim(), inst.num_blocks());
  for (std::size_t c = 0; c < part.complement.size(); ++c) z.col(part.complement[c]) = sub.xi.col(static_cast<Index>(c));
  FullSolve out;
  out.triple = make_triple(inst, lambda, std::move(primal.x), std::move(primal.y), std::move(z));
  out.iterations = sub.iterations;
  out.converged = sub.converged;
  return out;
}

}  // namespace asclust
