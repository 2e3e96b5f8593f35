#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "asclust/model.hpp"
#include "asclust/regularizer.hpp"
#include "asclust/sieve.hpp"

namespace asclust {
namespace {

Matrix gather_columns(const Matrix& m, const std::vector<Index>& cols) {
  Matrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Index>(c)) = m.col(cols[c]);
  return out;
}

Vector gather(const Vector& v, const std::vector<Index>& idx) {
  Vector out(static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out(static_cast<Index>(c)) = v(idx[c]);
  return out;
}

Matrix embed_complement(const IndexPartition& part, const Matrix& values, Index num_blocks) {
  Matrix out = Matrix::Zero(values.rows(), num_blocks);
  for (std::size_t c = 0; c < part.complement.size(); ++c) {
    out.col(part.complement[c]) = values.col(static_cast<Index>(c));
  }
  return out;
}

std::vector<Index> set_difference(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<Index> all_blocks(const ProblemInstance& inst) {
  std::vector<Index> out(static_cast<std::size_t>(inst.num_blocks()));
  for (Index l = 0; l < inst.num_blocks(); ++l) out[static_cast<std::size_t>(l)] = l;
  return out;
}

std::vector<Index> zero_blocks(const ProblemInstance& inst, const Matrix& x, double eps_hat) {
  const Matrix bx = inst.incidence().apply(x);
  std::vector<Index> out;
  for (Index l = 0; l < bx.cols(); ++l) {
    if (bx.col(l).norm() < eps_hat) out.push_back(l);
  }
  return out;
}

DualRecovery recover_dual(const ProblemInstance& inst, double lambda, const IndexPartition& partition,
                          const Matrix& x_bar, const Matrix& fixed_dual, const ApgConfig& apg_cfg) {
  const Index d = inst.block_dim();
  DualRecovery out;
  out.u = Matrix::Zero(d, inst.num_blocks());
  for (const Index l : partition.complement) out.u.col(l) = fixed_dual.col(l);
  out.w = Matrix::Zero(d, static_cast<Index>(partition.sieved.size()));
  if (partition.sieved.empty()) return out;

  const IncidenceMap& inc = inst.incidence();
  const NullSpaceProjector null_space(inc.submatrix(partition.gamma, partition.sieved));
  const SparseMatrix coupling = inc.submatrix(partition.gamma, partition.complement);

  // grad f(x)_gamma + B_{I^c,gamma}^T u_{I^c}
  const Matrix rhs = gather_columns(x_bar - inst.data(), partition.gamma) +
                     gather_columns(out.u, partition.complement) * coupling.transpose();
  const Matrix u0 = null_space.particular_solution(rhs);
  const Vector radii = lambda * gather(inst.weights(), partition.sieved);
  ApgResult apg = apg_minimize(u0, radii, null_space, apg_cfg);
  const Matrix u_sieved = u0 + apg.d;

  for (std::size_t c = 0; c < partition.sieved.size(); ++c) {
    const Index col = static_cast<Index>(c);
    out.u.col(partition.sieved[c]) = u_sieved.col(col);
    out.w.col(col) = u_sieved.col(col) - project_ball(u_sieved.col(col), radii(col));
  }
  out.apg_iters = apg.iterations;
  out.apg_obj = apg.objective;
  out.apg_converged = apg.converged;
  return out;
}

std::vector<Index> violation_set(const IndexPartition& partition, double lambda,
                                 const ProblemInstance& inst, const DualRecovery& dual, double slack) {
  std::vector<Index> out;
  for (const Index j : partition.sieved) {
    const double radius = lambda * inst.edges()[static_cast<std::size_t>(j)].w;
    if (dual.u.col(j).norm() > radius * (1.0 + slack)) out.push_back(j);
  }
  return out;
}

std::optional<KktTriple> eas_certify(const ProblemInstance& inst, double lambda, const Matrix& x_bar,
                                     double eps, double eps_hat, const ApgConfig& apg_cfg) {
  const Matrix y = inst.incidence().apply(x_bar);
  std::vector<Index> zero;
  Matrix theta = Matrix::Zero(y.rows(), y.cols());
  for (Index l = 0; l < y.cols(); ++l) {
    const double ny = y.col(l).norm();
    if (ny <= eps_hat) {
      zero.push_back(l);
    } else {
      theta.col(l) = (lambda * inst.edges()[static_cast<std::size_t>(l)].w / ny) * y.col(l);
    }
  }
  const IndexPartition part = build_partition(inst.incidence(), std::move(zero));
  const DualRecovery dual = recover_dual(inst, lambda, part, x_bar, theta, apg_cfg);
  if (kkt_residual(inst, lambda, x_bar, y, dual.u) > eps) return std::nullopt;
  return make_triple(inst, lambda, x_bar, y, dual.u);
}

namespace {

SieveResult run_sieve(const ProblemInstance& inst, const SolveConfig& cfg, std::vector<Index> initial,
                      const FullWarmStart* warm, bool enhanced) {
  if (!(cfg.lambda >= 0.0)) throw ContractViolation("lambda must be nonnegative");
  if (!(cfg.eps > 0.0) || !(cfg.eps_hat > 0.0)) throw ContractViolation("eps and eps_hat must be positive");
  const double lambda = cfg.lambda;
  const Index m = inst.num_blocks();

  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  if (!initial.empty() && (initial.front() < 0 || initial.back() >= m)) {
    throw ContractViolation("initial sieved set has an out-of-range block index");
  }

  SieveResult result;
  SieveState& state = result.state;
  state.sieved = std::move(initial);

  AdmmConfig admm = cfg.admm;
  FullWarmStart current;
  const bool have_warm = warm != nullptr;
  if (have_warm) current = *warm;

  for (int round = 1; round <= cfg.max_sieve_rounds; ++round) {
    state.rounds = round;
    state.sieved_sizes.push_back(state.sieved.size());
    state.partition = build_partition(inst.incidence(), state.sieved);
    const ReducedProblem red = reduce_problem(inst, state.partition, lambda);

    AdmmStart start;
    const AdmmStart* start_ptr = nullptr;
    if (have_warm || round > 1) {
      start = map_warm_start(red, current.x, current.z);
      start_ptr = &start;
    }

    while (true) {
      state.last_sub = solve_reduced_admm(red, admm, start_ptr);
      state.admm_iterations += state.last_sub.iterations;
      const SubSolution& sub = state.last_sub;
      FullPrimal primal = recover_primal(state.partition, sub.x, sub.y);
      const double objective = primal_objective(inst, lambda, primal.x);

      if (enhanced && !state.objective_history.empty() &&
          std::abs(objective - state.objective_history.back()) <= cfg.eps) {
        ++state.eas_attempts;
        if (auto certified = eas_certify(inst, lambda, primal.x, cfg.eps, cfg.eps_hat, cfg.apg)) {
          state.objective_history.push_back(objective);
          state.certified = true;
          state.certified_by_eas = true;
          state.violations.clear();
          result.triple = std::move(*certified);
          return result;
        }
      }
      state.objective_history.push_back(objective);

      state.last_dual = recover_dual(inst, lambda, state.partition, primal.x,
                                     embed_complement(state.partition, sub.xi, m), cfg.apg);
      state.apg_iterations += state.last_dual.apg_iters;
      const double residual = kkt_residual(inst, lambda, primal.x, primal.y, state.last_dual.u);
      if (residual <= cfg.eps) {
        state.certified = true;
        state.violations.clear();
        result.triple = make_triple(inst, lambda, std::move(primal.x), std::move(primal.y), state.last_dual.u);
        return result;
      }

      state.violations = violation_set(state.partition, lambda, inst, state.last_dual, cfg.violation_slack);
      if (!state.violations.empty()) {
        state.sieved = set_difference(state.sieved, state.violations);
        current.x = std::move(primal.x);
        current.z = state.last_dual.u;
        break;
      }
      // Nothing to sieve out: the reduced solve was not accurate enough.
      if (state.refinements >= cfg.max_refinements) {
        result.triple = make_triple(inst, lambda, std::move(primal.x), std::move(primal.y), state.last_dual.u);
        return result;
      }
      ++state.refinements;
      admm.tol *= 0.1;
      start = AdmmStart{sub.x, sub.y, sub.xi};
      start_ptr = &start;
    }
  }
  throw SieveLimitError("sieving did not terminate within " + std::to_string(cfg.max_sieve_rounds) +
                            " rounds (|I| = " + std::to_string(state.sieved.size()) + ")",
                        state);
}

}  // namespace

SieveResult as_solve(const ProblemInstance& inst, const SolveConfig& cfg, std::vector<Index> initial,
                     const FullWarmStart* warm) {
  return run_sieve(inst, cfg, std::move(initial), warm, false);
}

SieveResult eas_solve(const ProblemInstance& inst, const SolveConfig& cfg, std::vector<Index> initial,
                      const FullWarmStart* warm) {
  return run_sieve(inst, cfg, std::move(initial), warm, true);
}

}  // namespace asclust
