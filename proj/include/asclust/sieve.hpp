#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asclust/admm.hpp"
#include "asclust/apg.hpp"
#include "asclust/errors.hpp"
#include "asclust/graph.hpp"
#include "asclust/types.hpp"

namespace asclust {

struct SolveConfig {
  double lambda = 1.0;
  double eps = 1e-6;
  // Blocks with norm <= eps_hat count as zero.
  double eps_hat = 2e-16;
  int max_sieve_rounds = 10000;
  // j joins the violation set iff ||u_j|| > lambda w_j (1 + violation_slack).
  double violation_slack = 1e-8;
  // When the recovered triple misses eps but no block is violated, the same
  // reduced problem is re-solved with a 10x tighter sub-solver tolerance, at
  // most this many times.
  int max_refinements = 4;
  AdmmConfig admm;
  ApgConfig apg;
};

// Dual candidate built from a reduced solution: u_{I^c} is pinned to the given
// values and u_I = u0 + d, where u0 solves the gamma-stationarity equations
// with minimum norm and d in Null(B_{I,gamma}^T) minimises the distance of u_I
// to the balls {||u_l|| <= lambda w_l}.
struct DualRecovery {
  Matrix u;  // d x m
  Matrix w;  // d x |I|, u_I - Pi(u_I)
  int apg_iters = 0;
  double apg_obj = 0.0;
  bool apg_converged = true;
};

DualRecovery recover_dual(const ProblemInstance& inst, double lambda, const IndexPartition& partition,
                          const Matrix& x_bar, const Matrix& fixed_dual, const ApgConfig& apg_cfg);

// Blocks of I whose recovered dual leaves the ball of radius lambda w_j.
std::vector<Index> violation_set(const IndexPartition& partition, double lambda,
                                 const ProblemInstance& inst, const DualRecovery& dual,
                                 double slack = 1e-8);

struct SieveState {
  int rounds = 0;
  std::vector<Index> sieved;  // I of the last round
  IndexPartition partition;
  SubSolution last_sub;
  DualRecovery last_dual;
  std::vector<double> objective_history;
  std::vector<Index> violations;  // J of the last round
  std::vector<std::size_t> sieved_sizes;  // |I| at the start of every round
  long admm_iterations = 0;
  long apg_iterations = 0;
  int refinements = 0;
  int eas_attempts = 0;
  bool certified = false;
  bool certified_by_eas = false;
};

// Raised when max_sieve_rounds is hit; carries the loop state for diagnosis.
class SieveLimitError : public Error {
 public:
  SieveLimitError(const std::string& what, SieveState state)
      : Error(what), state_(std::move(state)) {}
  const SieveState& state() const noexcept { return state_; }

 private:
  SieveState state_;
};

struct SieveResult {
  KktTriple triple;
  SieveState state;
};

// Warm start for the sub-solver in full shapes (X d x N, Z d x m).
struct FullWarmStart {
  Matrix x;
  Matrix z;
};

// Adaptive sieving for one lambda, starting from the sieved set I0.
SieveResult as_solve(const ProblemInstance& inst, const SolveConfig& cfg, std::vector<Index> initial,
                     const FullWarmStart* warm = nullptr);

// Adaptive sieving with the optimality certificate on the enlarged zero set
// tried whenever two consecutive rounds agree on F_lambda to within eps.
SieveResult eas_solve(const ProblemInstance& inst, const SolveConfig& cfg, std::vector<Index> initial,
                      const FullWarmStart* warm = nullptr);

// Builds I~ = {l : ||(B x)_l|| <= eps_hat}, pins v on I~^c to the unique
// subgradient and recovers v on I~; returns the triple (x, Bx, v) iff its KKT
// residual is <= eps.
std::optional<KktTriple> eas_certify(const ProblemInstance& inst, double lambda, const Matrix& x_bar,
                                     double eps, double eps_hat, const ApgConfig& apg_cfg);

std::vector<Index> all_blocks(const ProblemInstance& inst);
// {l : ||(B x)_l|| < eps_hat}
std::vector<Index> zero_blocks(const ProblemInstance& inst, const Matrix& x, double eps_hat);

}  // namespace asclust
