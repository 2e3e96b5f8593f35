#pragma once

#include <string>
#include <vector>

#include "asclust/labels.hpp"
#include "asclust/sieve.hpp"

namespace asclust {

enum class SieveMode { kAs, kEas, kDirect };

const char* to_string(SieveMode mode);
SieveMode parse_mode(const std::string& name);

enum class InitialSieve { kAllBlocks, kEmpty };

struct PathConfig {
  std::vector<double> lambdas = default_lambda_grid();
  SieveMode mode = SieveMode::kAs;
  InitialSieve initial = InitialSieve::kAllBlocks;
  // lambda is overwritten per grid point.
  SolveConfig solve;
  bool keep_solutions = true;

  // 10, 9.8, ..., 1
  static std::vector<double> default_lambda_grid();
  // start, start - step, ... down to stop (inclusive up to rounding).
  static std::vector<double> lambda_grid(double start, double stop, double step);
};

struct PathRecord {
  double lambda = 0.0;
  int rounds = 0;
  Index reduced_n = 0;  // |alpha| + |beta| of the last reduced problem
  Index reduced_m = 0;  // |I^c| of the last reduced problem
  std::size_t initial_sieved = 0;
  double residual = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
  long admm_iterations = 0;
  Index fused_blocks = 0;  // blocks with ||y_l|| <= eps_hat
  bool certified = false;
  bool certified_by_eas = false;
  std::string error;
  ClusterLabels labels;
  KktTriple solution;  // empty unless keep_solutions
};

struct PathResult {
  SieveMode mode = SieveMode::kAs;
  Index num_points = 0;
  Index num_blocks = 0;
  double eps = 0.0;
  std::vector<PathRecord> records;

  bool all_certified() const;
  double total_seconds() const;
};

// Solves along a strictly decreasing lambda grid. Each lambda after the first
// starts sieving from the blocks where B x* of the previous lambda is below
// eps_hat, and the sub-solver is warm-started from the previous solution.
// A failure at one lambda is recorded and the path continues.
PathResult solve_path(const ProblemInstance& inst, const PathConfig& cfg);

}  // namespace asclust
