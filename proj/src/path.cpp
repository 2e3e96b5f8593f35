#include <chrono>
#include <cmath>
#include <string>

#include "asclust/errors.hpp"
#include "asclust/model.hpp"
#include "asclust/path.hpp"

namespace asclust {

const char* to_string(SieveMode mode) {
  switch (mode) {
    case SieveMode::kAs: return "as";
    case SieveMode::kEas: return "eas";
    case SieveMode::kDirect: return "direct";
  }
  return "?";
}

SieveMode parse_mode(const std::string& name) {
  if (name == "as") return SieveMode::kAs;
  if (name == "eas") return SieveMode::kEas;
  if (name == "direct") return SieveMode::kDirect;
  throw ContractViolation("unknown mode '" + name + "' (expected as, eas or direct)");
}

std::vector<double> PathConfig::default_lambda_grid() { return lambda_grid(10.0, 1.0, 0.2); }

std::vector<double> PathConfig::lambda_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(start >= stop)) throw ContractViolation("lambda grid needs start >= stop and step > 0");
  const auto count = static_cast<long>(std::floor((start - stop) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) out.push_back(start - static_cast<double>(k) * step);
  return out;
}

bool PathResult::all_certified() const {
  for (const auto& r : records) {
    if (!r.certified) return false;
  }
  return true;
}

double PathResult::total_seconds() const {
  double s = 0.0;
  for (const auto& r : records) s += r.seconds;
  return s;
}

PathResult solve_path(const ProblemInstance& inst, const PathConfig& cfg) {
  for (std::size_t k = 0; k < cfg.lambdas.size(); ++k) {
    if (!(cfg.lambdas[k] > 0.0)) throw ContractViolation("lambda values must be positive");
    if (k > 0 && !(cfg.lambdas[k] < cfg.lambdas[k - 1])) {
      throw ContractViolation("lambda sequence must be strictly decreasing");
    }
  }
  PathResult result;
  result.mode = cfg.mode;
  result.num_points = inst.num_points();
  result.num_blocks = inst.num_blocks();
  result.eps = cfg.solve.eps;

  std::vector<Index> initial =
      cfg.initial == InitialSieve::kAllBlocks ? all_blocks(inst) : std::vector<Index>{};
  FullWarmStart warm;
  bool have_warm = false;
  KktTriple previous;

  for (const double lambda : cfg.lambdas) {
    PathRecord rec;
    rec.lambda = lambda;
    rec.initial_sieved = cfg.mode == SieveMode::kDirect ? 0 : initial.size();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      KktTriple triple;
      if (cfg.mode == SieveMode::kDirect) {
        FullSolve fs = solve_full(inst, lambda, cfg.solve.admm, have_warm ? &previous : nullptr);
        triple = std::move(fs.triple);
        rec.reduced_n = inst.num_points();
        rec.reduced_m = inst.num_blocks();
        rec.admm_iterations = fs.iterations;
        rec.certified = triple.residual_norm <= cfg.solve.eps;
      } else {
        SolveConfig sc = cfg.solve;
        sc.lambda = lambda;
        SieveResult sr = cfg.mode == SieveMode::kEas
                             ? eas_solve(inst, sc, initial, have_warm ? &warm : nullptr)
                             : as_solve(inst, sc, initial, have_warm ? &warm : nullptr);
        triple = std::move(sr.triple);
        rec.rounds = sr.state.rounds;
        rec.reduced_n = sr.state.partition.reduced_dim();
        rec.reduced_m = static_cast<Index>(sr.state.partition.complement.size());
        rec.admm_iterations = sr.state.admm_iterations;
        rec.certified = sr.state.certified;
        rec.certified_by_eas = sr.state.certified_by_eas;
        initial = zero_blocks(inst, triple.x, cfg.solve.eps_hat);
      }
      rec.residual = triple.residual_norm;
      rec.gap = triple.gap;
      rec.labels = extract_labels(inst, triple.y, cfg.solve.eps_hat, lambda);
      for (Index l = 0; l < triple.y.cols(); ++l) {
        if (triple.y.col(l).norm() <= cfg.solve.eps_hat) ++rec.fused_blocks;
      }
      warm.x = triple.x;
      warm.z = triple.z;
      have_warm = true;
      if (cfg.mode == SieveMode::kDirect) previous = triple;
      if (cfg.keep_solutions) rec.solution = std::move(triple);
    } catch (const Error& e) {
      rec.certified = false;
      rec.error = e.what();
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace asclust
