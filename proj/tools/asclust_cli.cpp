// asclust: convex clustering paths with adaptive sieving.
//
//   asclust gen    --n 500 --noise 0.1 --seed 1 --output moons.csv
//   asclust path   --input moons.csv --mode as --output-dir out
//   asclust solve  --input moons.csv --lambda 2.5
//   asclust report --state out/state.json --output-dir out2
//
// ASCLUST_VERBOSE=0 silences progress output, 2 prints one line per lambda.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "asclust/errors.hpp"
#include "asclust/graph.hpp"
#include "asclust/io.hpp"
#include "asclust/model.hpp"
#include "asclust/path.hpp"

using namespace asclust;
namespace fs = std::filesystem;

namespace {

int verbosity() {
  const char* v = std::getenv("ASCLUST_VERBOSE");
  return v == nullptr ? 1 : std::atoi(v);
}

void add_manifest_flags(CLI::App* cmd, RunManifest& m) {
  cmd->add_option("--input", m.input, "Data CSV, rows = features, columns = points (default: half moons)");
  cmd->add_option("--k", m.k, "Neighbours in the k-NN graph")->check(CLI::PositiveNumber);
  cmd->add_option("--eps", m.eps, "KKT tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-hat", m.eps_hat, "Zero threshold for blocks")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", m.mode, "as | eas | direct")->check(CLI::IsMember({"as", "eas", "direct"}));
  cmd->add_option("--admm-sigma", m.admm_sigma, "Initial ADMM penalty")->check(CLI::PositiveNumber);
  cmd->add_option("--admm-max-iter", m.admm_max_iter, "ADMM iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--apg-max-iter", m.apg_max_iter, "APG iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--output-dir", m.output_dir, "Directory for reports");
  cmd->add_option("--seed", m.seed, "Seed for generated data");
  cmd->add_option("--gen-n", m.gen_n, "Points for generated data")->check(CLI::PositiveNumber);
  cmd->add_option("--gen-noise", m.gen_noise, "Noise for generated data")->check(CLI::NonNegativeNumber);
}

ProblemInstance load_instance(const RunManifest& m) {
  Matrix data;
  if (m.input.empty()) {
    data = gen_two_half_moons(m.gen_n, m.gen_noise, m.seed).data;
  } else {
    data = load_matrix(m.input);
  }
  return build_knn_graph(data, m.k);
}

SolveConfig solve_config(const RunManifest& m) {
  SolveConfig sc;
  sc.eps = m.eps;
  sc.eps_hat = m.eps_hat;
  sc.admm.sigma = m.admm_sigma;
  sc.admm.max_iter = m.admm_max_iter;
  sc.admm.tol = m.eps;
  sc.apg.max_iter = m.apg_max_iter;
  sc.apg.tol = m.eps;
  return sc;
}

RunManifest resolve(const RunManifest& flags, const std::string& manifest_path) {
  if (manifest_path.empty()) return flags;
  return read_manifest(manifest_path);
}

void print_record(const PathRecord& r) {
  std::printf("lambda=%-6.3g rounds=%-3d n=%-6ld m=%-7ld R=%.2e clusters=%-5ld %.3fs%s%s\n", r.lambda, r.rounds,
              static_cast<long>(r.reduced_n), static_cast<long>(r.reduced_m), r.residual,
              static_cast<long>(r.labels.num_clusters), r.seconds, r.certified ? "" : " UNCERTIFIED",
              r.error.empty() ? "" : (" error: " + r.error).c_str());
}

void print_summary(const ReportSummary& s) {
  std::printf("mode=%s N=%ld m=%ld lambdas=%zu rounds=%ld avg_dim=%.2f avg_blocks=%.2f time=%.3fs max_R=%.2e %s\n",
              s.mode.c_str(), static_cast<long>(s.num_points), static_cast<long>(s.num_blocks), s.num_lambdas,
              s.total_rounds, s.average_problem_dimension, s.average_reduced_blocks, s.total_seconds,
              s.max_residual, s.all_certified ? "certified" : "NOT certified");
}

int run_path(const RunManifest& m, double start, double stop, double step) {
  const ProblemInstance inst = load_instance(m);
  PathConfig cfg;
  cfg.lambdas = PathConfig::lambda_grid(start, stop, step);
  cfg.mode = parse_mode(m.mode);
  cfg.solve = solve_config(m);
  cfg.keep_solutions = false;
  if (verbosity() >= 1) {
    std::printf("N=%ld d=%ld m=%ld, %zu lambdas\n", static_cast<long>(inst.num_points()),
                static_cast<long>(inst.block_dim()), static_cast<long>(inst.num_blocks()), cfg.lambdas.size());
  }
  const PathResult result = solve_path(inst, cfg);
  if (verbosity() >= 2) {
    for (const auto& r : result.records) print_record(r);
  }
  const fs::path dir = m.output_dir;
  emit_report(result, dir);
  save_state(result, dir / "state.json");
  write_manifest(dir / "manifest.json", m);
  if (verbosity() >= 1) {
    print_summary(summarize(result));
    std::printf("report written to %s\n", dir.string().c_str());
  }
  return result.all_certified() ? 0 : 1;
}

int run_solve(const RunManifest& m, double lambda) {
  const ProblemInstance inst = load_instance(m);
  PathConfig cfg;
  cfg.lambdas = {lambda};
  cfg.mode = parse_mode(m.mode);
  cfg.solve = solve_config(m);
  const PathResult result = solve_path(inst, cfg);
  const PathRecord& r = result.records.front();
  if (verbosity() >= 1) print_record(r);
  if (r.error.empty()) {
    const fs::path dir = m.output_dir;
    fs::create_directories(dir);
    write_matrix(dir / "x.csv", r.solution.x);
    Matrix labels(1, static_cast<Index>(r.labels.labels.size()));
    for (std::size_t i = 0; i < r.labels.labels.size(); ++i) {
      labels(0, static_cast<Index>(i)) = static_cast<double>(r.labels.labels[i]);
    }
    write_matrix(dir / "labels.csv", labels);
  }
  return r.certified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex clustering paths with adaptive sieving"};
  app.require_subcommand(1);

  RunManifest path_flags;
  std::string path_manifest;
  double start = path_flags.lambda_start, stop = path_flags.lambda_stop, step = path_flags.lambda_step;
  auto* path_cmd = app.add_subcommand("path", "Solve along a decreasing lambda grid and write a report");
  add_manifest_flags(path_cmd, path_flags);
  path_cmd->add_option("--lambda-start", start, "Largest lambda");
  path_cmd->add_option("--lambda-stop", stop, "Smallest lambda");
  path_cmd->add_option("--lambda-step", step, "Grid spacing")->check(CLI::PositiveNumber);
  path_cmd->add_option("--manifest", path_manifest, "JSON manifest; overrides every other flag");

  RunManifest solve_flags;
  std::string solve_manifest;
  double lambda = 1.0;
  auto* solve_cmd = app.add_subcommand("solve", "Solve for a single lambda");
  add_manifest_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--lambda", lambda, "Penalty weight")->required()->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--manifest", solve_manifest, "JSON manifest; overrides every other flag");

  Index gen_n = 500;
  double gen_noise = 0.1;
  std::uint64_t gen_seed = 1;
  std::string gen_out, gen_labels;
  auto* gen_cmd = app.add_subcommand("gen", "Write a two-half-moons data set");
  gen_cmd->add_option("--n", gen_n, "Number of points")->check(CLI::Range(Index{2}, Index{100000000}));
  gen_cmd->add_option("--noise", gen_noise, "Gaussian noise level")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen_seed, "Random seed");
  gen_cmd->add_option("--output", gen_out, "Data CSV")->required();
  gen_cmd->add_option("--labels", gen_labels, "Optional CSV with the arc of every point");

  std::string state_path, report_dir;
  auto* report_cmd = app.add_subcommand("report", "Re-emit a report from a saved state");
  report_cmd->add_option("--state", state_path, "state.json written by 'path'")->required();
  report_cmd->add_option("--output-dir", report_dir, "Directory for the report")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*path_cmd) {
      if (!path_manifest.empty()) {
        const RunManifest m = read_manifest(path_manifest);
        return run_path(m, m.lambda_start, m.lambda_stop, m.lambda_step);
      }
      path_flags.lambda_start = start;
      path_flags.lambda_stop = stop;
      path_flags.lambda_step = step;
      return run_path(path_flags, start, stop, step);
    }
    if (*solve_cmd) return run_solve(resolve(solve_flags, solve_manifest), lambda);
    if (*gen_cmd) {
      const HalfMoons hm = gen_two_half_moons(gen_n, gen_noise, gen_seed);
      write_matrix(gen_out, hm.data);
      if (!gen_labels.empty()) {
        Matrix arc(1, gen_n);
        for (Index i = 0; i < gen_n; ++i) arc(0, i) = static_cast<double>(hm.arc[static_cast<std::size_t>(i)]);
        write_matrix(gen_labels, arc);
      }
      return 0;
    }
    if (*report_cmd) {
      const PathResult result = load_state(state_path);
      emit_report(result, report_dir);
      if (verbosity() >= 1) print_summary(summarize(result));
      return result.all_certified() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
