#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "asclust/path.hpp"

namespace asclust {

// Reads a comma-separated numeric matrix, rows = features, columns = points.
// Blank lines and lines starting with '#' are skipped; the first remaining
// line is a header if none of its cells is numeric. NaN/Inf, ragged rows and
// non-numeric cells raise ParseError with the offending line.
Matrix load_matrix(const std::filesystem::path& path);
Matrix parse_matrix(const std::string& text);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

struct HalfMoons {
  Matrix data;              // 2 x n
  std::vector<Index> arc;   // 0 = upper arc, 1 = lower arc
};

// Two interleaved half circles: floor(n/2) points on (cos t, sin t) and the
// rest on (1 - cos t, 1/2 - sin t), t evenly spaced on [0, pi], plus
// isotropic Gaussian noise of standard deviation `noise`.
HalfMoons gen_two_half_moons(Index n, double noise, std::uint64_t seed);

struct RunManifest {
  std::string input;            // CSV path; empty means generate half moons
  Index k = 10;
  double lambda_start = 10.0;
  double lambda_stop = 1.0;
  double lambda_step = 0.2;
  double eps = 1e-6;
  double eps_hat = 2e-16;
  std::string mode = "as";      // as | eas | direct
  double admm_sigma = 1.0;
  int admm_max_iter = 20000;
  int apg_max_iter = 10;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  Index gen_n = 500;
  double gen_noise = 0.1;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

struct ReportSummary {
  std::string mode;
  Index num_points = 0;
  Index num_blocks = 0;
  std::size_t num_lambdas = 0;
  long total_rounds = 0;
  double average_problem_dimension = 0.0;  // mean reduced_n over lambdas
  double average_reduced_blocks = 0.0;     // mean reduced_m over lambdas
  double total_seconds = 0.0;
  double max_residual = 0.0;
  bool all_certified = true;
};

ReportSummary summarize(const PathResult& result);

// Writes path.csv, summary.json, plot_time.csv, plot_dimension.csv and one
// labels/labels_NNN.csv per lambda into dir (created if missing).
void emit_report(const PathResult& result, const std::filesystem::path& dir);

// Whole-path state (records and labels, no iterates) for re-emitting reports.
void save_state(const PathResult& result, const std::filesystem::path& path);
PathResult load_state(const std::filesystem::path& path);

// Rebuilds the summary from a path.csv written by emit_report.
ReportSummary summary_from_csv(const std::filesystem::path& csv, const std::string& mode,
                               Index num_points, Index num_blocks);

}  // namespace asclust
