// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "asclust/apg.hpp"
#include "asclust/graph.hpp"
#include "asclust/io.hpp"
#include "asclust/model.hpp"
#include "asclust/path.hpp"
#include "asclust/regularizer.hpp"
#include "asclust/sieve.hpp"

using namespace asclust;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail, bool warn = false) {
  std::printf("[%s] criterion %d %s: %s%s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(),
              warn ? " (WARNING)" : "");
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix gaussian(std::mt19937_64& rng, Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(rows, cols);
  for (Index k = 0; k < m.size(); ++k) m.data()[k] = g(rng);
  return m;
}

ProblemInstance t1() {
  Matrix a(1, 3);
  a << 0, 1, 5;
  return ProblemInstance(a, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
}

// Finite-convergence bookkeeping shared by every sieve run.
struct RoundLedger {
  long runs = 0;
  long bound_violations = 0;
  long eas_more_rounds = 0;

  void check(const SieveResult& as, const SieveResult& eas, std::size_t initial) {
    ++runs;
    if (as.state.rounds > static_cast<int>(initial) + 1) ++bound_violations;
    if (eas.state.rounds > static_cast<int>(initial) + 1) ++bound_violations;
    if (eas.state.rounds > as.state.rounds) ++eas_more_rounds;
  }
};

void criterion_1_2(RoundLedger& ledger) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> n_dist(4, 12), d_dist(1, 3);
  double worst_obj = 0.0, worst_res = 0.0;
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    const Index n = n_dist(rng), d = d_dist(rng);
    const Index k = std::uniform_int_distribution<Index>(1, std::min<Index>(4, n - 1))(rng);
    const ProblemInstance inst = build_knn_graph(gaussian(rng, d, n), k);
    for (const double lambda : {0.05, 0.5, 5.0}) {
      AdmmConfig tight;
      tight.tol = 1e-10;
      tight.max_iter = 200000;
      const FullSolve ref = solve_full(inst, lambda, tight);
      const double f_ref = primal_objective(inst, lambda, ref.triple.x);
      SolveConfig cfg;
      cfg.lambda = lambda;
      const SieveResult as = as_solve(inst, cfg, all_blocks(inst));
      const SieveResult eas = eas_solve(inst, cfg, all_blocks(inst));
      ledger.check(as, eas, static_cast<std::size_t>(inst.num_blocks()));
      for (const SieveResult* r : {&as, &eas}) {
        const double obj = std::abs(primal_objective(inst, lambda, r->triple.x) - f_ref) / (1.0 + std::abs(f_ref));
        const double res = kkt_residual(inst, lambda, r->triple.x, r->triple.y, r->triple.z);
        worst_obj = std::max(worst_obj, obj);
        worst_res = std::max(worst_res, res);
        if (obj > 1e-5 || res > 1e-6) ++bad;
      }
    }
  }
  report(1, "oracle equivalence", bad == 0,
         fmt("150 solves x {AS, EAS}; max |dF|/(1+|F|) = %.2e (<= 1e-5), max R = %.2e (<= 1e-6), failures %.0f",
             worst_obj, worst_res, bad));
}

void criterion_3() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = -1e300;
  int instances = 0, attempts = 0;
  while (instances < 20 && attempts < 1000) {
    ++attempts;
    const Index n = 6 + instances % 8, d = 1 + instances % 3;
    const ProblemInstance inst = build_knn_graph(gaussian(rng, d, n), 3);
    std::vector<Index> sieved;
    for (Index l = 0; l < inst.num_blocks(); ++l)
      if (u(rng) < 0.7) sieved.push_back(l);
    const IndexPartition p = build_partition(inst.incidence(), sieved);
    if (p.sieved.empty()) continue;
    const NullSpaceProjector proj(inst.incidence().submatrix(p.gamma, p.sieved));
    // dual recovery data: stationarity rhs from a random primal point
    const Matrix rhs = gaussian(rng, d, static_cast<Index>(p.gamma.size()), 2.0);
    const Matrix u0 = proj.particular_solution(rhs) + proj.project(gaussian(rng, d, proj.num_edges(), 2.0));
    Vector radii(proj.num_edges());
    for (Index c = 0; c < radii.size(); ++c) radii(c) = 0.2 + u(rng);
    if (ball_distance_objective(u0, radii, Matrix::Zero(d, proj.num_edges())) < 1e-6) continue;

    const ApgResult ref = apg_minimize(u0, radii, proj, ApgConfig{0.0, 100000, false});
    const double h_star = ref.objective;
    const double dn = ref.d.squaredNorm();
    const ApgResult run = apg_minimize(u0, radii, proj, ApgConfig{0.0, 50, true});
    for (std::size_t k = 1; k <= run.trace.size(); ++k) {
      const double kk = static_cast<double>(k);
      worst = std::max(worst, run.trace[k - 1] - h_star - 2.0 * dn / ((kk + 1) * (kk + 1)));
    }
    ++instances;
  }
  report(3, "APG rate", instances == 20 && worst <= 1e-9,
         fmt("%.0f instances, k <= 50; max over k of h(d^k) - h(d*) - 2||d*||^2/(k+1)^2 = %.2e (<= 1e-9)",
             instances, worst));
}

void criterion_4() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad_identity = 0, bad_rank = 0, rank_checks = 0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 3 + t % 28;
    const Index k = std::min<Index>(n - 1, 1 + t % 4);
    const ProblemInstance inst = build_knn_graph(gaussian(rng, 2, n), k);
    std::vector<Index> sieved;
    const double keep = u(rng);
    for (Index l = 0; l < inst.num_blocks(); ++l)
      if (u(rng) < keep) sieved.push_back(l);
    const IndexPartition p = build_partition(inst.incidence(), sieved);
    const auto& inc = inst.incidence();
    const SparseMatrix b_beta = inc.submatrix(p.beta, p.sieved);
    const SparseMatrix lhs = SparseMatrix(inc.submatrix(p.alpha, p.sieved)) +
                             p.m_gamma_alpha * inc.submatrix(p.gamma, p.sieved);
    const bool zero_beta = b_beta.nonZeros() == 0 || Matrix(b_beta).cwiseAbs().maxCoeff() == 0.0;
    const bool zero_lhs = lhs.nonZeros() == 0 || Matrix(lhs).cwiseAbs().maxCoeff() == 0.0;
    if (!zero_beta || !zero_lhs) ++bad_identity;
    if (n <= 30 && !p.gamma.empty()) {
      ++rank_checks;
      const Eigen::FullPivLU<Matrix> lu(Matrix(inc.submatrix(p.gamma, p.sieved)));
      if (lu.rank() != static_cast<Index>(p.gamma.size())) ++bad_rank;
    }
  }
  report(4, "partition identities", bad_identity == 0 && bad_rank == 0,
         fmt("100 (graph, I) pairs: identity failures %.0f, rank failures %.0f of %.0f dense checks", bad_identity,
             bad_rank, rank_checks));
}

void criterion_5() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> tau_dist(1e-3, 10.0);
  double worst_moreau = 0.0, worst_lip = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Index d = 1 + t % 5;
    const Vector v1 = gaussian(rng, d, 1, 3.0), v2 = gaussian(rng, d, 1, 3.0);
    const double tau = tau_dist(rng);
    worst_moreau = std::max(worst_moreau, (prox_block(v1, tau) + project_ball(v1, tau) - v1).norm());
    worst_lip = std::max(worst_lip, (prox_block(v1, tau) - prox_block(v2, tau)).norm() - (v1 - v2).norm());
  }
  report(5, "Moreau/prox", worst_moreau <= 1e-12 && worst_lip <= 1e-12,
         fmt("1000 draws: max Moreau defect %.2e, max expansion %.2e (both <= 1e-12)", worst_moreau, worst_lip));
}

struct MoonRun {
  PathResult as;
  PathResult direct;
  std::vector<Index> arc;
  ProblemInstance inst;
  double as_seconds = 0.0;
  double direct_seconds = 0.0;
};

MoonRun run_moons(Index n) {
  MoonRun out;
  const HalfMoons hm = gen_two_half_moons(n, 0.1, 1);
  out.arc = hm.arc;
  out.inst = build_knn_graph(hm.data, 10);
  PathConfig cfg;
  auto t0 = std::chrono::steady_clock::now();
  out.as = solve_path(out.inst, cfg);
  out.as_seconds = seconds_since(t0);
  cfg.mode = SieveMode::kDirect;
  t0 = std::chrono::steady_clock::now();
  out.direct = solve_path(out.inst, cfg);
  out.direct_seconds = seconds_since(t0);
  return out;
}

bool path_valid(const ProblemInstance& inst, const PathResult& r, double& worst, std::size_t& points) {
  bool ok = r.records.size() == 46;
  Index previous = inst.num_blocks();
  points = r.records.size();
  for (const auto& rec : r.records) {
    if (!rec.certified || !rec.error.empty() || rec.solution.x.size() == 0) {
      ok = false;
      worst = std::max(worst, std::numeric_limits<double>::infinity());
      continue;
    }
    const double res = kkt_residual(inst, rec.lambda, rec.solution.x, rec.solution.y, rec.solution.z);
    worst = std::max(worst, res);
    if (res > 1e-6 || rec.fused_blocks > previous) ok = false;
    previous = rec.fused_blocks;
  }
  return ok;
}

}  // namespace

int main() {
  RoundLedger ledger;
  criterion_1_2(ledger);

  // T1 path under both sieves for criteria 2 and 8
  const ProblemInstance tiny = t1();
  PathConfig t1_cfg;
  const PathResult t1_as = solve_path(tiny, t1_cfg);
  for (const double lambda : t1_cfg.lambdas) {
    SolveConfig sc;
    sc.lambda = lambda;
    ledger.check(as_solve(tiny, sc, all_blocks(tiny)), eas_solve(tiny, sc, all_blocks(tiny)),
                 static_cast<std::size_t>(tiny.num_blocks()));
  }
  report(2, "finite convergence", ledger.bound_violations == 0 && ledger.eas_more_rounds == 0,
         fmt("%.0f paired runs: rounds > |I0|+1 in %.0f, EAS rounds > AS rounds in %.0f", ledger.runs,
             ledger.bound_violations, ledger.eas_more_rounds));

  criterion_3();
  criterion_4();
  criterion_5();

  const MoonRun m500 = run_moons(500);
  const MoonRun m1000 = run_moons(1000);
  const double r500 = m500.as_seconds / m500.direct_seconds;
  const double r1000 = m1000.as_seconds / m1000.direct_seconds;
  report(6, "desk-scale speedup", r500 <= 0.7 && r1000 <= 0.7,
         fmt("n=500: AS %.2fs / direct %.2fs", m500.as_seconds, m500.direct_seconds) +
             fmt(" = %.3f; n=1000: AS %.2fs / direct %.2fs", r500, m1000.as_seconds, m1000.direct_seconds) +
             fmt(" = %.3f (<= 0.7)", r1000));

  {
    const fs::path dir = fs::temp_directory_path() / "asclust_acceptance_n1000";
    fs::remove_all(dir);
    emit_report(m1000.as, dir);
    std::ifstream in(dir / "summary.json");
    const auto j = nlohmann::json::parse(in);
    const double avg = j.at("average_problem_dimension").get<double>();
    const double half = 0.5 * 1000.0;
    double prefix = 0.0;
    int prefix_count = 0;
    for (const auto& rec : m1000.as.records) {
      if (rec.lambda >= 5.0 - 1e-12) {
        prefix += static_cast<double>(rec.reduced_n);
        ++prefix_count;
      }
    }
    prefix /= std::max(prefix_count, 1);
    const bool warn = avg > half && prefix <= half;
    report(7, "reduction magnitude", avg <= half || warn,
           fmt("n=1000 average reduced dimension %.2f (<= %.0f); lambda >= 5 prefix average %.2f", avg, half,
               prefix),
           warn);
  }

  {
    double worst = 0.0;
    std::size_t n_t1 = 0, n_moon = 0;
    const bool ok_t1 = path_valid(tiny, t1_as, worst, n_t1);
    const bool ok_moon = path_valid(m500.inst, m500.as, worst, n_moon);
    report(8, "path warm-start validity", ok_t1 && ok_moon,
           fmt("T1 %.0f and n=500 %.0f grid points; max recomputed R = %.2e (<= 1e-6), fused counts monotone",
               static_cast<double>(n_t1), static_cast<double>(n_moon), worst));
  }

  {
    double best = 0.0, best_lambda = 0.0;
    for (const auto& rec : m500.as.records) {
      if (rec.labels.num_clusters != 2) continue;
      const double agree = label_agreement(rec.labels.labels, m500.arc);
      if (agree > best) {
        best = agree;
        best_lambda = rec.lambda;
      }
    }
    report(9, "clustering sanity", best >= 0.95,
           fmt("best 2-cluster agreement with arc labels %.4f at lambda = %.1f (>= 0.95)", best, best_lambda));
  }

  std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
