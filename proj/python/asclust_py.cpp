#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asclust/errors.hpp"
#include "asclust/graph.hpp"
#include "asclust/io.hpp"
#include "asclust/model.hpp"
#include "asclust/path.hpp"

namespace py = pybind11;
using namespace asclust;

namespace {

py::dict triple_dict(const KktTriple& t) {
  py::dict d;
  d["x"] = t.x;
  d["y"] = t.y;
  d["z"] = t.z;
  d["residual"] = t.residual_norm;
  d["gap"] = t.gap;
  return d;
}

SolveConfig make_config(double lambda, double eps, double eps_hat, int admm_max_iter) {
  SolveConfig cfg;
  cfg.lambda = lambda;
  cfg.eps = eps;
  cfg.eps_hat = eps_hat;
  cfg.admm.tol = eps;
  cfg.admm.max_iter = admm_max_iter;
  cfg.apg.tol = eps;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_asclust, m) {
  m.doc() = "Weighted convex clustering solved with adaptive sieving";

  // Translators are tried newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

  py::class_<Edge>(m, "Edge")
      .def(py::init([](Index i, Index j, double w) { return Edge{i, j, w}; }), py::arg("i"), py::arg("j"),
           py::arg("w"))
      .def_readonly("i", &Edge::i)
      .def_readonly("j", &Edge::j)
      .def_readonly("w", &Edge::w)
      .def("__repr__", [](const Edge& e) {
        return "Edge(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ", " + std::to_string(e.w) + ")";
      });

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def(py::init([](const Matrix& data, const std::vector<std::tuple<Index, Index, double>>& edges) {
             std::vector<Edge> es;
             for (const auto& [i, j, w] : edges) es.push_back({i, j, w});
             return ProblemInstance(data, std::move(es));
           }),
           py::arg("data"), py::arg("edges"), "data is d x N, edges are (i, j, w) with i < j")
      .def_property_readonly("data", &ProblemInstance::data)
      .def_property_readonly("edges", &ProblemInstance::edges)
      .def_property_readonly("num_points", &ProblemInstance::num_points)
      .def_property_readonly("num_blocks", &ProblemInstance::num_blocks)
      .def_property_readonly("block_dim", &ProblemInstance::block_dim);

  m.def("build_knn_graph", &build_knn_graph, py::arg("data"), py::arg("k") = 10);
  m.def("load_matrix", [](const std::string& path) { return load_matrix(path); }, py::arg("path"));
  m.def(
      "gen_two_half_moons",
      [](Index n, double noise, std::uint64_t seed) {
        const HalfMoons hm = gen_two_half_moons(n, noise, seed);
        return py::make_tuple(hm.data, hm.arc);
      },
      py::arg("n"), py::arg("noise") = 0.1, py::arg("seed") = 1, "Returns (data 2 x n, arc labels)");
  m.def("primal_objective", &primal_objective, py::arg("inst"), py::arg("lam"), py::arg("x"));
  m.def("kkt_residual", &kkt_residual, py::arg("inst"), py::arg("lam"), py::arg("x"), py::arg("y"),
        py::arg("z"));
  m.def(
      "extract_labels",
      [](const ProblemInstance& inst, const Matrix& y, double eps_hat) {
        return extract_labels(inst, y, eps_hat).labels;
      },
      py::arg("inst"), py::arg("y"), py::arg("eps_hat") = 2e-16);
  m.def("label_agreement", &label_agreement, py::arg("a"), py::arg("b"));
  m.def("default_lambda_grid", &PathConfig::default_lambda_grid);

  m.def(
      "solve",
      [](const ProblemInstance& inst, double lam, const std::string& mode, double eps, double eps_hat,
         int admm_max_iter) {
        const SolveConfig cfg = make_config(lam, eps, eps_hat, admm_max_iter);
        const SieveMode sm = parse_mode(mode);
        if (sm == SieveMode::kDirect) throw ContractViolation("solve() takes mode 'as' or 'eas'");
        SieveResult r;
        {
          py::gil_scoped_release release;
          r = sm == SieveMode::kEas ? eas_solve(inst, cfg, all_blocks(inst)) : as_solve(inst, cfg, all_blocks(inst));
        }
        py::dict d = triple_dict(r.triple);
        d["rounds"] = r.state.rounds;
        d["certified"] = r.state.certified;
        d["certified_by_eas"] = r.state.certified_by_eas;
        d["admm_iterations"] = r.state.admm_iterations;
        return d;
      },
      py::arg("inst"), py::arg("lam"), py::arg("mode") = "as", py::arg("eps") = 1e-6, py::arg("eps_hat") = 2e-16,
      py::arg("admm_max_iter") = 20000, "Single-lambda solve by adaptive sieving from I0 = all blocks");

  m.def(
      "solve_full",
      [](const ProblemInstance& inst, double lam, double tol, int max_iter) {
        AdmmConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        FullSolve fs;
        {
          py::gil_scoped_release release;
          fs = solve_full(inst, lam, cfg);
        }
        py::dict d = triple_dict(fs.triple);
        d["iterations"] = fs.iterations;
        d["converged"] = fs.converged;
        return d;
      },
      py::arg("inst"), py::arg("lam"), py::arg("tol") = 1e-6, py::arg("max_iter") = 20000);

  m.def(
      "solve_path",
      [](const ProblemInstance& inst, std::optional<std::vector<double>> lambdas, const std::string& mode,
         double eps, double eps_hat, bool keep_solutions) {
        PathConfig cfg;
        if (lambdas) cfg.lambdas = *lambdas;
        cfg.mode = parse_mode(mode);
        cfg.solve = make_config(1.0, eps, eps_hat, cfg.solve.admm.max_iter);
        cfg.keep_solutions = keep_solutions;
        PathResult result;
        {
          py::gil_scoped_release release;
          result = solve_path(inst, cfg);
        }
        py::list out;
        for (const auto& r : result.records) {
          py::dict d;
          d["lambda"] = r.lambda;
          d["rounds"] = r.rounds;
          d["reduced_n"] = r.reduced_n;
          d["reduced_m"] = r.reduced_m;
          d["residual"] = r.residual;
          d["gap"] = r.gap;
          d["seconds"] = r.seconds;
          d["fused_blocks"] = r.fused_blocks;
          d["certified"] = r.certified;
          d["error"] = r.error;
          d["labels"] = r.labels.labels;
          d["num_clusters"] = r.labels.num_clusters;
          if (keep_solutions && r.error.empty()) d["x"] = r.solution.x;
          out.append(d);
        }
        return out;
      },
      py::arg("inst"), py::arg("lambdas") = py::none(), py::arg("mode") = "as", py::arg("eps") = 1e-6,
      py::arg("eps_hat") = 2e-16, py::arg("keep_solutions") = false,
      "Solution path; lambdas default to 10, 9.8, ..., 1");
}
