#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "asclust/errors.hpp"
#include "asclust/io.hpp"

namespace asclust {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

struct CsvRow {
  int rounds;
  Index reduced_n;
  Index reduced_m;
  double residual;
  double seconds;
  bool certified;
};

ReportSummary finish_summary(ReportSummary s, const std::vector<CsvRow>& rows) {
  s.num_lambdas = rows.size();
  double sum_n = 0.0;
  double sum_m = 0.0;
  for (const auto& r : rows) {
    s.total_rounds += r.rounds;
    sum_n += static_cast<double>(r.reduced_n);
    sum_m += static_cast<double>(r.reduced_m);
    s.total_seconds += r.seconds;
    s.max_residual = std::max(s.max_residual, r.residual);
    s.all_certified = s.all_certified && r.certified;
  }
  if (!rows.empty()) {
    s.average_problem_dimension = sum_n / static_cast<double>(rows.size());
    s.average_reduced_blocks = sum_m / static_cast<double>(rows.size());
  }
  return s;
}

nlohmann::json summary_json(const ReportSummary& s) {
  nlohmann::json j;
  j["mode"] = s.mode;
  j["num_points"] = s.num_points;
  j["num_blocks"] = s.num_blocks;
  j["num_lambdas"] = s.num_lambdas;
  j["total_rounds"] = s.total_rounds;
  j["average_problem_dimension"] = s.average_problem_dimension;
  j["average_reduced_blocks"] = s.average_reduced_blocks;
  j["total_seconds"] = s.total_seconds;
  j["max_residual"] = s.max_residual;
  j["all_certified"] = s.all_certified;
  return j;
}

}  // namespace

ReportSummary summarize(const PathResult& result) {
  ReportSummary s;
  s.mode = to_string(result.mode);
  s.num_points = result.num_points;
  s.num_blocks = result.num_blocks;
  std::vector<CsvRow> rows;
  for (const auto& r : result.records) {
    rows.push_back({r.rounds, r.reduced_n, r.reduced_m, r.residual, r.seconds, r.certified});
  }
  return finish_summary(s, rows);
}

void emit_report(const PathResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "path.csv");
    out << "lambda,rounds,reduced_n,reduced_m,residual,gap,seconds,num_clusters,certified,error\n";
    for (const auto& r : result.records) {
      std::string err = r.error;
      for (char& c : err) {
        if (c == ',' || c == '\n') c = ' ';
      }
      out << fmt(r.lambda) << ',' << r.rounds << ',' << r.reduced_n << ',' << r.reduced_m << ','
          << fmt(r.residual) << ',' << fmt(r.gap) << ',' << fmt(r.seconds) << ',' << r.labels.num_clusters
          << ',' << (r.certified ? 1 : 0) << ',' << err << '\n';
    }
  }
  {
    auto out = open_out(dir / "summary.json");
    out << summary_json(summarize(result)).dump(2) << '\n';
  }
  {
    auto out = open_out(dir / "plot_time.csv");
    out << "lambda,seconds\n";
    for (const auto& r : result.records) out << fmt(r.lambda) << ',' << fmt(r.seconds) << '\n';
  }
  {
    auto out = open_out(dir / "plot_dimension.csv");
    out << "lambda,reduced_n,reduced_m\n";
    for (const auto& r : result.records) out << fmt(r.lambda) << ',' << r.reduced_n << ',' << r.reduced_m << '\n';
  }
  if (result.records.empty()) return;
  const auto label_dir = dir / "labels";
  std::filesystem::create_directories(label_dir);
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& r = result.records[k];
    char name[32];
    std::snprintf(name, sizeof(name), "labels_%03zu.csv", k);
    auto out = open_out(label_dir / name);
    out << "# lambda=" << fmt(r.lambda) << '\n' << "point,label\n";
    for (std::size_t i = 0; i < r.labels.labels.size(); ++i) out << i << ',' << r.labels.labels[i] << '\n';
  }
}

void save_state(const PathResult& result, const std::filesystem::path& path) {
  nlohmann::json j;
  j["mode"] = to_string(result.mode);
  j["num_points"] = result.num_points;
  j["num_blocks"] = result.num_blocks;
  j["eps"] = result.eps;
  j["records"] = nlohmann::json::array();
  for (const auto& r : result.records) {
    nlohmann::json e;
    e["lambda"] = r.lambda;
    e["rounds"] = r.rounds;
    e["reduced_n"] = r.reduced_n;
    e["reduced_m"] = r.reduced_m;
    e["initial_sieved"] = r.initial_sieved;
    e["residual"] = r.residual;
    e["gap"] = r.gap;
    e["seconds"] = r.seconds;
    e["admm_iterations"] = r.admm_iterations;
    e["fused_blocks"] = r.fused_blocks;
    e["certified"] = r.certified;
    e["certified_by_eas"] = r.certified_by_eas;
    e["error"] = r.error;
    e["labels"] = r.labels.labels;
    e["num_clusters"] = r.labels.num_clusters;
    j["records"].push_back(std::move(e));
  }
  auto out = open_out(path);
  out << j.dump() << '\n';
}

PathResult load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state '" + path.string() + "'");
  PathResult result;
  try {
    const auto j = nlohmann::json::parse(in);
    result.mode = parse_mode(j.at("mode").get<std::string>());
    result.num_points = j.at("num_points").get<Index>();
    result.num_blocks = j.at("num_blocks").get<Index>();
    result.eps = j.at("eps").get<double>();
    for (const auto& e : j.at("records")) {
      PathRecord r;
      r.lambda = e.at("lambda").get<double>();
      r.rounds = e.at("rounds").get<int>();
      r.reduced_n = e.at("reduced_n").get<Index>();
      r.reduced_m = e.at("reduced_m").get<Index>();
      r.initial_sieved = e.at("initial_sieved").get<std::size_t>();
      r.residual = e.at("residual").get<double>();
      r.gap = e.at("gap").get<double>();
      r.seconds = e.at("seconds").get<double>();
      r.admm_iterations = e.at("admm_iterations").get<long>();
      r.fused_blocks = e.at("fused_blocks").get<Index>();
      r.certified = e.at("certified").get<bool>();
      r.certified_by_eas = e.at("certified_by_eas").get<bool>();
      r.error = e.at("error").get<std::string>();
      r.labels.labels = e.at("labels").get<std::vector<Index>>();
      r.labels.num_clusters = e.at("num_clusters").get<Index>();
      r.labels.lambda = r.lambda;
      result.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  return result;
}

ReportSummary summary_from_csv(const std::filesystem::path& csv, const std::string& mode, Index num_points,
                               Index num_blocks) {
  std::ifstream in(csv);
  if (!in) throw Error("cannot open '" + csv.string() + "'");
  ReportSummary s;
  s.mode = mode;
  s.num_points = num_points;
  s.num_blocks = num_blocks;
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 9) throw ParseError("short row in " + csv.string(), line_no);
    try {
      rows.push_back({std::stoi(cells[1]), static_cast<Index>(std::stoll(cells[2])),
                      static_cast<Index>(std::stoll(cells[3])), std::stod(cells[4]), std::stod(cells[6]),
                      cells[8] == "1"});
    } catch (const std::logic_error&) {
      throw ParseError("bad number in " + csv.string(), line_no);
    }
  }
  return finish_summary(s, rows);
}

}  // namespace asclust
