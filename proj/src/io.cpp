#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asclust/errors.hpp"
#include "asclust/io.hpp"

namespace asclust {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Parses the whole cell as a double; nullopt when the cell is not a number.
std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_open(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
}

}  // namespace

Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  bool seen_first = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split_cells(t);
    if (!seen_first) {
      seen_first = true;
      bool any_numeric = false;
      for (const auto& c : cells) any_numeric = any_numeric || parse_number(c).has_value();
      if (!any_numeric) continue;  // header
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = parse_number(cells[c]);
      if (!v) {
        throw ParseError("non-numeric cell '" + cells[c] + "' in column " + std::to_string(c + 1), line_no);
      }
      if (!std::isfinite(*v)) {
        throw ParseError("non-finite cell '" + cells[c] + "' in column " + std::to_string(c + 1), line_no);
      }
      row.push_back(*v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged row: expected " + std::to_string(rows.front().size()) + " cells, got " +
                           std::to_string(row.size()),
                       line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no numeric rows", line_no);
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  }
  return m;
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  ensure_open(out, path);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

HalfMoons gen_two_half_moons(Index n, double noise, std::uint64_t seed) {
  if (n < 2) throw ContractViolation("half moons need n >= 2");
  if (!(noise >= 0.0)) throw ContractViolation("noise must be nonnegative");
  const Index n_upper = n / 2;
  const Index n_lower = n - n_upper;
  HalfMoons out{Matrix(2, n), std::vector<Index>(static_cast<std::size_t>(n))};
  auto angle = [](Index k, Index count) {
    return count == 1 ? 0.0 : std::numbers::pi * static_cast<double>(k) / static_cast<double>(count - 1);
  };
  for (Index k = 0; k < n_upper; ++k) {
    const double t = angle(k, n_upper);
    out.data.col(k) << std::cos(t), std::sin(t);
    out.arc[static_cast<std::size_t>(k)] = 0;
  }
  for (Index k = 0; k < n_lower; ++k) {
    const double t = angle(k, n_lower);
    out.data.col(n_upper + k) << 1.0 - std::cos(t), 0.5 - std::sin(t);
    out.arc[static_cast<std::size_t>(n_upper + k)] = 1;
  }
  if (noise > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise);
    for (Index c = 0; c < n; ++c) {
      out.data(0, c) += gauss(rng);
      out.data(1, c) += gauss(rng);
    }
  }
  return out;
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::json j;
  j["input"] = m.input;
  j["k"] = m.k;
  j["lambda_start"] = m.lambda_start;
  j["lambda_stop"] = m.lambda_stop;
  j["lambda_step"] = m.lambda_step;
  j["eps"] = m.eps;
  j["eps_hat"] = m.eps_hat;
  j["mode"] = m.mode;
  j["admm_sigma"] = m.admm_sigma;
  j["admm_max_iter"] = m.admm_max_iter;
  j["apg_max_iter"] = m.apg_max_iter;
  j["output_dir"] = m.output_dir;
  j["seed"] = m.seed;
  j["gen_n"] = m.gen_n;
  j["gen_noise"] = m.gen_noise;
  return j.dump(2);
}

RunManifest manifest_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0);
  }
  RunManifest m;
  try {
    m.input = j.value("input", m.input);
    m.k = j.value("k", m.k);
    m.lambda_start = j.value("lambda_start", m.lambda_start);
    m.lambda_stop = j.value("lambda_stop", m.lambda_stop);
    m.lambda_step = j.value("lambda_step", m.lambda_step);
    m.eps = j.value("eps", m.eps);
    m.eps_hat = j.value("eps_hat", m.eps_hat);
    m.mode = j.value("mode", m.mode);
    m.admm_sigma = j.value("admm_sigma", m.admm_sigma);
    m.admm_max_iter = j.value("admm_max_iter", m.admm_max_iter);
    m.apg_max_iter = j.value("apg_max_iter", m.apg_max_iter);
    m.output_dir = j.value("output_dir", m.output_dir);
    m.seed = j.value("seed", m.seed);
    m.gen_n = j.value("gen_n", m.gen_n);
    m.gen_noise = j.value("gen_noise", m.gen_noise);
  } catch (const nlohmann::json::type_error& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0);
  }
  return m;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream out(path);
  ensure_open(out, path);
  out << manifest_to_json(m) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return manifest_from_json(ss.str());
}

}  // namespace asclust
