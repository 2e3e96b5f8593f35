#include <algorithm>
#include <cmath>
#include <string>

#include "asclust/errors.hpp"
#include "asclust/incidence.hpp"
#include "asclust/regularizer.hpp"
#include "asclust/types.hpp"

namespace asclust {

IncidenceMap::IncidenceMap(Index num_nodes, std::vector<std::pair<Index, Index>> arcs)
    : num_nodes_(num_nodes), arcs_(std::move(arcs)), j_(num_nodes, static_cast<Index>(arcs_.size())) {
  std::vector<Triplet> entries;
  entries.reserve(2 * arcs_.size());
  for (std::size_t l = 0; l < arcs_.size(); ++l) {
    const auto [i, j] = arcs_[l];
    if (i < 0 || j < 0 || i >= num_nodes || j >= num_nodes || i == j) {
      throw ContractViolation("incidence: bad arc " + std::to_string(l));
    }
    entries.emplace_back(i, static_cast<Index>(l), 1.0);
    entries.emplace_back(j, static_cast<Index>(l), -1.0);
  }
  j_.setFromTriplets(entries.begin(), entries.end());
  j_.makeCompressed();
}

Matrix IncidenceMap::apply(const Matrix& x) const {
  if (x.cols() != num_nodes_) throw ContractViolation("incidence apply: column count mismatch");
  Matrix out(x.rows(), num_edges());
  for (Index l = 0; l < num_edges(); ++l) {
    const auto [i, j] = arcs_[static_cast<std::size_t>(l)];
    out.col(l) = x.col(i) - x.col(j);
  }
  return out;
}

Matrix IncidenceMap::adjoint(const Matrix& z) const {
  if (z.cols() != num_edges()) throw ContractViolation("incidence adjoint: column count mismatch");
  Matrix out = Matrix::Zero(z.rows(), num_nodes_);
  for (Index l = 0; l < num_edges(); ++l) {
    const auto [i, j] = arcs_[static_cast<std::size_t>(l)];
    out.col(i) += z.col(l);
    out.col(j) -= z.col(l);
  }
  return out;
}

SparseMatrix IncidenceMap::submatrix(const std::vector<Index>& nodes,
                                     const std::vector<Index>& edges) const {
  std::vector<Index> row_of(static_cast<std::size_t>(num_nodes_), -1);
  for (std::size_t r = 0; r < nodes.size(); ++r) row_of[static_cast<std::size_t>(nodes[r])] = static_cast<Index>(r);
  std::vector<Triplet> entries;
  entries.reserve(2 * edges.size());
  for (std::size_t c = 0; c < edges.size(); ++c) {
    const auto [i, j] = arcs_[static_cast<std::size_t>(edges[c])];
    if (const Index r = row_of[static_cast<std::size_t>(i)]; r >= 0) entries.emplace_back(r, static_cast<Index>(c), 1.0);
    if (const Index r = row_of[static_cast<std::size_t>(j)]; r >= 0) entries.emplace_back(r, static_cast<Index>(c), -1.0);
  }
  SparseMatrix out(static_cast<Index>(nodes.size()), static_cast<Index>(edges.size()));
  out.setFromTriplets(entries.begin(), entries.end());
  out.makeCompressed();
  return out;
}

ProblemInstance::ProblemInstance(Matrix data, std::vector<Edge> edges, double norm_exponent)
    : data_(std::move(data)), edges_(std::move(edges)), norm_exponent_(norm_exponent) {
  if (!(norm_exponent_ >= 1.0)) throw ContractViolation("norm exponent must be >= 1");
  if (!data_.allFinite()) throw ContractViolation("data matrix has non-finite entries");
  const Index n = data_.cols();
  for (const Edge& e : edges_) {
    if (e.i < 0 || e.j >= n || e.i >= e.j) {
      throw ContractViolation("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                              ") must satisfy 0 <= i < j < N");
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw ContractViolation("edge weights must be positive and finite");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (std::size_t l = 1; l < edges_.size(); ++l) {
    if (edges_[l].i == edges_[l - 1].i && edges_[l].j == edges_[l - 1].j) {
      throw ContractViolation("duplicate edge (" + std::to_string(edges_[l].i) + ", " +
                              std::to_string(edges_[l].j) + ")");
    }
  }
  std::vector<std::pair<Index, Index>> arcs;
  arcs.reserve(edges_.size());
  for (const Edge& e : edges_) arcs.emplace_back(e.i, e.j);
  incidence_ = IncidenceMap(n, std::move(arcs));
}

Vector ProblemInstance::weights() const {
  Vector w(num_blocks());
  for (Index l = 0; l < num_blocks(); ++l) w(l) = edges_[static_cast<std::size_t>(l)].w;
  return w;
}

BlockRegularizer::BlockRegularizer(Vector weights, Index block_dim, double norm_exponent)
    : weights_(std::move(weights)), block_dim_(block_dim), norm_exponent_(norm_exponent) {
  if (norm_exponent_ != 2.0) {
    throw ContractViolation("only the Euclidean block norm (p = 2) is implemented");
  }
  if ((weights_.array() <= 0.0).any()) throw ContractViolation("block weights must be positive");
}

BlockRegularizer::BlockRegularizer(const ProblemInstance& inst)
    : BlockRegularizer(inst.weights(), inst.block_dim(), inst.norm_exponent()) {}

void BlockRegularizer::check_shape(const Matrix& y) const {
  if (y.rows() != block_dim_ || y.cols() != num_blocks()) {
    throw ContractViolation("regularizer: expected " + std::to_string(block_dim_) + " x " +
                            std::to_string(num_blocks()) + " blocks");
  }
}

double BlockRegularizer::value(const Matrix& y) const {
  check_shape(y);
  return weights_.dot(y.colwise().norm().transpose());
}

Matrix BlockRegularizer::prox(const Matrix& v, double lambda) const {
  check_shape(v);
  Matrix out(v.rows(), v.cols());
  for (Index l = 0; l < v.cols(); ++l) out.col(l) = prox_block(v.col(l), lambda * weights_(l));
  return out;
}

Matrix BlockRegularizer::project_dual(const Matrix& z, double lambda) const {
  check_shape(z);
  Matrix out(z.rows(), z.cols());
  for (Index l = 0; l < z.cols(); ++l) out.col(l) = project_ball(z.col(l), lambda * weights_(l));
  return out;
}

double BlockRegularizer::dual_infeasibility(const Matrix& z, double lambda) const {
  check_shape(z);
  double worst = 0.0;
  for (Index l = 0; l < z.cols(); ++l) worst = std::max(worst, z.col(l).norm() / (lambda * weights_(l)));
  return worst;
}

}  // namespace asclust
