#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "asclust/errors.hpp"
#include "asclust/graph.hpp"
#include "asclust/regularizer.hpp"
#include "asclust/union_find.hpp"

namespace asclust {

ProblemInstance build_knn_graph(const Matrix& data, Index k) {
  const Index n = data.cols();
  if (n < 2) throw ContractViolation("k-NN graph needs at least two points");
  if (k < 1 || k >= n) throw ContractViolation("k must satisfy 1 <= k < N");

  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(n * k));
  std::vector<std::pair<double, Index>> cand(static_cast<std::size_t>(n - 1));
  for (Index q = 0; q < n; ++q) {
    std::size_t c = 0;
    for (Index p = 0; p < n; ++p) {
      if (p == q) continue;
      cand[c++] = {(data.col(p) - data.col(q)).squaredNorm(), p};
    }
    // pair ordering breaks distance ties by the smaller index
    std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
    for (Index r = 0; r < k; ++r) {
      const Index p = cand[static_cast<std::size_t>(r)].second;
      pairs.emplace_back(std::min(p, q), std::max(p, q));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const double dist2 = (data.col(i) - data.col(j)).squaredNorm();
    edges.push_back({i, j, std::exp(-0.5 * dist2)});
  }
  return ProblemInstance(data, std::move(edges));
}

IndexPartition build_partition(const IncidenceMap& inc, std::vector<Index> sieved) {
  const Index n = inc.num_nodes();
  const Index m = inc.num_edges();
  std::sort(sieved.begin(), sieved.end());
  if (std::adjacent_find(sieved.begin(), sieved.end()) != sieved.end()) {
    throw ContractViolation("sieved set contains duplicates");
  }
  if (!sieved.empty() && (sieved.front() < 0 || sieved.back() >= m)) {
    throw ContractViolation("sieved set has an out-of-range block index");
  }

  IndexPartition part;
  part.num_nodes = n;
  part.sieved = std::move(sieved);
  part.complement.reserve(static_cast<std::size_t>(m) - part.sieved.size());
  {
    auto it = part.sieved.begin();
    for (Index l = 0; l < m; ++l) {
      if (it != part.sieved.end() && *it == l) {
        ++it;
      } else {
        part.complement.push_back(l);
      }
    }
  }

  UnionFind uf(n);
  std::vector<char> touched(static_cast<std::size_t>(n), 0);
  for (const Index l : part.sieved) {
    const auto [i, j] = inc.arcs()[static_cast<std::size_t>(l)];
    uf.unite(i, j);
    touched[static_cast<std::size_t>(i)] = touched[static_cast<std::size_t>(j)] = 1;
  }

  // Nodes are visited in ascending order, so the first node met in a
  // component is its minimum.
  std::vector<Index> component_of_root(static_cast<std::size_t>(n), -1);
  part.representative.assign(static_cast<std::size_t>(n), -1);
  for (Index v = 0; v < n; ++v) {
    if (!touched[static_cast<std::size_t>(v)]) {
      part.beta.push_back(v);
      part.representative[static_cast<std::size_t>(v)] = v;
      continue;
    }
    const Index root = uf.find(v);
    Index& comp = component_of_root[static_cast<std::size_t>(root)];
    if (comp < 0) {
      comp = static_cast<Index>(part.components.size());
      part.components.push_back({v});
      part.alpha.push_back(v);
    } else {
      part.components[static_cast<std::size_t>(comp)].push_back(v);
      part.gamma.push_back(v);
    }
    part.representative[static_cast<std::size_t>(v)] = part.components[static_cast<std::size_t>(comp)].front();
  }

  std::vector<Index> alpha_pos(static_cast<std::size_t>(n), -1);
  for (std::size_t a = 0; a < part.alpha.size(); ++a) alpha_pos[static_cast<std::size_t>(part.alpha[a])] = static_cast<Index>(a);
  std::vector<Triplet> entries;
  entries.reserve(part.gamma.size());
  for (std::size_t g = 0; g < part.gamma.size(); ++g) {
    const Index rep = part.representative[static_cast<std::size_t>(part.gamma[g])];
    entries.emplace_back(alpha_pos[static_cast<std::size_t>(rep)], static_cast<Index>(g), 1.0);
  }
  part.m_gamma_alpha.resize(static_cast<Index>(part.alpha.size()), static_cast<Index>(part.gamma.size()));
  part.m_gamma_alpha.setFromTriplets(entries.begin(), entries.end());
  part.m_gamma_alpha.makeCompressed();

  part.reduced_column.assign(static_cast<std::size_t>(n), -1);
  const Index num_alpha = static_cast<Index>(part.alpha.size());
  for (Index v = 0; v < n; ++v) {
    const Index rep = part.representative[static_cast<std::size_t>(v)];
    part.reduced_column[static_cast<std::size_t>(v)] =
        touched[static_cast<std::size_t>(v)] ? alpha_pos[static_cast<std::size_t>(rep)] : -1;
  }
  for (std::size_t b = 0; b < part.beta.size(); ++b) {
    part.reduced_column[static_cast<std::size_t>(part.beta[b])] = num_alpha + static_cast<Index>(b);
  }
  return part;
}

ReducedProblem reduce_problem(const ProblemInstance& inst, const IndexPartition& partition,
                              double lambda) {
  if (partition.num_nodes != inst.num_points() ||
      static_cast<Index>(partition.sieved.size() + partition.complement.size()) != inst.num_blocks()) {
    throw ContractViolation("partition does not match the problem instance");
  }
  const Matrix& a = inst.data();
  ReducedProblem red;
  red.lambda = lambda;
  red.block_dim = inst.block_dim();
  red.num_alpha = static_cast<Index>(partition.alpha.size());
  const Index dim = partition.reduced_dim();
  red.hessian = Vector::Zero(dim);
  red.data_sum = Matrix::Zero(a.rows(), dim);
  red.constant = 0.5 * a.squaredNorm();
  for (Index v = 0; v < inst.num_points(); ++v) {
    const Index c = partition.reduced_column[static_cast<std::size_t>(v)];
    red.hessian(c) += 1.0;
    red.data_sum.col(c) += a.col(v);
  }
  red.column_nodes.reserve(static_cast<std::size_t>(dim));
  red.column_nodes.insert(red.column_nodes.end(), partition.alpha.begin(), partition.alpha.end());
  red.column_nodes.insert(red.column_nodes.end(), partition.beta.begin(), partition.beta.end());

  const auto& arcs = inst.incidence().arcs();
  const auto num_free = static_cast<Index>(partition.complement.size());
  red.edges = partition.complement;
  red.weights.resize(num_free);
  std::vector<Triplet> entries;
  entries.reserve(2 * partition.complement.size());
  for (Index c = 0; c < num_free; ++c) {
    const Index l = partition.complement[static_cast<std::size_t>(c)];
    red.weights(c) = inst.edges()[static_cast<std::size_t>(l)].w;
    const auto [i, j] = arcs[static_cast<std::size_t>(l)];
    const Index ri = partition.reduced_column[static_cast<std::size_t>(i)];
    const Index rj = partition.reduced_column[static_cast<std::size_t>(j)];
    if (ri == rj) continue;
    entries.emplace_back(ri, c, 1.0);
    entries.emplace_back(rj, c, -1.0);
  }
  red.constraint.resize(dim, num_free);
  red.constraint.setFromTriplets(entries.begin(), entries.end());
  red.constraint.makeCompressed();
  return red;
}

namespace {

Matrix blockwise_prox(const Matrix& v, const Vector& radii) {
  Matrix out(v.rows(), v.cols());
  for (Index l = 0; l < v.cols(); ++l) out.col(l) = prox_block(v.col(l), radii(l));
  return out;
}

}  // namespace

double ReducedProblem::primal_value(const Matrix& x) const {
  const Matrix xh = x * constraint;
  double quad = 0.0;
  for (Index r = 0; r < dim(); ++r) quad += 0.5 * hessian(r) * x.col(r).squaredNorm();
  quad -= (x.array() * data_sum.array()).sum();
  return quad + constant + lambda * weights.dot(xh.colwise().norm().transpose());
}

double ReducedProblem::dual_value(const Matrix& xi) const {
  Matrix projected(xi.rows(), xi.cols());
  for (Index l = 0; l < xi.cols(); ++l) projected.col(l) = project_ball(xi.col(l), lambda * weights(l));
  const Matrix t = data_sum - projected * constraint.transpose();
  double value = constant;
  for (Index r = 0; r < dim(); ++r) value -= 0.5 * t.col(r).squaredNorm() / hessian(r);
  return value;
}

double ReducedProblem::kkt_residual(const Matrix& x, const Matrix& y, const Matrix& xi) const {
  const Matrix stationarity = x * hessian.asDiagonal() - data_sum + xi * constraint.transpose();
  const Matrix prox_gap = y - blockwise_prox(y + xi, lambda * weights);
  const Matrix feasibility = x * constraint - y;
  return std::sqrt(stationarity.squaredNorm() + prox_gap.squaredNorm() + feasibility.squaredNorm());
}

double ReducedProblem::relative_gap(const Matrix& x, const Matrix& xi) const {
  const double p = primal_value(x);
  const double d = dual_value(xi);
  return (p - d) / (1.0 + std::abs(p) + std::abs(d));
}

FullPrimal recover_primal(const IndexPartition& partition, const Matrix& x_reduced, const Matrix& y_reduced) {
  if (x_reduced.cols() != partition.reduced_dim() ||
      y_reduced.cols() != static_cast<Index>(partition.complement.size())) {
    throw ContractViolation("reduced solution does not match the partition");
  }
  const Index d = x_reduced.rows();
  const Index m = static_cast<Index>(partition.sieved.size() + partition.complement.size());
  FullPrimal out{Matrix(d, partition.num_nodes), Matrix::Zero(d, m)};
  for (Index v = 0; v < partition.num_nodes; ++v) {
    out.x.col(v) = x_reduced.col(partition.reduced_column[static_cast<std::size_t>(v)]);
  }
  for (std::size_t c = 0; c < partition.complement.size(); ++c) {
    out.y.col(partition.complement[c]) = y_reduced.col(static_cast<Index>(c));
  }
  return out;
}

}  // namespace asclust
