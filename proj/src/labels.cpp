#include <algorithm>
#include <numeric>

#include "asclust/errors.hpp"
#include "asclust/labels.hpp"
#include "asclust/union_find.hpp"

namespace asclust {

ClusterLabels extract_labels(const ProblemInstance& inst, const Matrix& y, double eps_hat, double lambda) {
  if (y.rows() != inst.block_dim() || y.cols() != inst.num_blocks()) {
    throw ContractViolation("labels: y must be d x m");
  }
  const Index n = inst.num_points();
  UnionFind uf(n);
  for (Index l = 0; l < y.cols(); ++l) {
    if (y.col(l).norm() <= eps_hat) {
      const Edge& e = inst.edges()[static_cast<std::size_t>(l)];
      uf.unite(e.i, e.j);
    }
  }
  ClusterLabels out;
  out.lambda = lambda;
  out.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<Index> id_of_root(static_cast<std::size_t>(n), -1);
  for (Index v = 0; v < n; ++v) {
    Index& id = id_of_root[static_cast<std::size_t>(uf.find(v))];
    if (id < 0) id = out.num_clusters++;
    out.labels[static_cast<std::size_t>(v)] = id;
  }
  return out;
}

double label_agreement(const std::vector<Index>& a, const std::vector<Index>& b) {
  if (a.size() != b.size()) throw ContractViolation("labelings differ in length");
  if (a.empty()) return 1.0;
  const Index ka = *std::max_element(a.begin(), a.end()) + 1;
  const Index kb = *std::max_element(b.begin(), b.end()) + 1;
  Matrix table = Matrix::Zero(ka, kb);
  for (std::size_t i = 0; i < a.size(); ++i) table(a[i], b[i]) += 1.0;

  double best = 0.0;
  if (std::min(ka, kb) <= 8 && std::max(ka, kb) <= 8) {
    // every injection from the smaller label set into the larger one
    const bool rows_small = ka <= kb;
    const Index small = rows_small ? ka : kb;
    std::vector<Index> perm(static_cast<std::size_t>(rows_small ? kb : ka));
    std::iota(perm.begin(), perm.end(), Index{0});
    do {
      double matched = 0.0;
      for (Index s = 0; s < small; ++s) {
        matched += rows_small ? table(s, perm[static_cast<std::size_t>(s)]) : table(perm[static_cast<std::size_t>(s)], s);
      }
      best = std::max(best, matched);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    Matrix t = table;
    for (Index step = 0; step < std::min(ka, kb); ++step) {
      Index r = 0, c = 0;
      const double v = t.maxCoeff(&r, &c);
      if (v <= 0.0) break;
      best += v;
      t.row(r).setConstant(-1.0);
      t.col(c).setConstant(-1.0);
    }
  }
  return best / static_cast<double>(a.size());
}

}  // namespace asclust
