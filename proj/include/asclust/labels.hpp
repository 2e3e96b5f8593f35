#pragma once

#include <vector>

#include "asclust/types.hpp"

namespace asclust {

struct ClusterLabels {
  std::vector<Index> labels;  // one id per point, contiguous from 0
  Index num_clusters = 0;
  double lambda = 0.0;
};

// Points joined by an edge whose y-block has norm <= eps_hat share a cluster.
// Ids are assigned in order of each cluster's smallest member.
ClusterLabels extract_labels(const ProblemInstance& inst, const Matrix& y, double eps_hat,
                             double lambda = 0.0);

// Fraction of points on which two labelings agree under the best matching of
// ids (greedy on the contingency table; exact for two clusters).
double label_agreement(const std::vector<Index>& a, const std::vector<Index>& b);

}  // namespace asclust
