#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace asclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

}  // namespace asclust
