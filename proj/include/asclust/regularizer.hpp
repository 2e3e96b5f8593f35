#pragma once

#include "asclust/types.hpp"

namespace asclust {

// argmin_u 1/2 ||u - v||^2 + tau ||u||_2, i.e. block soft-thresholding.
template <class Derived>
Vector prox_block(const Eigen::MatrixBase<Derived>& v, double tau) {
  const double nv = v.norm();
  if (nv <= tau) return Vector::Zero(v.size());
  return (1.0 - tau / nv) * v;
}

// Euclidean projection onto the closed ball of the given radius.
template <class Derived>
Vector project_ball(const Eigen::MatrixBase<Derived>& v, double radius) {
  const double nv = v.norm();
  if (nv <= radius) return v;
  return (radius / nv) * v;
}

// Projection of u onto the subdifferential of lam_w * ||.|| at y_block: the
// ball of radius lam_w when y_block = 0, otherwise the singleton
// lam_w * y_block / ||y_block||.
template <class DerivedU, class DerivedY>
Vector project_subdiff_block(const Eigen::MatrixBase<DerivedU>& u,
                             const Eigen::MatrixBase<DerivedY>& y_block, double lam_w) {
  const double ny = y_block.norm();
  if (ny == 0.0) return project_ball(u, lam_w);
  return (lam_w / ny) * y_block;
}

// p(Y) = sum_l w_l ||Y_:l||_2 over column blocks of a d x m matrix.
//
// Only the Euclidean block norm is implemented; the exponent is carried so the
// contract stays explicit, and constructing with anything other than 2 throws.
class BlockRegularizer {
 public:
  BlockRegularizer(Vector weights, Index block_dim, double norm_exponent = 2.0);
  explicit BlockRegularizer(const ProblemInstance& inst);

  const Vector& weights() const noexcept { return weights_; }
  Index block_dim() const noexcept { return block_dim_; }
  Index num_blocks() const noexcept { return weights_.size(); }
  double norm_exponent() const noexcept { return norm_exponent_; }

  double value(const Matrix& y) const;
  // Prox of lambda * p, blockwise.
  Matrix prox(const Matrix& v, double lambda) const;
  // Blockwise projection onto {z : ||z_l|| <= lambda w_l}, the domain of p*.
  Matrix project_dual(const Matrix& z, double lambda) const;
  // max_l ||z_l|| / (lambda w_l); <= 1 iff z is dual feasible.
  double dual_infeasibility(const Matrix& z, double lambda) const;

 private:
  void check_shape(const Matrix& y) const;

  Vector weights_;
  Index block_dim_;
  double norm_exponent_;
};

}  // namespace asclust
