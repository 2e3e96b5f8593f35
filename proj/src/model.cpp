#include <cmath>

#include "asclust/errors.hpp"
#include "asclust/model.hpp"
#include "asclust/regularizer.hpp"

namespace asclust {
namespace {

void check_x(const ProblemInstance& inst, const Matrix& x) {
  if (x.rows() != inst.block_dim() || x.cols() != inst.num_points()) {
    throw ContractViolation("x must be d x N");
  }
}

void check_blocks(const ProblemInstance& inst, const Matrix& y, const char* name) {
  if (y.rows() != inst.block_dim() || y.cols() != inst.num_blocks()) {
    throw ContractViolation(std::string(name) + " must be d x m");
  }
}

double dual_value_unchecked(const ProblemInstance& inst, const Matrix& z) {
  const Matrix bt_z = inst.incidence().adjoint(z);
  return -0.5 * bt_z.squaredNorm() + (bt_z.array() * inst.data().array()).sum();
}

}  // namespace

double primal_objective(const ProblemInstance& inst, double lambda, const Matrix& x) {
  check_x(inst, x);
  const BlockRegularizer reg(inst);
  return 0.5 * (x - inst.data()).squaredNorm() + lambda * reg.value(inst.incidence().apply(x));
}

double dual_objective(const ProblemInstance& inst, double lambda, const Matrix& z) {
  check_blocks(inst, z, "z");
  const Vector w = inst.weights();
  for (Index l = 0; l < z.cols(); ++l) {
    const double radius = lambda * w(l);
    if (z.col(l).norm() > radius * (1.0 + 1e-12) + 1e-300) {
      throw InfeasibleDual("dual block " + std::to_string(l) + " lies outside its ball");
    }
  }
  return dual_value_unchecked(inst, z);
}

double duality_gap(const ProblemInstance& inst, double lambda, const Matrix& x, const Matrix& z) {
  check_blocks(inst, z, "z");
  const BlockRegularizer reg(inst);
  const double primal = primal_objective(inst, lambda, x);
  const double dual = dual_value_unchecked(inst, reg.project_dual(z, lambda));
  return (primal - dual) / (1.0 + std::abs(primal) + std::abs(dual));
}

double kkt_residual(const ProblemInstance& inst, double lambda, const Matrix& x, const Matrix& y,
                    const Matrix& z) {
  check_x(inst, x);
  check_blocks(inst, y, "y");
  check_blocks(inst, z, "z");
  const IncidenceMap& inc = inst.incidence();
  const BlockRegularizer reg(inst);
  const double stationarity = (x - inst.data() + inc.adjoint(z)).squaredNorm();
  const double prox_gap = (y - reg.prox(y + z, lambda)).squaredNorm();
  const double feasibility = (inc.apply(x) - y).squaredNorm();
  return std::sqrt(stationarity + prox_gap + feasibility);
}

KktTriple make_triple(const ProblemInstance& inst, double lambda, Matrix x, Matrix y, Matrix z) {
  KktTriple t{std::move(x), std::move(y), std::move(z), 0.0, 0.0};
  t.residual_norm = kkt_residual(inst, lambda, t.x, t.y, t.z);
  t.gap = duality_gap(inst, lambda, t.x, t.z);
  return t;
}

}  // namespace asclust
