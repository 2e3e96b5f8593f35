#pragma once

#include "asclust/types.hpp"

namespace asclust {

// F_lambda(X) = 1/2 ||X - A||^2 + lambda p(B X).
double primal_objective(const ProblemInstance& inst, double lambda, const Matrix& x);

// D_lambda(Z) = -1/2 ||B^T Z||^2 + <B^T Z, A>. Throws InfeasibleDual when some
// block has ||z_l|| > lambda w_l (beyond a 1e-12 relative slack).
double dual_objective(const ProblemInstance& inst, double lambda, const Matrix& z);

// Relative duality gap (F - D) / (1 + |F| + |D|). Z is first projected onto
// the feasible product of balls so the gap is always finite.
double duality_gap(const ProblemInstance& inst, double lambda, const Matrix& x, const Matrix& z);

// Norm of the stacked KKT residual
//   ( X - A + B^T Z,  Y - Prox_{lambda p}(Y + Z),  B X - Y ).
double kkt_residual(const ProblemInstance& inst, double lambda, const Matrix& x, const Matrix& y,
                    const Matrix& z);

// Fills residual_norm and gap of the triple from its fields.
KktTriple make_triple(const ProblemInstance& inst, double lambda, Matrix x, Matrix y, Matrix z);

}  // namespace asclust
