#include <doctest.h>

#include <random>

#include "asclust/errors.hpp"
#include "asclust/model.hpp"
#include "asclust/regularizer.hpp"
#include "oracle.hpp"

using namespace asclust;

namespace {

ProblemInstance t1() {
  Matrix a(1, 3);
  a << 0, 1, 5;
  return ProblemInstance(a, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("prox_block closed forms") {
  CHECK(prox_block(vec2(3, 4), 5.0).norm() == 0.0);
  const Vector half = prox_block(vec2(3, 4), 2.5);
  CHECK(half(0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(half(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(prox_block(Vector::Zero(2), 1.0).norm() == 0.0);
}

TEST_CASE("project_subdiff_block cases") {
  CHECK((project_subdiff_block(vec2(0.6, 0.8), Vector::Zero(2), 2.0) - vec2(0.6, 0.8)).norm() == 0.0);
  CHECK((project_subdiff_block(vec2(6, 8), Vector::Zero(2), 5.0) - vec2(3, 4)).norm() < 1e-15);
  CHECK((project_subdiff_block(vec2(9, 9), vec2(0, 1), 3.0) - vec2(0, 3)).norm() == 0.0);
}

TEST_CASE("Moreau identity and nonexpansiveness on random draws") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 2.0);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int t = 0; t < 1000; ++t) {
    const Index d = 1 + t % 4;
    Vector v1(d), v2(d);
    for (Index k = 0; k < d; ++k) {
      v1(k) = g(rng);
      v2(k) = g(rng);
    }
    const double tau = u(rng);
    CHECK((prox_block(v1, tau) + project_ball(v1, tau) - v1).norm() <= 1e-12);
    CHECK((prox_block(v1, tau) - prox_block(v2, tau)).norm() <= (v1 - v2).norm() + 1e-12);
  }
}

TEST_CASE("instance validation") {
  Matrix a = Matrix::Zero(1, 3);
  CHECK_THROWS_AS(ProblemInstance(a, {{1, 0, 1.0}}), ContractViolation);
  CHECK_THROWS_AS(ProblemInstance(a, {{0, 1, 0.0}}), ContractViolation);
  CHECK_THROWS_AS(ProblemInstance(a, {{0, 1, 1.0}, {0, 1, 2.0}}), ContractViolation);
  CHECK_THROWS_AS(ProblemInstance(a, {{0, 3, 1.0}}), ContractViolation);
  CHECK_THROWS_AS(ProblemInstance(a, {{0, 1, 1.0}}, 0.5), ContractViolation);
  ProblemInstance inst(a, {{1, 2, 1.0}, {0, 2, 2.0}, {0, 1, 3.0}});
  CHECK(inst.edges()[0] == Edge{0, 1, 3.0});
  CHECK(inst.edges()[2] == Edge{1, 2, 1.0});
  CHECK_THROWS_AS(BlockRegularizer(Vector::Ones(2), 1, 1.0), ContractViolation);
}

TEST_CASE("incidence adjoint consistency") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const Index n = 9;
  std::vector<std::pair<Index, Index>> arcs;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if ((i * 7 + j) % 3 == 0) arcs.emplace_back(i, j);
  IncidenceMap inc(n, arcs);
  for (int t = 0; t < 20; ++t) {
    Matrix x(3, n), z(3, inc.num_edges());
    for (Index k = 0; k < x.size(); ++k) x.data()[k] = g(rng);
    for (Index k = 0; k < z.size(); ++k) z.data()[k] = g(rng);
    const double lhs = (inc.apply(x).array() * z.array()).sum();
    const double rhs = (x.array() * inc.adjoint(z).array()).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
  const Matrix x = Matrix::Random(2, n);
  const Matrix bx = inc.apply(x);
  for (Index l = 0; l < inc.num_edges(); ++l) {
    CHECK((bx.col(l) - (x.col(arcs[l].first) - x.col(arcs[l].second))).norm() == 0.0);
    CHECK(inc.matrix().col(l).sum() == 0.0);
  }
}

TEST_CASE("objectives at definitional points") {
  const ProblemInstance inst = t1();
  const Matrix a = inst.data();
  const Matrix z0 = Matrix::Zero(1, 3);
  CHECK(dual_objective(inst, 1.0, z0) == 0.0);
  // p(BA) = 1 + 5 + 4
  CHECK(primal_objective(inst, 2.0, a) == doctest::Approx(20.0));
  CHECK(primal_objective(inst, 0.0, a) == 0.0);
  Matrix bad(1, 3);
  bad << 2.0, 0.0, 0.0;
  CHECK_THROWS_AS(dual_objective(inst, 1.0, bad), InfeasibleDual);
  CHECK(duality_gap(inst, 1.0, a, z0) > 0.0);
}

TEST_CASE("kkt residual basics") {
  Matrix a(2, 1);
  a << 1.0, -2.0;
  ProblemInstance single(a, {});
  CHECK(kkt_residual(single, 1.0, a, Matrix(2, 0), Matrix(2, 0)) == 0.0);

  const ProblemInstance inst = t1();
  Matrix x(1, 3), y(1, 3), z(1, 3);
  x << 0.3, 1.2, 4.0;
  y << 7.0, -1.0, 0.5;
  z << 0.1, 0.2, 0.3;
  const double bound = (inst.incidence().apply(x) - y).norm();
  CHECK(kkt_residual(inst, 0.7, x, y, z) >= bound);
  CHECK_THROWS_AS(kkt_residual(inst, 1.0, x, Matrix(1, 2), z), ContractViolation);
}

TEST_CASE("two-point analytic optimum has zero residual") {
  for (const double lambda : {0.5, 1.0, 2.0, 3.0}) {
    Matrix a(2, 2);
    a << 0.0, 3.0, 0.0, 4.0;  // distance 5
    const double w = 0.8;
    ProblemInstance inst(a, {{0, 1, w}});
    const auto [x1, x2] = oracle::two_point(a.col(0), a.col(1), lambda, w);
    Matrix x(2, 2);
    x.col(0) = x1;
    x.col(1) = x2;
    const Matrix y = inst.incidence().apply(x);
    // stationarity at node 0: x1 - a1 + z = 0
    const Matrix z = a.col(0) - x1;
    const KktTriple t = make_triple(inst, lambda, x, y, z);
    CHECK(t.residual_norm <= 1e-14);
    CHECK(std::abs(t.gap) <= 1e-14);
    const bool fused = lambda * w >= 2.5;
    CHECK(fused == (y.norm() <= 1e-15));
  }
}

TEST_CASE("T1 oracle pairs: gap, weak duality and residual") {
  const ProblemInstance inst = t1();
  std::vector<oracle::Arc> arcs;
  for (const auto& e : inst.edges()) arcs.push_back({e.i, e.j, e.w});
  for (const double lambda : {0.1, 1.0, 10.0}) {
    const auto sol = oracle::solve(inst.data(), arcs, lambda);
    const Matrix y = inst.incidence().apply(sol.x);
    const double f = primal_objective(inst, lambda, sol.x);
    const double d = dual_objective(inst, lambda, sol.z);
    CHECK(f - d <= 1e-6 * (1 + std::abs(f) + std::abs(d)));
    CHECK(duality_gap(inst, lambda, sol.x, sol.z) <= 1e-6);
    CHECK(kkt_residual(inst, lambda, sol.x, y, sol.z) <= 1e-6);
  }
  // fully fused at lambda = 10: x = (2, 2, 2)
  const auto fused = oracle::solve(inst.data(), arcs, 10.0);
  CHECK((fused.x.array() - 2.0).abs().maxCoeff() <= 1e-8);
}

TEST_CASE("weak duality on random instances") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const Index n = 4 + t % 5;
    const Index d = 1 + t % 3;
    Matrix a(d, n);
    for (Index k = 0; k < a.size(); ++k) a.data()[k] = g(rng);
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (u(rng) < 0.5) edges.push_back({i, j, 0.1 + u(rng)});
    ProblemInstance inst(a, edges);
    const BlockRegularizer reg(inst);
    const double lambda = 0.1 + u(rng);
    Matrix x(d, n), z(d, inst.num_blocks());
    for (Index k = 0; k < x.size(); ++k) x.data()[k] = g(rng);
    for (Index k = 0; k < z.size(); ++k) z.data()[k] = g(rng);
    z = reg.project_dual(z, lambda);
    CHECK(reg.dual_infeasibility(z, lambda) <= 1.0 + 1e-12);
    CHECK(primal_objective(inst, lambda, x) >= dual_objective(inst, lambda, z) - 1e-12);
    CHECK(duality_gap(inst, lambda, x, z) >= -1e-12);
  }
}

TEST_CASE("regularizer value, prox and homogeneity") {
  Vector w(2);
  w << 1.0, 2.0;
  BlockRegularizer reg(w, 2);
  Matrix y(2, 2);
  y << 3, 0, 4, 1;
  CHECK(reg.value(y) == doctest::Approx(5.0 + 2.0));
  CHECK(reg.value(Matrix::Zero(2, 2)) == 0.0);
  CHECK(reg.value(2.5 * y) == doctest::Approx(2.5 * reg.value(y)));
  const Matrix p = reg.prox(y, 1.0);
  CHECK((p.col(0) - prox_block(y.col(0), 1.0)).norm() == 0.0);
  CHECK((p.col(1) - prox_block(y.col(1), 2.0)).norm() == 0.0);
}
