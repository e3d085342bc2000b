#include <cmath>

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "fredholm/fundamental_matrix.hpp"
#include "fredholm/oracles.hpp"
#include "test_helpers.hpp"

using namespace fredholm;
using fredholm::testing::error_of;
using fredholm::testing::scalar_problem;

namespace {

ProblemSpec with_coefficient(ProblemSpec problem, MatrixFunction coefficient) {
  problem.m = coefficient.rows();
  problem.coefficient = std::move(coefficient);
  problem.rhs = MatrixFunction::zero(problem.interval, problem.m, 1);
  problem.boundary.point_terms.front().alpha = CMatrix::Identity(1, problem.m);
  return problem;
}

ProblemSpec linear_coefficient_problem() {
  // A(t) = t on [0, 1]; Y(t) = exp(-t^2 / 2).
  const Interval iv{0.0, 1.0};
  return with_coefficient(scalar_problem(0, 0, 1, 0, iv),
                          MatrixFunction::polynomial(iv, {CMatrix::Zero(1, 1),
                                                          CMatrix::Ones(1, 1)}));
}

}  // namespace

TEST_CASE("expm agrees with an independent implementation") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.integer(1, 5);
    const double scale = trial < 20 ? 1.0 : 20.0;
    const CMatrix a = scale * rng.disk_matrix(n, n);
    const CMatrix reference = a.exp();
    CHECK((expm(a) - reference).norm() <= 1e-12 * (1.0 + reference.norm()));
  }
  CHECK(expm(CMatrix::Zero(3, 3)) == CMatrix::Identity(3, 3));
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = Complex(0.0, std::numbers::pi);
  diag(1, 1) = -2.0;
  const CMatrix e = expm(diag);
  CHECK(std::abs(e(0, 0) + 1.0) < 1e-14);
  CHECK(std::abs(e(1, 1) - std::exp(-2.0)) < 1e-15);
}

TEST_CASE("zero coefficient gives the identity everywhere") {
  for (Index m : {1, 2, 4}) {
    ProblemSpec p = scalar_problem(0, 0, 1, 0);
    p = with_coefficient(p, MatrixFunction::zero(p.interval, m, m));
    const FundamentalMatrix Y = fundamental_matrix(p, 64);
    for (const auto& value : Y.values()) CHECK(value == CMatrix::Identity(m, m));
    CHECK(evaluate_Y(Y, 0.37) == CMatrix::Identity(m, m));
    for (int k = 1; k <= 3; ++k) {
      CHECK(derivative_of_column(Y, p, m - 1, k, 0.5).isZero(0.0));
    }
  }
}

TEST_CASE("scalar constant coefficient matches the exponential") {
  const ProblemSpec p = scalar_problem(1, 0, 1, 1);
  const FundamentalMatrix Y = fundamental_matrix(p);
  CHECK(Y.closed_form());
  CHECK(std::abs(Y.values().back()(0, 0) - 0.36787944117144233) < 1e-8);
  CHECK(evaluate_Y(Y, 0.0) == CMatrix::Identity(1, 1));
  CHECK(evaluate_Y(Y, Y.grid()[517]) == Y.values()[517]);
  // Dense output between nodes.
  for (double t : {0.5 * (Y.grid()[10] + Y.grid()[11]), 0.3333, 0.9999}) {
    CHECK(std::abs(evaluate_Y(Y, t)(0, 0) - std::exp(-t)) < 1e-7);
  }
  CHECK(error_of([&] { evaluate_Y(Y, 1.01); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("matrix dense output matches exp(-A (t - a)) between nodes") {
  Rng rng(17);
  const Interval iv{-0.5, 1.0};
  ProblemSpec p = scalar_problem(0, 0, 1, 0, iv, -0.5);
  const CMatrix a = rng.disk_matrix(3, 3);
  p = with_coefficient(p, MatrixFunction::constant(iv, a));
  const FundamentalMatrix Y = fundamental_matrix(p, 256);
  for (int i = 0; i < 50; ++i) {
    const double t = rng.uniform(iv.a, iv.b);
    CHECK((evaluate_Y(Y, t) - (-a * (t - iv.a)).exp()).norm() < 1e-7);
  }
}

TEST_CASE("variable coefficient A(t) = t") {
  const ProblemSpec p = linear_coefficient_problem();
  const FundamentalMatrix Y = fundamental_matrix(p, 1024);
  CHECK_FALSE(Y.closed_form());
  CHECK(std::abs(Y.values().back()(0, 0) - 0.6065306597126334) < 1e-6);
  CHECK(Y.self_check_error() < 1e-10);
  for (double t : {0.123, 0.5001, 0.871}) {
    CHECK(std::abs(evaluate_Y(Y, t)(0, 0) - std::exp(-0.5 * t * t)) < 1e-9);
  }
}

TEST_CASE("RK4 error drops by at least 8 per step halving") {
  // Smooth non-normal 2x2 coefficient, self-convergence on shared nodes.
  const Interval iv{0.0, 2.0};
  CMatrix a0(2, 2), a1(2, 2);
  a0 << 0.5, -1.0, 1.0, 0.2;
  a1 << 0.0, Complex(0, 0.7), 0.3, -0.4;
  ProblemSpec p = with_coefficient(scalar_problem(0, 0, 1, 0, iv),
                                   MatrixFunction::polynomial(iv, {a0, a1}));
  auto max_error = [&](int n) {
    const FundamentalMatrix coarse = fundamental_matrix(p, n);
    const FundamentalMatrix fine = fundamental_matrix(p, 2 * n);
    double err = 0.0;
    for (std::size_t i = 0; i < coarse.values().size(); ++i) {
      err = std::max(err, (coarse.values()[i] - fine.values()[2 * i]).cwiseAbs().maxCoeff());
    }
    return err;
  };
  const double e16 = max_error(16);
  const double e32 = max_error(32);
  const double e64 = max_error(64);
  CHECK(e16 / e32 >= 8.0);
  CHECK(e32 / e64 >= 8.0);

  // Against the closed form for A(t) = t.
  const ProblemSpec q = linear_coefficient_problem();
  auto exact_error = [&](int n) {
    return std::abs(fundamental_matrix(q, n).values().back()(0, 0) - std::exp(-0.5));
  };
  CHECK(exact_error(16) / exact_error(32) >= 8.0);
  CHECK(exact_error(32) / exact_error(64) >= 8.0);
}

TEST_CASE("semigroup property") {
  Rng rng(23);
  const Interval iv{0.0, 1.0};
  const double t1 = 0.375;
  const CMatrix a = rng.disk_matrix(2, 2);
  const ProblemSpec full = with_coefficient(scalar_problem(0, 0, 1, 0, iv),
                                            MatrixFunction::constant(iv, a));
  const ProblemSpec tail = with_coefficient(scalar_problem(0, 0, 1, 0, {t1, 1.0}, t1),
                                            MatrixFunction::constant({t1, 1.0}, a));
  const FundamentalMatrix y_full = fundamental_matrix(full);
  const FundamentalMatrix y_tail = fundamental_matrix(tail);
  for (double t2 : {0.5, 0.77, 1.0}) {
    CHECK((evaluate_Y(y_full, t1) * evaluate_Y(y_tail, t2) - evaluate_Y(y_full, t2)).norm() < 1e-6);
  }

  // Time-dependent A: Y(t2) = Y_tail(t2) Y(t1).
  const CMatrix b = rng.disk_matrix(2, 2);
  const ProblemSpec vfull = with_coefficient(scalar_problem(0, 0, 1, 0, iv),
                                             MatrixFunction::polynomial(iv, {a, b}));
  // Re-expand a + b (t - 0) about t1: a + b t1 + b (t - t1).
  const ProblemSpec vtail = with_coefficient(
      scalar_problem(0, 0, 1, 0, {t1, 1.0}, t1),
      MatrixFunction::polynomial({t1, 1.0}, {CMatrix(a + b * t1), b}));
  const FundamentalMatrix z_full = fundamental_matrix(vfull);
  const FundamentalMatrix z_tail = fundamental_matrix(vtail);
  for (double t2 : {0.5, 0.77, 1.0}) {
    CHECK((evaluate_Y(z_tail, t2) * evaluate_Y(z_full, t1) - evaluate_Y(z_full, t2)).norm() < 1e-6);
  }
}

TEST_CASE("inverse cache and determinant bounds on the random corpus") {
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    const ProblemSpec p = random_general_problem(rng, false);
    const FundamentalMatrix Y = fundamental_matrix(p, 256);
    CHECK(Y.values().front() == CMatrix::Identity(p.m, p.m));
    for (std::size_t k = 0; k < Y.values().size(); k += 17) {
      const CMatrix& v = Y.values()[k];
      const double cond = v.norm() * Y.inverses()[k].norm();
      CHECK((v * Y.inverses()[k] - CMatrix::Identity(p.m, p.m)).norm() <= 1e-10 * cond);
      CHECK(std::abs(v.determinant()) > 1e-30);
    }
  }
}

TEST_CASE("derivatives of columns") {
  CMatrix a(2, 2);
  a << 1.0, 2.0, Complex(0, 1), -3.0;
  const Interval iv{0.0, 1.0};
  ProblemSpec p = with_coefficient(scalar_problem(0, 0, 1, 0, iv), MatrixFunction::constant(iv, a));
  const FundamentalMatrix Y = fundamental_matrix(p, 128);
  for (Index j = 0; j < 2; ++j) {
    CHECK((derivative_of_column(Y, p, j, 1, 0.0) - (-a).col(j)).norm() < 1e-15);
    CHECK((derivative_of_column(Y, p, j, 2, 0.0) - (a * a).col(j)).norm() < 1e-14);
    CHECK((derivative_of_column(Y, p, j, 3, 0.0) - (-a * a * a).col(j)).norm() < 1e-13);
  }
  // Y^(k)(t) = (-A)^k Y(t) away from a.
  const double t = 0.61;
  CHECK((derivative_of_column(Y, p, 1, 2, t) - (a * a * evaluate_Y(Y, t)).col(1)).norm() < 1e-9);

  // Polynomial A: y'' = (-A' + A^2) y.
  const CMatrix b = a.adjoint();
  ProblemSpec q = with_coefficient(scalar_problem(0, 0, 1, 0, iv),
                                   MatrixFunction::polynomial(iv, {a, b}));
  const FundamentalMatrix Z = fundamental_matrix(q, 512);
  const CMatrix at = a + t * b;
  const CVector y = evaluate_Y(Z, t).col(0);
  CHECK((derivative_of_column(Z, q, 0, 2, t) - (-b + at * at) * y).norm() < 1e-12);

  // Sampled A: orders beyond 2 are not representable.
  std::vector<double> nodes;
  std::vector<CMatrix> values;
  for (int i = 0; i <= 20; ++i) {
    nodes.push_back(i / 20.0);
    values.push_back(a + (i / 20.0) * b);
  }
  ProblemSpec s = with_coefficient(scalar_problem(0, 0, 1, 0, iv),
                                   MatrixFunction::sampled(iv, nodes, values));
  const FundamentalMatrix W = fundamental_matrix(s, 256);
  CHECK((derivative_of_column(W, s, 0, 2, t) - derivative_of_column(Z, q, 0, 2, t)).norm() < 1e-6);
  CHECK(error_of([&] { derivative_of_column(W, s, 0, 3, t); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("particular solution by variation of constants") {
  SUBCASE("zero right-hand side") {
    const ProblemSpec p = scalar_problem(2.0, 0.0, 1, 0);
    const ParticularSolution yp = particular_solution(fundamental_matrix(p), p);
    for (const auto& v : yp.values()) CHECK(v.isZero(0.0));
  }
  SUBCASE("A = 0, f = 1 gives y_p = t") {
    const ProblemSpec p = scalar_problem(0.0, 1.0, 1, 0);
    const FundamentalMatrix Y = fundamental_matrix(p);
    const ParticularSolution yp = particular_solution(Y, p);
    CHECK(yp.values().front()(0) == Complex(0.0));
    for (std::size_t i = 0; i < yp.grid().size(); i += 101) {
      CHECK(std::abs(yp.values()[i](0) - yp.grid()[i]) < 1e-14);
    }
    CHECK(std::abs(yp.evaluate(0.4321)(0) - 0.4321) < 1e-14);
  }
  SUBCASE("A = 1, f = 1 gives 1 - exp(-t)") {
    const ProblemSpec p = scalar_problem(1.0, 1.0, 1, 0);
    const ParticularSolution yp = particular_solution(fundamental_matrix(p), p);
    CHECK(std::abs(yp.values().back()(0) - 0.6321205588285577) < 1e-6);
    CHECK(yp.residual() <= 1e-4 * 2.0);
  }
}

TEST_CASE("particular solution residual on the smooth corpus") {
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const ProblemSpec p = random_general_problem(rng, false);
    const ParticularSolution yp = particular_solution(fundamental_matrix(p, 1024), p);
    double f_max = 0.0;
    for (double t : yp.grid()) f_max = std::max(f_max, p.rhs.evaluate(t).cwiseAbs().maxCoeff());
    CHECK(yp.residual() <= 1e-4 * (1.0 + f_max));
  }
}

TEST_CASE("integration failures") {
  const Interval iv{0.0, 1.0};
  // Explosive growth with a coarse grid overflows RK4.
  ProblemSpec blowup = with_coefficient(
      scalar_problem(0, 0, 1, 0, iv),
      MatrixFunction::polynomial(iv, {CMatrix::Constant(1, 1, -1e8), CMatrix::Zero(1, 1)}));
  CHECK(error_of([&] { fundamental_matrix(blowup, 16); }) == ErrorCode::NonFiniteValue);

  // Strong decay in one component leaves Y numerically singular.
  CMatrix a = CMatrix::Zero(2, 2);
  a(1, 1) = 40.0;
  ProblemSpec singular = with_coefficient(scalar_problem(0, 0, 1, 0, iv),
                                          MatrixFunction::constant(iv, a));
  CHECK(error_of([&] { fundamental_matrix(singular, 64); }) == ErrorCode::SingularFundamental);

  CHECK(error_of([&] { fundamental_matrix(scalar_problem(1, 0, 1, 0), 8); }) ==
        ErrorCode::InvalidConfig);
}
