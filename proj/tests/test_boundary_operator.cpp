#include <cmath>

#include <doctest.h>

#include "fredholm/boundary_operator.hpp"
#include "fredholm/oracles.hpp"
#include "fredholm/problem.hpp"
#include "test_helpers.hpp"

using namespace fredholm;
using fredholm::testing::error_of;
using fredholm::testing::scalar_problem;

namespace {

// t^p shifted to start at a, scalar.
LambdaCurve power_curve(int p, double a = 0.0) {
  return LambdaCurve(
      1, [=](double t) { return CVector::Constant(1, std::pow(t - a, p)); },
      [=](int k, double t) {
        if (k > p) return CVector::Zero(1).eval();
        double c = 1.0;
        for (int i = 0; i < k; ++i) c *= p - i;
        return CVector::Constant(1, c * std::pow(t - a, p - k)).eval();
      });
}

LambdaCurve exp_curve() {
  return LambdaCurve(
      1, [](double t) { return CVector::Constant(1, std::exp(t)); },
      [](int, double t) { return CVector::Constant(1, std::exp(t)); });
}

double caputo_scalar(const VectorCurve& y, double beta, double t, double a = 0.0,
                     int grid = 1024) {
  return caputo_derivative(y, beta, t, a, grid)(0).real();
}

MatrixFunctionCurve vector_polynomial(const Interval& iv, const std::vector<CVector>& coeffs) {
  std::vector<CMatrix> mats(coeffs.begin(), coeffs.end());
  return MatrixFunctionCurve(MatrixFunction::polynomial(iv, mats));
}

}  // namespace

TEST_CASE("Caputo derivative of monomials") {
  // Exact for linear y^(n): product integration reproduces the kernel integral.
  CHECK(std::abs(caputo_scalar(power_curve(1), 0.5, 1.0) - 1.1283791670955126) < 1e-13);
  CHECK(std::abs(caputo_scalar(power_curve(2), 0.5, 1.0, 0.0, 16) - 1.5045055561273501) < 5e-3);
  CHECK(std::abs(caputo_scalar(power_curve(3), 1.5, 1.0) - 4.5135166683820503) < 1e-12);
  CHECK(std::abs(caputo_scalar(power_curve(3), 0.5, 1.0) - 1.8054066673528201) < 1e-5);
  // Shifted lower terminal: D^0.5 (t + 1) at t = 0 with a = -1 is 2 / sqrt(pi).
  CHECK(std::abs(caputo_scalar(power_curve(1, -1.0), 0.5, 0.0, -1.0) - 1.1283791670955126) <
        1e-13);
  CHECK(caputo_scalar(power_curve(0), 0.3, 0.7) == 0.0);
}

TEST_CASE("Caputo derivative of the exponential") {
  CHECK(std::abs(caputo_scalar(exp_curve(), 0.7, 1.0) - 2.4890604195445772) < 1e-5);
}

TEST_CASE("Caputo discretisation converges at second order") {
  auto err = [](int grid) {
    return std::abs(caputo_scalar(power_curve(3), 0.5, 1.0, 0.0, grid) - 1.8054066673528201);
  };
  const double e64 = err(64), e128 = err(128), e256 = err(256);
  CHECK(e64 / e128 > 3.0);
  CHECK(e128 / e256 > 3.0);
  auto err_exp = [](int grid) {
    return std::abs(caputo_scalar(exp_curve(), 0.7, 1.0, 0.0, grid) - 2.4890604195445772);
  };
  CHECK(err_exp(64) / err_exp(128) > 3.0);
}

TEST_CASE("Caputo derivative approaches the classical one as beta -> 1") {
  // D^beta t^3 = 6 t^(3 - beta) / Gamma(4 - beta).
  double previous = 1.0;
  for (double beta : {0.9, 0.99, 0.999, 0.9999}) {
    const double value = caputo_scalar(power_curve(3), beta, 1.0);
    const double exact = 6.0 / std::tgamma(4.0 - beta);
    CHECK(std::abs(value - exact) < 1e-5);
    const double gap = std::abs(value - 3.0);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3);
  CHECK(std::abs(caputo_scalar(exp_curve(), 0.9999, 1.0) - std::exp(1.0)) < 1e-3);
}

TEST_CASE("Caputo special cases") {
  CHECK(caputo_derivative(exp_curve(), 0.5, 0.0, 0.0, 64).isZero(0.0));
  CHECK(error_of([] { caputo_derivative(exp_curve(), 1.0, 0.5, 0.0, 64); }) ==
        ErrorCode::IntegerOrder);
  CHECK(error_of([] { caputo_derivative(exp_curve(), 2.0, 0.5, 0.0, 64); }) ==
        ErrorCode::IntegerOrder);
}

TEST_CASE("point and integral terms") {
  const Interval iv{0.0, 1.0};
  ProblemSpec p = scalar_problem(0, 0, 1, 0, iv);
  const LambdaCurve cube = power_curve(3);

  BoundaryOperator b;
  b.r = 3;
  CMatrix e0 = CMatrix::Zero(3, 1), e1 = e0, e2 = e0;
  e0(0) = 1.0;
  e1(1) = 2.0;
  e2(2) = Complex(0, 1);
  b.point_terms.push_back({1.0, 0.0, e0});
  b.point_terms.push_back({0.5, 2.0, e1});
  b.point_terms.push_back({1.0, 1.5, e2});
  CVector expected(3);
  expected << 1.0, 2.0 * 3.0, Complex(0, 4.5135166683820503);
  CHECK((apply_boundary(b, cube, p, 1024) - expected).norm() < 1e-11);

  // Simpson is exact on cubics, including odd cell counts.
  BoundaryOperator integral;
  integral.r = 1;
  integral.integral_terms.push_back({MatrixFunction::constant(iv, CMatrix::Ones(1, 1))});
  for (int cells : {16, 17, 33}) {
    CHECK(std::abs(apply_boundary(integral, cube, p, cells)(0) - 0.25) < 1e-15);
  }
  // Kernel t against y = t^2: integral of t^3.
  BoundaryOperator weighted;
  weighted.r = 1;
  weighted.integral_terms.push_back(
      {MatrixFunction::polynomial(iv, {CMatrix::Zero(1, 1), CMatrix::Ones(1, 1)})});
  CHECK(std::abs(apply_boundary(weighted, power_curve(2), p, 17)(0) - 0.25) < 1e-15);
}

TEST_CASE("boundary operator is linear") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const ProblemSpec p = random_general_problem(rng, trial % 2 == 0);
    const Index m = p.m;
    std::vector<CVector> c1, c2;
    for (int k = 0; k < 4; ++k) {
      c1.push_back(rng.disk_matrix(m, 1));
      c2.push_back(rng.disk_matrix(m, 1));
    }
    const Complex lambda = rng.disk();
    std::vector<CVector> mix;
    for (int k = 0; k < 4; ++k) mix.push_back(c1[k] + lambda * c2[k]);
    const CVector lhs = apply_boundary(p.boundary, vector_polynomial(p.interval, mix), p, 256);
    const CVector rhs = apply_boundary(p.boundary, vector_polynomial(p.interval, c1), p, 256) +
                        lambda * apply_boundary(p.boundary, vector_polynomial(p.interval, c2), p, 256);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
  }
}
