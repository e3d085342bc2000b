#pragma once

#include <vector>

#include "fredholm/curve.hpp"
#include "fredholm/problem.hpp"
#include "fredholm/types.hpp"

namespace fredholm {

/// Matrix exponential by scaling and squaring with the degree-13 Pade
/// approximant.
CMatrix expm(const CMatrix& matrix);

/// Fundamental matrix Y of y' + A(t) y = 0 with Y(a) = I, sampled on a
/// uniform grid together with Y' = -A Y (for Hermite dense output) and the
/// per-node inverses.
class FundamentalMatrix {
 public:
  const Interval& interval() const { return interval_; }
  Index dimension() const { return values_.front().rows(); }
  int grid_size() const { return static_cast<int>(grid_.size()) - 1; }
  double step() const { return step_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<CMatrix>& values() const { return values_; }
  const std::vector<CMatrix>& inverses() const { return inverses_; }
  const std::vector<CMatrix>& node_derivatives() const { return derivatives_; }

  /// True when values came from the matrix exponential (constant A).
  bool closed_form() const { return closed_form_; }
  /// Max node difference against a run with twice the step; 0 for the
  /// closed form or an odd grid size.
  double self_check_error() const { return self_check_error_; }

  /// Cubic Hermite dense output; node values are returned exactly.
  CMatrix evaluate(double t) const;

 private:
  friend FundamentalMatrix fundamental_matrix(const ProblemSpec&, int);

  Interval interval_;
  double step_ = 0.0;
  std::vector<double> grid_;
  std::vector<CMatrix> values_;
  std::vector<CMatrix> derivatives_;
  std::vector<CMatrix> inverses_;
  bool closed_form_ = false;
  double self_check_error_ = 0.0;
};

inline constexpr int kDefaultGridSize = 1024;
inline constexpr int kMinGridSize = 16;

/// Constant A: exp(-A (t - a)) per node. Otherwise classical RK4 with step
/// (b - a) / grid_size.
FundamentalMatrix fundamental_matrix(const ProblemSpec& problem, int grid_size = kDefaultGridSize);

CMatrix evaluate_Y(const FundamentalMatrix& Y, double t);

/// y, y', ..., y^(k) at t for a solution of y' = f - A y (or y' = -A y when
/// `inhomogeneous` is false), obtained by differentiating the equation:
/// y^(j+1) = f^(j) - sum_i C(j, i) A^(i) y^(j-i).
std::vector<CVector> ode_derivatives(const ProblemSpec& problem, double t, const CVector& y,
                                     int k, bool inhomogeneous);

/// k-th derivative (k >= 1) of column j of Y at t.
CVector derivative_of_column(const FundamentalMatrix& Y, const ProblemSpec& problem, Index j,
                             int k, double t);

/// Particular solution y_p(t) = Y(t) int_a^t Y^-1 f, sampled on Y's grid.
class ParticularSolution {
 public:
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<CVector>& values() const { return values_; }
  const std::vector<CVector>& node_derivatives() const { return derivatives_; }
  /// max |y_p' + A y_p - f| over interior nodes with central differences.
  double residual() const { return residual_; }

  CVector evaluate(double t) const;

 private:
  friend ParticularSolution particular_solution(const FundamentalMatrix&, const ProblemSpec&);

  Interval interval_;
  double step_ = 0.0;
  std::vector<double> grid_;
  std::vector<CVector> values_;
  std::vector<CVector> derivatives_;
  double residual_ = 0.0;
};

ParticularSolution particular_solution(const FundamentalMatrix& Y, const ProblemSpec& problem);

/// y(t) = Y(t) q + y_p(t), with y_p omitted when `particular` is null.
/// Derivatives come from ode_derivatives. Holds references: Y, particular
/// and problem must outlive the curve.
class OdeSolutionCurve final : public VectorCurve {
 public:
  OdeSolutionCurve(const FundamentalMatrix& Y, const ParticularSolution* particular,
                   const ProblemSpec& problem, CVector q);

  Index size() const override { return q_.size(); }
  CVector value(double t) const override;
  CVector derivative(int k, double t) const override;

 private:
  const FundamentalMatrix& Y_;
  const ParticularSolution* particular_;
  const ProblemSpec& problem_;
  CVector q_;
};

/// Column j of Y as a curve.
OdeSolutionCurve fundamental_column(const FundamentalMatrix& Y, const ProblemSpec& problem,
                                    Index j);

}  // namespace fredholm
