#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fredholm/characteristic.hpp"
#include "fredholm/fundamental_matrix.hpp"
#include "fredholm/problem.hpp"

namespace fredholm {

enum class SolutionStatus { Unique, Family, Inconsistent };

std::string_view to_string(SolutionStatus status);

struct SolveOptions {
  int grid_size = kDefaultGridSize;
  std::optional<double> rank_tolerance;
  /// Relative; the absolute threshold is this times 1 + |c| + |B y_p|.
  double consistency_tolerance = 1e-8;
};

struct BvpSolution {
  SolutionStatus status = SolutionStatus::Inconsistent;
  /// Minimum-norm solution of M q = c - B y_p; absent when inconsistent.
  std::optional<CVector> q_particular;
  std::vector<CVector> kernel_basis;  // non-empty only for Family
  /// Least-squares residual |M q - (c - B y_p)| (reported in every case).
  double reduced_residual = 0.0;
  double consistency_threshold = 0.0;
  double ode_residual = 0.0;
  double boundary_residual = 0.0;
  FredholmReport report;
  CharacteristicMatrix characteristic;
  FundamentalMatrix fundamental;
  ParticularSolution particular;
  /// y(t_i) = Y(t_i) q + y_p(t_i) on fundamental.grid(); empty when inconsistent.
  std::vector<CVector> samples;
};

/// Reduces the problem to M q = c - B y_p and classifies it with the single
/// SVD rank decision of the characteristic matrix.
BvpSolution solve(const ProblemSpec& problem, const SolveOptions& options = {});

CVector evaluate_solution(const BvpSolution& solution, double t);

/// max |(y_{i+1} - y_{i-1}) / (2h) + A y_i - f_i| over interior nodes.
double ode_residual(const ProblemSpec& problem, const std::vector<double>& grid,
                    const std::vector<CVector>& samples);

}  // namespace fredholm
