#include "fredholm/bvp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fredholm/error.hpp"

namespace fredholm {

std::string_view to_string(SolutionStatus status) {
  switch (status) {
    case SolutionStatus::Unique: return "Unique";
    case SolutionStatus::Family: return "Family";
    case SolutionStatus::Inconsistent: return "Inconsistent";
  }
  return "Inconsistent";
}

double ode_residual(const ProblemSpec& problem, const std::vector<double>& grid,
                    const std::vector<CVector>& samples) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const CVector central = (samples[i + 1] - samples[i - 1]) / (grid[i + 1] - grid[i - 1]);
    const CVector defect = central + problem.coefficient.evaluate(grid[i]) * samples[i] -
                           CVector(problem.rhs.evaluate(grid[i]));
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

CVector minimum_norm_solution(const CharacteristicMatrix& M, const CVector& d) {
  CVector q = CVector::Zero(M.entries.cols());
  for (Index i = 0; i < M.rank; ++i) {
    const Complex coeff = M.left_singular_vectors.col(i).dot(d) / M.singular_values(i);
    q += coeff * M.right_singular_vectors.col(i);
  }
  return q;
}

}  // namespace

BvpSolution solve(const ProblemSpec& problem, const SolveOptions& options) {
  validate(problem);
  if (options.grid_size < kMinGridSize) {
    fail(ErrorCode::InvalidConfig, "grid size must be at least " + std::to_string(kMinGridSize));
  }
  if (!(options.consistency_tolerance > 0.0)) {
    fail(ErrorCode::InvalidConfig, "consistency tolerance must be positive");
  }

  BvpSolution sol;
  sol.fundamental = fundamental_matrix(problem, options.grid_size);
  sol.particular = particular_solution(sol.fundamental, problem);
  sol.characteristic =
      characteristic_matrix(sol.fundamental, problem.boundary, problem, options.rank_tolerance);
  sol.report = fredholm_analysis(sol.characteristic);
  const auto& M = sol.characteristic;

  // The consistency test cannot be finer than the relative resolution of
  // the rank decision.
  const double sigma_max = M.singular_values.size() > 0 ? M.singular_values(0) : 0.0;
  const double rank_floor = sigma_max > 0.0
                                ? M.rank_tolerance / sigma_max
                                : default_rank_tolerance(problem.r, problem.m, 1.0);
  if (options.consistency_tolerance <= rank_floor) {
    std::ostringstream msg;
    msg << "consistency tolerance " << options.consistency_tolerance
        << " does not exceed the relative rank tolerance " << rank_floor;
    fail(ErrorCode::ToleranceConflict, msg.str());
  }

  const int grid = options.grid_size;
  const OdeSolutionCurve particular_curve(sol.fundamental, &sol.particular, problem,
                                          CVector::Zero(problem.m));
  const CVector b_particular = apply_boundary(problem.boundary, particular_curve, problem, grid);
  const CVector d = problem.boundary_rhs - b_particular;

  const CVector q = minimum_norm_solution(M, d);
  sol.reduced_residual = (M.entries * q - d).norm();
  sol.consistency_threshold = options.consistency_tolerance *
                              (1.0 + problem.boundary_rhs.norm() + b_particular.norm());

  if (sol.report.invertible) {
    sol.status = SolutionStatus::Unique;
  } else if (sol.reduced_residual > sol.consistency_threshold) {
    sol.status = SolutionStatus::Inconsistent;
  } else if (sol.report.dim_kernel > 0) {
    sol.status = SolutionStatus::Family;
  } else {
    // Overdetermined but consistent: full column rank, exactly one solution.
    sol.status = SolutionStatus::Unique;
  }
  if (sol.status == SolutionStatus::Inconsistent) return sol;

  sol.q_particular = q;
  if (sol.status == SolutionStatus::Family) sol.kernel_basis = kernel_basis(M);

  const auto& nodes = sol.fundamental.grid();
  sol.samples.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sol.samples.push_back(sol.fundamental.values()[i] * q + sol.particular.values()[i]);
  }
  sol.ode_residual = ode_residual(problem, nodes, sol.samples);
  const OdeSolutionCurve solution_curve(sol.fundamental, &sol.particular, problem, q);
  sol.boundary_residual =
      (apply_boundary(problem.boundary, solution_curve, problem, grid) - problem.boundary_rhs)
          .norm();
  return sol;
}

CVector evaluate_solution(const BvpSolution& solution, double t) {
  if (solution.status == SolutionStatus::Inconsistent || !solution.q_particular) {
    fail(ErrorCode::NoSolution, "the boundary-value problem has no solution");
  }
  return solution.fundamental.evaluate(t) * *solution.q_particular +
         solution.particular.evaluate(t);
}

}  // namespace fredholm
