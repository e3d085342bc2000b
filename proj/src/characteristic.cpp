#include "fredholm/characteristic.hpp"

#include <algorithm>
#include <cmath>

#include "fredholm/error.hpp"

namespace fredholm {

double default_rank_tolerance(Index rows, Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) * sigma_max * std::ldexp(1.0, -40);
}

CharacteristicMatrix characterize(CMatrix entries, std::optional<double> rank_tolerance) {
  if (rank_tolerance && !(*rank_tolerance > 0.0)) {
    fail(ErrorCode::InvalidConfig, "rank tolerance must be positive");
  }
  if (!entries.allFinite()) {
    fail(ErrorCode::NonFiniteValue, "characteristic matrix has non-finite entries");
  }
  CharacteristicMatrix M;
  const Index r = entries.rows();
  const Index m = entries.cols();
  M.entries = std::move(entries);
  if (r == 0 || m == 0) {
    M.singular_values.resize(0);
    M.left_singular_vectors = CMatrix::Identity(r, r);
    M.right_singular_vectors = CMatrix::Identity(m, m);
  } else {
    const Eigen::JacobiSVD<CMatrix> svd(M.entries, Eigen::ComputeFullU | Eigen::ComputeFullV);
    M.singular_values = svd.singularValues();
    M.left_singular_vectors = svd.matrixU();
    M.right_singular_vectors = svd.matrixV();
  }
  const double sigma_max = M.singular_values.size() > 0 ? M.singular_values(0) : 0.0;
  M.rank_tolerance = rank_tolerance ? *rank_tolerance : default_rank_tolerance(r, m, sigma_max);
  M.rank = 0;
  for (Index i = 0; i < M.singular_values.size(); ++i) {
    if (M.singular_values(i) > M.rank_tolerance) ++M.rank;
  }
  return M;
}

CharacteristicMatrix characteristic_matrix(const FundamentalMatrix& Y,
                                           const BoundaryOperator& boundary,
                                           const ProblemSpec& problem,
                                           std::optional<double> rank_tolerance) {
  if (Y.dimension() != problem.m || boundary.r != problem.r) {
    fail(ErrorCode::DimensionMismatch, "fundamental matrix or boundary operator does not match "
                                       "the problem dimensions");
  }
  CMatrix entries(problem.r, problem.m);
  for (Index j = 0; j < problem.m; ++j) {
    entries.col(j) = apply_boundary(boundary, fundamental_column(Y, problem, j), problem,
                                    Y.grid_size());
  }
  return characterize(std::move(entries), rank_tolerance);
}

FredholmReport fredholm_analysis(const CharacteristicMatrix& M) {
  FredholmReport report;
  report.r = M.entries.rows();
  report.m = M.entries.cols();
  report.rank = M.rank;
  report.dim_kernel = report.m - M.rank;
  report.dim_cokernel = report.r - M.rank;
  report.index = report.m - report.r;
  report.invertible = report.r == report.m && M.rank == report.m;
  report.rank_tolerance = M.rank_tolerance;
  report.singular_values.assign(M.singular_values.data(),
                                M.singular_values.data() + M.singular_values.size());
  if (M.rank_tolerance > 0.0) {
    report.rank_uncertain =
        std::any_of(report.singular_values.begin(), report.singular_values.end(), [&](double s) {
          return s >= M.rank_tolerance / 100.0 && s <= M.rank_tolerance * 100.0;
        });
  }
  return report;
}

std::vector<CVector> kernel_basis(const CharacteristicMatrix& M) {
  std::vector<CVector> basis;
  for (Index j = M.rank; j < M.entries.cols(); ++j) {
    basis.push_back(M.right_singular_vectors.col(j));
  }
  return basis;
}

}  // namespace fredholm
