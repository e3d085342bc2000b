#pragma once

#include <optional>
#include <vector>

#include "fredholm/fundamental_matrix.hpp"
#include "fredholm/problem.hpp"

namespace fredholm {

/// r x m matrix whose j-th column is B applied to the j-th column of Y,
/// with its full SVD and the numerical rank decision.
struct CharacteristicMatrix {
  CMatrix entries;
  Eigen::VectorXd singular_values;  // nonincreasing, min(r, m) entries
  CMatrix left_singular_vectors;    // r x r
  CMatrix right_singular_vectors;   // m x m
  Index rank = 0;
  double rank_tolerance = 0.0;
};

struct FredholmReport {
  Index m = 0;
  Index r = 0;
  Index rank = 0;
  Index dim_kernel = 0;
  Index dim_cokernel = 0;
  Index index = 0;
  bool invertible = false;
  bool rank_uncertain = false;
  double rank_tolerance = 0.0;
  std::vector<double> singular_values;
};

/// Default numerical rank tolerance max(r, m) * sigma_max * 2^-40.
double default_rank_tolerance(Index rows, Index cols, double sigma_max);

/// Decomposes `entries` and counts singular values above the tolerance
/// (the override when given, the default rule otherwise).
CharacteristicMatrix characterize(CMatrix entries,
                                  std::optional<double> rank_tolerance = std::nullopt);

CharacteristicMatrix characteristic_matrix(const FundamentalMatrix& Y,
                                           const BoundaryOperator& boundary,
                                           const ProblemSpec& problem,
                                           std::optional<double> rank_tolerance = std::nullopt);

/// rank, dim ker = m - rank, dim coker = r - rank, index = m - r. The rank is
/// flagged uncertain when a singular value lies within a factor 100 of the
/// tolerance.
FredholmReport fredholm_analysis(const CharacteristicMatrix& M);

/// Orthonormal basis of null(M) from the trailing right singular vectors.
std::vector<CVector> kernel_basis(const CharacteristicMatrix& M);

}  // namespace fredholm
