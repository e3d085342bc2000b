#pragma once

#include <span>
#include <vector>

#include "fredholm/matrix_function.hpp"
#include "fredholm/types.hpp"

namespace fredholm {

struct NormBreakdown {
  double integer_part_norm = 0.0;  // sum of L^p norms of f, f', ..., f^([s])
  double seminorm = 0.0;           // Gagliardo seminorm of f^([s])
  double total = 0.0;
  int grid_size = 0;
};

/// Discrete Sobolev-Slobodetsky norm of a scalar function on a uniform grid.
/// derivative_samples[k] holds f^(k) at the grid_size + 1 nodes of the
/// interval, for k = 0..[s]. L^p norms use composite Simpson; the seminorm
/// is a trapezoidal double sum over off-diagonal node pairs.
NormBreakdown sobolev_slobodetsky_norm(std::span<const std::vector<Complex>> derivative_samples,
                                       const Interval& interval, const SpaceParams& space);

/// Norm of a vector-valued function as the sum of its component norms.
NormBreakdown sobolev_slobodetsky_norm(const MatrixFunction& f, const SpaceParams& space,
                                       int grid_size);

}  // namespace fredholm
