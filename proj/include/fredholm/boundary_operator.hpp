#pragma once

#include <vector>

#include "fredholm/curve.hpp"
#include "fredholm/matrix_function.hpp"
#include "fredholm/types.hpp"

namespace fredholm {

struct ProblemSpec;

/// alpha * D^order y(t0); D^order is the Caputo derivative with lower
/// terminal a when order is fractional.
struct PointTerm {
  double t0 = 0.0;
  double order = 0.0;
  CMatrix alpha;  // r x m

  bool operator==(const PointTerm& other) const {
    return t0 == other.t0 && order == other.order && alpha == other.alpha;
  }
};

/// Integral over [a, b] of K(t) y(t); K is r x m.
struct IntegralTerm {
  MatrixFunction kernel;

  bool operator==(const IntegralTerm&) const = default;
};

struct BoundaryOperator {
  Index r = 0;
  std::vector<PointTerm> point_terms;
  std::vector<IntegralTerm> integral_terms;

  bool operator==(const BoundaryOperator&) const = default;
};

/// B y = sum alpha D^beta y(t0) + sum integral K y over [a, b].
/// Integral terms use composite Simpson on a uniform grid of `grid_size`
/// cells; fractional terms use caputo_derivative with the same grid size.
CVector apply_boundary(const BoundaryOperator& boundary, const VectorCurve& y,
                       const ProblemSpec& problem, int grid_size);

/// Caputo derivative of order beta (non-integer, > 0) at t with lower
/// terminal a: (1 / Gamma(n - beta)) int_a^t (t - tau)^(n - beta - 1) y^(n)(tau) dtau
/// with n = ceil(beta). The weakly singular kernel is integrated exactly
/// against the piecewise-linear interpolant of y^(n) on grid_size cells.
/// Returns zero at t == a.
CVector caputo_derivative(const VectorCurve& y, double beta, double t, double a,
                          int grid_size);

}  // namespace fredholm
