#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fredholm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Finite interval [a, b] with a < b.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  double length() const { return b - a; }
  bool contains(double t) const;

  bool operator==(const Interval&) const = default;
};

/// Smoothness order s and integrability exponent p of the solution space W_p^s.
struct SpaceParams {
  double s = 1.5;
  double p = 2.0;

  /// Upper bound (exclusive) on admissible boundary derivative orders.
  double max_boundary_order() const { return s - 1.0 / p; }
  int integer_part() const;
  double fractional_part() const;

  bool operator==(const SpaceParams&) const = default;
};

}  // namespace fredholm
