#pragma once

#include <limits>
#include <vector>

#include "fredholm/types.hpp"

namespace fredholm {

enum class FunctionKind { Constant, Polynomial, Sampled };

/// Matrix-valued function on an interval, described by one of three finite
/// payloads: a constant matrix, matrix coefficients of powers of (t - a), or
/// samples on a strictly increasing grid with piecewise Lagrange
/// interpolation (linear or cubic). Vectors are n x 1 instances.
class MatrixFunction {
 public:
  static constexpr int kUnlimitedOrder = std::numeric_limits<int>::max();

  MatrixFunction() = default;

  static MatrixFunction constant(const Interval& domain, CMatrix value);
  static MatrixFunction zero(const Interval& domain, Index rows, Index cols);
  /// coefficients[k] multiplies (t - a)^k.
  static MatrixFunction polynomial(const Interval& domain,
                                   std::vector<CMatrix> coefficients);
  static MatrixFunction sampled(const Interval& domain,
                                std::vector<double> nodes,
                                std::vector<CMatrix> values,
                                int order = 3);

  FunctionKind kind() const { return kind_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const Interval& domain() const { return domain_; }

  /// Constant: one matrix. Polynomial: coefficients. Sampled: node values.
  const std::vector<CMatrix>& matrices() const { return matrices_; }
  const std::vector<double>& nodes() const { return nodes_; }
  int interpolation_order() const { return order_; }

  CMatrix operator()(double t) const { return evaluate(t); }
  CMatrix evaluate(double t) const;
  /// k-th derivative, k >= 1. Sampled functions provide k <= 1 only.
  CMatrix derivative(int k, double t) const;
  int max_derivative_order() const;

  bool is_identically_zero() const;

  /// Payload-wise sum; both operands must share kind, shape and nodes
  /// (polynomials of different degree are zero-padded).
  MatrixFunction plus(const MatrixFunction& other) const;
  MatrixFunction scaled(Complex factor) const;
  /// Adds a constant matrix to the function everywhere.
  MatrixFunction plus_constant(const CMatrix& shift) const;

  bool operator==(const MatrixFunction& other) const;

 private:
  void check_domain(double t) const;
  CMatrix interpolate(double t, int derivative_order) const;

  FunctionKind kind_ = FunctionKind::Constant;
  Index rows_ = 0;
  Index cols_ = 0;
  Interval domain_;
  std::vector<CMatrix> matrices_;
  std::vector<double> nodes_;
  int order_ = 3;
};

}  // namespace fredholm
