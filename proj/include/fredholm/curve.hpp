#pragma once

#include <functional>

#include "fredholm/matrix_function.hpp"
#include "fredholm/types.hpp"

namespace fredholm {

/// Vector-valued function on [a, b] with point evaluation and derivative
/// access; the argument the boundary operator acts on.
class VectorCurve {
 public:
  virtual ~VectorCurve() = default;

  virtual Index size() const = 0;
  virtual CVector value(double t) const = 0;
  /// k-th derivative for k >= 1. Throws UnsupportedOrder when the
  /// representation cannot supply it.
  virtual CVector derivative(int k, double t) const = 0;
};

/// Curve backed by an n x 1 MatrixFunction.
class MatrixFunctionCurve final : public VectorCurve {
 public:
  explicit MatrixFunctionCurve(MatrixFunction fn);

  Index size() const override { return fn_.rows(); }
  CVector value(double t) const override { return fn_.evaluate(t); }
  CVector derivative(int k, double t) const override { return fn_.derivative(k, t); }

 private:
  MatrixFunction fn_;
};

/// Curve given by closures; derivative(k, t) must handle every k it is asked for.
class LambdaCurve final : public VectorCurve {
 public:
  using ValueFn = std::function<CVector(double)>;
  using DerivativeFn = std::function<CVector(int, double)>;

  LambdaCurve(Index size, ValueFn value, DerivativeFn derivative)
      : size_(size), value_(std::move(value)), derivative_(std::move(derivative)) {}

  Index size() const override { return size_; }
  CVector value(double t) const override { return value_(t); }
  CVector derivative(int k, double t) const override { return derivative_(k, t); }

 private:
  Index size_;
  ValueFn value_;
  DerivativeFn derivative_;
};

}  // namespace fredholm
