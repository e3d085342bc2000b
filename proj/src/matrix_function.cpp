#include "fredholm/matrix_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fredholm/curve.hpp"
#include "fredholm/error.hpp"

namespace fredholm {

bool Interval::contains(double t) const {
  const double slack = 1e-12 * (b - a);
  return t >= a - slack && t <= b + slack;
}

int SpaceParams::integer_part() const { return static_cast<int>(std::floor(s)); }

double SpaceParams::fractional_part() const { return s - std::floor(s); }

namespace {

void check_shapes(const std::vector<CMatrix>& matrices) {
  if (matrices.empty()) fail(ErrorCode::SyntaxError, "function payload is empty");
  for (const auto& mat : matrices) {
    if (mat.rows() != matrices.front().rows() || mat.cols() != matrices.front().cols()) {
      fail(ErrorCode::DimensionMismatch, "payload matrices have inconsistent shapes");
    }
  }
}

double falling_factorial(int n, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= n - i;
  return result;
}

}  // namespace

MatrixFunction MatrixFunction::constant(const Interval& domain, CMatrix value) {
  MatrixFunction fn;
  fn.kind_ = FunctionKind::Constant;
  fn.domain_ = domain;
  fn.rows_ = value.rows();
  fn.cols_ = value.cols();
  fn.matrices_.push_back(std::move(value));
  return fn;
}

MatrixFunction MatrixFunction::zero(const Interval& domain, Index rows, Index cols) {
  return constant(domain, CMatrix::Zero(rows, cols));
}

MatrixFunction MatrixFunction::polynomial(const Interval& domain,
                                          std::vector<CMatrix> coefficients) {
  check_shapes(coefficients);
  MatrixFunction fn;
  fn.kind_ = FunctionKind::Polynomial;
  fn.domain_ = domain;
  fn.rows_ = coefficients.front().rows();
  fn.cols_ = coefficients.front().cols();
  fn.matrices_ = std::move(coefficients);
  return fn;
}

MatrixFunction MatrixFunction::sampled(const Interval& domain, std::vector<double> nodes,
                                       std::vector<CMatrix> values, int order) {
  check_shapes(values);
  if (order != 1 && order != 3) {
    fail(ErrorCode::SyntaxError, "interpolation order must be 1 or 3");
  }
  if (nodes.size() != values.size()) {
    fail(ErrorCode::DimensionMismatch, "sampled nodes and values differ in count");
  }
  if (nodes.size() < static_cast<std::size_t>(order) + 1) {
    fail(ErrorCode::SyntaxError, "too few samples for the interpolation order");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]) || (i > 0 && !(nodes[i] > nodes[i - 1]))) {
      fail(ErrorCode::SyntaxError, "sample nodes must be finite and strictly increasing");
    }
  }
  if (nodes.front() > domain.a || nodes.back() < domain.b) {
    std::ostringstream msg;
    msg << "sample grid [" << nodes.front() << ", " << nodes.back()
        << "] does not cover [" << domain.a << ", " << domain.b << "]";
    fail(ErrorCode::OutOfDomain, msg.str());
  }
  MatrixFunction fn;
  fn.kind_ = FunctionKind::Sampled;
  fn.domain_ = domain;
  fn.rows_ = values.front().rows();
  fn.cols_ = values.front().cols();
  fn.matrices_ = std::move(values);
  fn.nodes_ = std::move(nodes);
  fn.order_ = order;
  return fn;
}

void MatrixFunction::check_domain(double t) const {
  if (!domain_.contains(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside [" << domain_.a << ", " << domain_.b << "]";
    fail(ErrorCode::OutOfDomain, msg.str());
  }
}

CMatrix MatrixFunction::evaluate(double t) const {
  check_domain(t);
  switch (kind_) {
    case FunctionKind::Constant:
      return matrices_.front();
    case FunctionKind::Polynomial: {
      const double x = t - domain_.a;
      CMatrix acc = matrices_.back();
      for (auto it = matrices_.rbegin() + 1; it != matrices_.rend(); ++it) {
        acc = acc * x + *it;
      }
      return acc;
    }
    case FunctionKind::Sampled:
      return interpolate(t, 0);
  }
  return {};
}

CMatrix MatrixFunction::derivative(int k, double t) const {
  if (k == 0) return evaluate(t);
  if (k < 0 || k > max_derivative_order()) {
    fail(ErrorCode::UnsupportedOrder,
         "derivative of order " + std::to_string(k) + " unavailable for sampled data");
  }
  check_domain(t);
  switch (kind_) {
    case FunctionKind::Constant:
      return CMatrix::Zero(rows_, cols_);
    case FunctionKind::Polynomial: {
      CMatrix acc = CMatrix::Zero(rows_, cols_);
      const double x = t - domain_.a;
      const int degree = static_cast<int>(matrices_.size()) - 1;
      for (int i = degree; i >= k; --i) {
        acc = acc * x + falling_factorial(i, k) * matrices_[i];
      }
      return acc;
    }
    case FunctionKind::Sampled:
      return interpolate(t, k);
  }
  return {};
}

int MatrixFunction::max_derivative_order() const {
  return kind_ == FunctionKind::Sampled ? 1 : kUnlimitedOrder;
}

CMatrix MatrixFunction::interpolate(double t, int derivative_order) const {
  const auto n = static_cast<std::ptrdiff_t>(nodes_.size());
  // Segment i with nodes_[i] <= t <= nodes_[i+1].
  std::ptrdiff_t i = std::upper_bound(nodes_.begin(), nodes_.end(), t) - nodes_.begin() - 1;
  i = std::clamp<std::ptrdiff_t>(i, 0, n - 2);
  if (derivative_order == 0 && t == nodes_[i]) return matrices_[i];

  const std::ptrdiff_t width = order_ + 1;
  const std::ptrdiff_t first =
      order_ == 1 ? i : std::clamp<std::ptrdiff_t>(i - 1, 0, n - width);

  CMatrix acc = CMatrix::Zero(rows_, cols_);
  for (std::ptrdiff_t j = first; j < first + width; ++j) {
    double weight = 0.0;
    if (derivative_order == 0) {
      weight = 1.0;
      for (std::ptrdiff_t l = first; l < first + width; ++l) {
        if (l != j) weight *= (t - nodes_[l]) / (nodes_[j] - nodes_[l]);
      }
    } else {
      for (std::ptrdiff_t k = first; k < first + width; ++k) {
        if (k == j) continue;
        double term = 1.0 / (nodes_[j] - nodes_[k]);
        for (std::ptrdiff_t l = first; l < first + width; ++l) {
          if (l != j && l != k) term *= (t - nodes_[l]) / (nodes_[j] - nodes_[l]);
        }
        weight += term;
      }
    }
    acc += weight * matrices_[j];
  }
  return acc;
}

bool MatrixFunction::is_identically_zero() const {
  return std::all_of(matrices_.begin(), matrices_.end(),
                     [](const CMatrix& mat) { return mat.isZero(0.0); });
}

MatrixFunction MatrixFunction::plus(const MatrixFunction& other) const {
  if (kind_ != other.kind_ || rows_ != other.rows_ || cols_ != other.cols_ ||
      nodes_ != other.nodes_ || order_ != other.order_) {
    fail(ErrorCode::DimensionMismatch, "cannot add functions with different payload layouts");
  }
  MatrixFunction sum = *this;
  if (other.matrices_.size() > sum.matrices_.size()) {
    sum.matrices_.resize(other.matrices_.size(), CMatrix::Zero(rows_, cols_));
  }
  for (std::size_t i = 0; i < other.matrices_.size(); ++i) sum.matrices_[i] += other.matrices_[i];
  return sum;
}

MatrixFunction MatrixFunction::scaled(Complex factor) const {
  MatrixFunction out = *this;
  for (auto& mat : out.matrices_) mat *= factor;
  return out;
}

MatrixFunction MatrixFunction::plus_constant(const CMatrix& shift) const {
  if (shift.rows() != rows_ || shift.cols() != cols_) {
    fail(ErrorCode::DimensionMismatch, "constant shift has the wrong shape");
  }
  MatrixFunction out = *this;
  if (kind_ == FunctionKind::Sampled) {
    for (auto& mat : out.matrices_) mat += shift;
  } else {
    out.matrices_.front() += shift;
  }
  return out;
}

bool MatrixFunction::operator==(const MatrixFunction& other) const {
  if (kind_ != other.kind_ || rows_ != other.rows_ || cols_ != other.cols_ ||
      !(domain_ == other.domain_) || nodes_ != other.nodes_ || order_ != other.order_ ||
      matrices_.size() != other.matrices_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    if (matrices_[i] != other.matrices_[i]) return false;
  }
  return true;
}

MatrixFunctionCurve::MatrixFunctionCurve(MatrixFunction fn) : fn_(std::move(fn)) {
  if (fn_.cols() != 1) fail(ErrorCode::DimensionMismatch, "curve must be a column function");
}

}  // namespace fredholm
