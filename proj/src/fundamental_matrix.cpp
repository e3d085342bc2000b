#include "fredholm/fundamental_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "fredholm/error.hpp"
#include "fredholm/quadrature.hpp"

namespace fredholm {

namespace {

bool all_finite(const CMatrix& mat) { return mat.allFinite(); }

// Segment index and local coordinate on a uniform grid; snapped to a node
// when t is within rounding of one.
struct Locator {
  std::size_t cell;
  double s;
  bool at_node;
  std::size_t node;
};

Locator locate(const Interval& interval, double step, std::size_t cells, double t) {
  if (!interval.contains(t)) {
    fail(ErrorCode::OutOfDomain, "t = " + std::to_string(t) + " outside [" +
                                     std::to_string(interval.a) + ", " +
                                     std::to_string(interval.b) + "]");
  }
  const double x = std::clamp((t - interval.a) / step, 0.0, static_cast<double>(cells));
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) {
    return {0, 0.0, true, static_cast<std::size_t>(nearest)};
  }
  const auto cell = std::min(static_cast<std::size_t>(x), cells - 1);
  return {cell, x - static_cast<double>(cell), false, 0};
}

template <typename T>
T hermite(const std::vector<T>& values, const std::vector<T>& derivatives, double step,
          const Locator& loc) {
  const double s = loc.s;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const std::size_t i = loc.cell;
  return h00 * values[i] + (h10 * step) * derivatives[i] + h01 * values[i + 1] +
         (h11 * step) * derivatives[i + 1];
}

std::vector<CMatrix> rk4_values(const ProblemSpec& problem, const std::vector<double>& grid) {
  const Index m = problem.m;
  std::vector<CMatrix> values;
  values.reserve(grid.size());
  values.push_back(CMatrix::Identity(m, m));
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double t = grid[i];
    const double h = grid[i + 1] - grid[i];
    const CMatrix& y = values.back();
    const CMatrix a0 = problem.coefficient.evaluate(t);
    const CMatrix a_half = problem.coefficient.evaluate(t + 0.5 * h);
    const CMatrix a1 = problem.coefficient.evaluate(grid[i + 1]);
    const CMatrix k1 = -a0 * y;
    const CMatrix k2 = -a_half * (y + (0.5 * h) * k1);
    const CMatrix k3 = -a_half * (y + (0.5 * h) * k2);
    const CMatrix k4 = -a1 * (y + h * k3);
    CMatrix next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(next)) {
      fail(ErrorCode::NonFiniteValue,
           "fundamental matrix overflowed near t = " + std::to_string(grid[i + 1]) +
               "; refine the grid");
    }
    values.push_back(std::move(next));
  }
  return values;
}

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace

CMatrix expm(const CMatrix& matrix) {
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const Index n = matrix.rows();
  if (n == 0) return matrix;
  if (!matrix.allFinite()) fail(ErrorCode::NonFiniteValue, "matrix exponential of non-finite input");
  if (matrix.isZero(0.0)) return CMatrix::Identity(n, n);

  const double norm1 = matrix.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const CMatrix a = matrix / std::ldexp(1.0, squarings);

  const CMatrix ident = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const CMatrix u = a * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const CMatrix v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const CMatrix v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  CMatrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  if (!result.allFinite()) fail(ErrorCode::NonFiniteValue, "matrix exponential overflowed");
  return result;
}

CMatrix FundamentalMatrix::evaluate(double t) const {
  const Locator loc = locate(interval_, step_, grid_.size() - 1, t);
  if (loc.at_node) return values_[loc.node];
  return hermite(values_, derivatives_, step_, loc);
}

FundamentalMatrix fundamental_matrix(const ProblemSpec& problem, int grid_size) {
  if (grid_size < kMinGridSize) {
    fail(ErrorCode::InvalidConfig, "grid size must be at least " + std::to_string(kMinGridSize));
  }
  FundamentalMatrix Y;
  Y.interval_ = problem.interval;
  Y.step_ = problem.interval.length() / grid_size;
  Y.grid_ = uniform_grid(problem.interval, grid_size);
  const Index m = problem.m;

  if (problem.coefficient.kind() == FunctionKind::Constant) {
    Y.closed_form_ = true;
    const CMatrix minus_a = -problem.coefficient.matrices().front();
    Y.values_.reserve(Y.grid_.size());
    Y.values_.push_back(CMatrix::Identity(m, m));
    for (std::size_t i = 1; i < Y.grid_.size(); ++i) {
      Y.values_.push_back(expm(minus_a * (Y.grid_[i] - problem.interval.a)));
    }
  } else {
    Y.values_ = rk4_values(problem, Y.grid_);
    if (grid_size % 2 == 0) {
      std::vector<double> coarse(Y.grid_.size() / 2 + 1);
      for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = Y.grid_[2 * i];
      const auto coarse_values = rk4_values(problem, coarse);
      for (std::size_t i = 0; i < coarse.size(); ++i) {
        Y.self_check_error_ = std::max(
            Y.self_check_error_, (coarse_values[i] - Y.values_[2 * i]).cwiseAbs().maxCoeff());
      }
    }
  }

  Y.derivatives_.reserve(Y.grid_.size());
  Y.inverses_.reserve(Y.grid_.size());
  for (std::size_t i = 0; i < Y.grid_.size(); ++i) {
    const CMatrix& value = Y.values_[i];
    Y.derivatives_.push_back(-problem.coefficient.evaluate(Y.grid_[i]) * value);
    const Eigen::PartialPivLU<CMatrix> lu(value);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
      fail(ErrorCode::SingularFundamental,
           "fundamental matrix is numerically singular at t = " + std::to_string(Y.grid_[i]) +
               " (reciprocal condition " + std::to_string(rcond) + "); refine the grid");
    }
    Y.inverses_.push_back(lu.inverse());
  }
  return Y;
}

CMatrix evaluate_Y(const FundamentalMatrix& Y, double t) { return Y.evaluate(t); }

std::vector<CVector> ode_derivatives(const ProblemSpec& problem, double t, const CVector& y,
                                     int k, bool inhomogeneous) {
  if (k < 0) fail(ErrorCode::UnsupportedOrder, "negative derivative order");
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  out.push_back(y);
  for (int j = 0; j < k; ++j) {
    CVector next = inhomogeneous ? CVector(problem.rhs.derivative(j, t))
                                 : CVector(CVector::Zero(y.size()));
    for (int i = 0; i <= j; ++i) {
      if (i > problem.coefficient.max_derivative_order()) {
        fail(ErrorCode::UnsupportedOrder,
             "derivative of order " + std::to_string(k) +
                 " needs coefficient derivatives unavailable for sampled data (max order " +
                 std::to_string(problem.coefficient.max_derivative_order() + 1) + ")");
      }
      next -= binomial(j, i) * (problem.coefficient.derivative(i, t) * out[j - i]);
    }
    out.push_back(std::move(next));
  }
  return out;
}

CVector derivative_of_column(const FundamentalMatrix& Y, const ProblemSpec& problem, Index j,
                             int k, double t) {
  if (k < 1) fail(ErrorCode::UnsupportedOrder, "derivative order must be at least 1");
  return ode_derivatives(problem, t, Y.evaluate(t).col(j), k, false)[k];
}

CVector ParticularSolution::evaluate(double t) const {
  const Locator loc = locate(interval_, step_, grid_.size() - 1, t);
  if (loc.at_node) return values_[loc.node];
  return hermite(values_, derivatives_, step_, loc);
}

ParticularSolution particular_solution(const FundamentalMatrix& Y, const ProblemSpec& problem) {
  ParticularSolution yp;
  yp.interval_ = Y.interval();
  yp.step_ = Y.step();
  yp.grid_ = Y.grid();
  const auto& grid = yp.grid_;
  const Index m = problem.m;
  const std::size_t nodes = grid.size();

  auto integrand_at_node = [&](std::size_t i) -> CVector {
    return Y.inverses()[i] * problem.rhs.evaluate(grid[i]);
  };

  // Cellwise Simpson with the midpoint from the dense output.
  CVector accumulated = CVector::Zero(m);
  CVector left = integrand_at_node(0);
  yp.values_.reserve(nodes);
  yp.values_.push_back(CVector::Zero(m));
  for (std::size_t i = 0; i + 1 < nodes; ++i) {
    const double h = grid[i + 1] - grid[i];
    const double mid = grid[i] + 0.5 * h;
    const CVector middle = Y.evaluate(mid).partialPivLu().solve(CVector(problem.rhs.evaluate(mid)));
    const CVector right = integrand_at_node(i + 1);
    accumulated += (h / 6.0) * (left + 4.0 * middle + right);
    yp.values_.push_back(Y.values()[i + 1] * accumulated);
    left = right;
  }

  yp.derivatives_.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    yp.derivatives_.push_back(CVector(problem.rhs.evaluate(grid[i])) -
                              problem.coefficient.evaluate(grid[i]) * yp.values_[i]);
  }
  for (std::size_t i = 1; i + 1 < nodes; ++i) {
    const CVector central = (yp.values_[i + 1] - yp.values_[i - 1]) / (grid[i + 1] - grid[i - 1]);
    const CVector defect = central - yp.derivatives_[i];
    yp.residual_ = std::max(yp.residual_, defect.cwiseAbs().maxCoeff());
  }
  return yp;
}

OdeSolutionCurve::OdeSolutionCurve(const FundamentalMatrix& Y,
                                   const ParticularSolution* particular,
                                   const ProblemSpec& problem, CVector q)
    : Y_(Y), particular_(particular), problem_(problem), q_(std::move(q)) {}

CVector OdeSolutionCurve::value(double t) const {
  CVector y = Y_.evaluate(t) * q_;
  if (particular_ != nullptr) y += particular_->evaluate(t);
  return y;
}

CVector OdeSolutionCurve::derivative(int k, double t) const {
  if (k < 1) fail(ErrorCode::UnsupportedOrder, "derivative order must be at least 1");
  return ode_derivatives(problem_, t, value(t), k, particular_ != nullptr)[k];
}

OdeSolutionCurve fundamental_column(const FundamentalMatrix& Y, const ProblemSpec& problem,
                                    Index j) {
  return OdeSolutionCurve(Y, nullptr, problem, CVector::Unit(problem.m, j));
}

}  // namespace fredholm
