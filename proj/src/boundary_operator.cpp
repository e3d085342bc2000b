#include "fredholm/boundary_operator.hpp"

#include <algorithm>
#include <cmath>

#include "fredholm/error.hpp"
#include "fredholm/problem.hpp"
#include "fredholm/quadrature.hpp"

namespace fredholm {

CVector caputo_derivative(const VectorCurve& y, double beta, double t, double a, int grid_size) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    fail(ErrorCode::InvalidOrder, "Caputo order must be positive, got " + std::to_string(beta));
  }
  if (beta == std::floor(beta)) {
    fail(ErrorCode::IntegerOrder,
         "Caputo order " + std::to_string(beta) + " is an integer; use the plain derivative");
  }
  if (t < a) {
    fail(ErrorCode::OutOfDomain, "Caputo derivative requested at t = " + std::to_string(t) +
                                     " left of the terminal a = " + std::to_string(a));
  }
  if (grid_size < 1) fail(ErrorCode::InvalidConfig, "grid size must be positive");
  if (t == a) return CVector::Zero(y.size());

  const int n = static_cast<int>(std::ceil(beta));
  const double nu = n - beta;  // in (0, 1)
  const double h = (t - a) / grid_size;

  // Product integration: int (t - tau)^(nu - 1) g(tau) dtau with g the
  // piecewise-linear interpolant of y^(n); in units of h the cell
  // [tau_j, tau_j+1] maps to u in [N - j - 1, N - j].
  CVector acc = CVector::Zero(y.size());
  CVector left = y.derivative(n, a);
  for (int j = 0; j < grid_size; ++j) {
    const double tau_right = j + 1 == grid_size ? t : a + (j + 1) * h;
    const CVector right = y.derivative(n, tau_right);
    const double u_hi = grid_size - j;
    const double u_lo = grid_size - j - 1;
    const double i0 = (std::pow(u_hi, nu) - std::pow(u_lo, nu)) / nu;
    const double i1 = (std::pow(u_hi, nu + 1.0) - std::pow(u_lo, nu + 1.0)) / (nu + 1.0);
    acc += (i1 - u_lo * i0) * left + (u_hi * i0 - i1) * right;
    left = right;
  }
  return acc * (std::pow(h, nu) / std::tgamma(nu));
}

CVector apply_boundary(const BoundaryOperator& boundary, const VectorCurve& y,
                       const ProblemSpec& problem, int grid_size) {
  if (y.size() != problem.m) {
    fail(ErrorCode::DimensionMismatch, "boundary operator applied to a vector of length " +
                                           std::to_string(y.size()) + ", expected " +
                                           std::to_string(problem.m));
  }
  const Interval& interval = problem.interval;
  CVector out = CVector::Zero(boundary.r);

  for (const auto& term : boundary.point_terms) {
    if (!interval.contains(term.t0)) {
      fail(ErrorCode::OutOfDomain, "boundary point t = " + std::to_string(term.t0) +
                                       " outside the interval");
    }
    const double t0 = std::clamp(term.t0, interval.a, interval.b);
    CVector value;
    if (term.order == 0.0) {
      value = y.value(t0);
    } else if (term.order == std::floor(term.order)) {
      value = y.derivative(static_cast<int>(term.order), t0);
    } else {
      value = caputo_derivative(y, term.order, t0, interval.a, grid_size);
    }
    out += term.alpha * value;
  }

  if (!boundary.integral_terms.empty()) {
    const auto nodes = uniform_grid(interval, grid_size);
    std::vector<CVector> samples;
    samples.reserve(nodes.size());
    for (double t : nodes) samples.push_back(y.value(t));
    const double h = interval.length() / grid_size;
    for (const auto& term : boundary.integral_terms) {
      std::vector<CVector> integrand;
      integrand.reserve(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        integrand.push_back(term.kernel.evaluate(nodes[i]) * samples[i]);
      }
      out += simpson(integrand, h);
    }
  }
  return out;
}

}  // namespace fredholm
