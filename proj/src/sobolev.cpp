#include "fredholm/sobolev.hpp"

#include <cmath>

#include "fredholm/error.hpp"
#include "fredholm/quadrature.hpp"

namespace fredholm {

namespace {

void check_space(const SpaceParams& space) {
  if (!std::isfinite(space.s) || !(space.s > 1.0) || space.s == std::floor(space.s)) {
    fail(ErrorCode::InvalidSpace, "s must be a non-integer greater than 1");
  }
  if (!std::isfinite(space.p) || !(space.p >= 1.0)) {
    fail(ErrorCode::InvalidSpace, "p must satisfy 1 <= p < inf");
  }
}

}  // namespace

NormBreakdown sobolev_slobodetsky_norm(std::span<const std::vector<Complex>> derivative_samples,
                                       const Interval& interval, const SpaceParams& space) {
  check_space(space);
  const int top = space.integer_part();
  if (derivative_samples.size() < static_cast<std::size_t>(top) + 1) {
    fail(ErrorCode::MissingDerivatives, "need samples of derivatives up to order " +
                                            std::to_string(top));
  }
  const std::size_t nodes = derivative_samples.front().size();
  if (nodes < 3) fail(ErrorCode::InvalidConfig, "need at least two grid cells");
  for (int k = 0; k <= top; ++k) {
    if (derivative_samples[k].size() != nodes) {
      fail(ErrorCode::DimensionMismatch, "derivative samples differ in length");
    }
  }
  const double p = space.p;
  const double h = interval.length() / static_cast<double>(nodes - 1);

  NormBreakdown out;
  out.grid_size = static_cast<int>(nodes) - 1;
  std::vector<double> powered(nodes);
  for (int k = 0; k <= top; ++k) {
    for (std::size_t i = 0; i < nodes; ++i) powered[i] = std::pow(std::abs(derivative_samples[k][i]), p);
    out.integer_part_norm += std::pow(simpson(powered, h), 1.0 / p);
  }

  const auto& g = derivative_samples[top];
  const double exponent = 1.0 + space.fractional_part() * p;
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double wi = (i == 0 || i + 1 == nodes) ? 0.5 : 1.0;
    for (std::size_t j = i + 1; j < nodes; ++j) {
      const double diff = std::abs(g[i] - g[j]);
      if (diff == 0.0) continue;
      const double wj = (j + 1 == nodes) ? 0.5 : 1.0;
      const double dist = static_cast<double>(j - i) * h;
      sum += wi * wj * std::pow(diff, p) / std::pow(dist, exponent);
    }
  }
  out.seminorm = std::pow(2.0 * sum * h * h, 1.0 / p);
  out.total = out.integer_part_norm + out.seminorm;
  return out;
}

NormBreakdown sobolev_slobodetsky_norm(const MatrixFunction& f, const SpaceParams& space,
                                       int grid_size) {
  check_space(space);
  if (grid_size < 2) fail(ErrorCode::InvalidConfig, "need at least two grid cells");
  const int top = space.integer_part();
  if (top > f.max_derivative_order()) {
    fail(ErrorCode::MissingDerivatives, "sampled data provides derivatives up to order " +
                                            std::to_string(f.max_derivative_order()) +
                                            ", the norm needs order " + std::to_string(top));
  }
  const auto grid = uniform_grid(f.domain(), grid_size);
  NormBreakdown total;
  total.grid_size = grid_size;
  for (Index c = 0; c < f.rows(); ++c) {
    std::vector<std::vector<Complex>> samples(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) {
      samples[k].reserve(grid.size());
      for (double t : grid) samples[k].push_back(f.derivative(k, t)(c, 0));
    }
    const NormBreakdown part = sobolev_slobodetsky_norm(samples, f.domain(), space);
    total.integer_part_norm += part.integer_part_norm;
    total.seminorm += part.seminorm;
  }
  total.total = total.integer_part_norm + total.seminorm;
  return total;
}

}  // namespace fredholm
