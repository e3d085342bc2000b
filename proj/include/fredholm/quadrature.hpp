#pragma once

#include <cassert>
#include <span>
#include <vector>

#include "fredholm/types.hpp"

namespace fredholm {

/// cells + 1 equispaced nodes; the last node is exactly b.
std::vector<double> uniform_grid(const Interval& interval, int cells);

/// Composite Simpson on equispaced samples (values.size() - 1 cells, at
/// least 2). An odd cell count closes with the 3/8 rule on the last three
/// cells. Integer stencil weights are summed before scaling by h so that
/// constant data integrates without rounding when h * cells is exact.
template <typename T>
T simpson(std::span<const T> values, double h) {
  const std::size_t cells = values.size() - 1;
  assert(cells >= 2);
  const std::size_t simpson_cells = cells % 2 == 0 ? cells : cells - 3;
  T acc_simpson = values[0] * 0.0;
  T acc_38 = values[0] * 0.0;
  if (simpson_cells > 0) {
    acc_simpson = values[0] + values[simpson_cells];
    for (std::size_t i = 1; i < simpson_cells; ++i) {
      acc_simpson = acc_simpson + values[i] * (i % 2 == 1 ? 4.0 : 2.0);
    }
  }
  if (simpson_cells != cells) {
    const std::size_t s = simpson_cells;
    acc_38 = values[s] + values[s + 1] * 3.0 + values[s + 2] * 3.0 + values[s + 3];
  }
  T result = acc_simpson * h / 3.0;
  if (simpson_cells != cells) result = result + acc_38 * (3.0 * h / 8.0);
  return result;
}

template <typename T>
T simpson(const std::vector<T>& values, double h) {
  return simpson(std::span<const T>(values), h);
}

}  // namespace fredholm
