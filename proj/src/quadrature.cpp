#include "fredholm/quadrature.hpp"

namespace fredholm {

std::vector<double> uniform_grid(const Interval& interval, int cells) {
  std::vector<double> nodes(static_cast<std::size_t>(cells) + 1);
  const double h = interval.length() / cells;
  for (int i = 0; i < cells; ++i) nodes[i] = interval.a + i * h;
  nodes.back() = interval.b;
  return nodes;
}

}  // namespace fredholm
