#include "numerics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace nmqed {

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) { return m.exp(); }

void require_time_grid(std::span<const double> grid, bool from_zero) {
  if (grid.empty()) throw ConfigError("time grid is empty");
  if (from_zero && grid[0] != 0.0) throw ConfigError("time grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ConfigError("time grid must be strictly ascending");
}

}  // namespace nmqed
