#include "hjlab/grid.hpp"

#include <cmath>

namespace hjlab {

bool Grid::same_as(const Grid& o, double tol) const {
  if (dim != o.dim) return false;
  for (int a = 0; a < dim; ++a)
    if (ax[a].count != o.ax[a].count || std::fabs(ax[a].lo - o.ax[a].lo) > tol ||
        std::fabs(ax[a].hi - o.ax[a].hi) > tol)
      return false;
  return true;
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw ArgumentError("grid: dim must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (ax[a].count < 2) throw ArgumentError("grid: counts >= 2 per axis required");
    if (!(ax[a].hi > ax[a].lo)) throw ArgumentError("grid: empty axis range");
  }
}

double SolutionField::discrete_lipschitz() const {
  double lip = 0.0;
  if (grid.dim == 1) {
    double h = grid.ax[0].step();
    for (int i = 0; i + 1 < grid.ax[0].count; ++i)
      lip = std::max(lip, std::fabs(values[static_cast<size_t>(i + 1)] -
                                    values[static_cast<size_t>(i)]) /
                              h);
  } else {
    int nx = grid.ax[0].count, ny = grid.ax[1].count;
    double hx = grid.ax[0].step(), hy = grid.ax[1].step();
    auto v = [&](int i, int j) { return values[static_cast<size_t>(j * nx + i)]; };
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        if (i + 1 < nx) lip = std::max(lip, std::fabs(v(i + 1, j) - v(i, j)) / hx);
        if (j + 1 < ny) lip = std::max(lip, std::fabs(v(i, j + 1) - v(i, j)) / hy);
      }
  }
  return lip;
}

}  // namespace hjlab
