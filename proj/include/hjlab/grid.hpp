#pragma once

#include <map>
#include <string>
#include <vector>

#include "hjlab/geometry.hpp"

namespace hjlab {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
  double step() const { return count > 1 ? (hi - lo) / (count - 1) : 0.0; }
  double node(int i) const { return lo + i * step(); }
};

// Rectangular space grid, row-major in (x, y).
struct Grid {
  int dim = 1;
  Axis ax[2];

  int size() const { return dim == 1 ? ax[0].count : ax[0].count * ax[1].count; }
  Vec node(int flat) const {
    if (dim == 1) return Vec::d1(ax[0].node(flat));
    return Vec::d2(ax[0].node(flat % ax[0].count), ax[1].node(flat / ax[0].count));
  }
  Box box() const {
    Box b;
    if (dim == 1) {
      b.lo = Vec::d1(ax[0].lo);
      b.hi = Vec::d1(ax[0].hi);
    } else {
      b.lo = Vec::d2(ax[0].lo, ax[1].lo);
      b.hi = Vec::d2(ax[0].hi, ax[1].hi);
    }
    return b;
  }
  bool same_as(const Grid& o, double tol = 1e-12) const;
  void validate() const;
};

// Scalar field sampled on a grid at a fixed time.
struct SolutionField {
  double t = 0.0;
  Grid grid;
  std::vector<double> values;
  std::string provenance;  // inf-family, variational, iterated-k, hopf,
                           // lax-oleinik, fd-oracle
  std::map<std::string, double> meta;

  // Largest |values[i]-values[j]|/|x_i-x_j| over neighbouring nodes.
  double discrete_lipschitz() const;
};

}  // namespace hjlab
