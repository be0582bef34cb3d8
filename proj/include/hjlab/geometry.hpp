#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "hjlab/errors.hpp"

namespace hjlab {

// Point/covector in R^d for d = 1 or 2.  Fixed storage, no allocation.
struct Vec {
  std::array<double, 2> c{0.0, 0.0};
  int dim = 1;

  Vec() = default;
  static Vec d1(double x) {
    Vec v;
    v.c[0] = x;
    v.dim = 1;
    return v;
  }
  static Vec d2(double x, double y) {
    Vec v;
    v.c[0] = x;
    v.c[1] = y;
    v.dim = 2;
    return v;
  }
  static Vec zero(int dim) {
    Vec v;
    v.dim = dim;
    return v;
  }

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    return *this;
  }
  Vec& operator*=(double s) {
    c[0] *= s;
    c[1] *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }

  double dot(const Vec& o) const { return c[0] * o.c[0] + c[1] * o.c[1]; }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
  bool finite() const {
    return std::isfinite(c[0]) && (dim < 2 || std::isfinite(c[1]));
  }
};

inline double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

// Axis-aligned box in R^d.
struct Box {
  Vec lo, hi;
  int dim() const { return lo.dim; }
};

// Indices of the convex hull of planar points, counter-clockwise
// (Andrew's monotone chain).  Collinear interior points are dropped.
std::vector<int> convex_hull_2d(const std::vector<std::array<double, 2>>& pts);

// Whether x lies in the convex hull of pts (ambient dimension n <= 3),
// decided by Caratheodory enumeration of subsets of size <= n+1.
bool in_convex_hull(const std::vector<std::vector<double>>& pts,
                    const std::vector<double>& x, double tol);

// flags[i] == true iff pts[i] is an extreme point of the set.
// Duplicate points must be merged beforehand.
std::vector<bool> extreme_point_flags(const std::vector<std::vector<double>>& pts,
                                      double tol);

// Solves the square system A a = b in place, n <= 8.  Returns false if singular.
bool solve_dense(std::vector<std::vector<double>> A, std::vector<double> b,
                 std::vector<double>& out);

}  // namespace hjlab
