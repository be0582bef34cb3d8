#include "hjlab/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace hjlab {

std::vector<int> convex_hull_2d(const std::vector<std::array<double, 2>>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n <= 2) {
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const auto& pa = pts[static_cast<size_t>(a)];
    const auto& pb = pts[static_cast<size_t>(b)];
    return pa[0] != pb[0] ? pa[0] < pb[0] : pa[1] < pb[1];
  });
  auto cross = [&](int o, int a, int b) {
    const auto& po = pts[static_cast<size_t>(o)];
    const auto& pa = pts[static_cast<size_t>(a)];
    const auto& pb = pts[static_cast<size_t>(b)];
    return (pa[0] - po[0]) * (pb[1] - po[1]) - (pa[1] - po[1]) * (pb[0] - po[0]);
  };
  std::vector<int> hull(static_cast<size_t>(2 * n));
  int k = 0;
  for (int ii = 0; ii < n; ++ii) {  // lower chain
    int i = idx[static_cast<size_t>(ii)];
    while (k >= 2 && cross(hull[static_cast<size_t>(k - 2)],
                           hull[static_cast<size_t>(k - 1)], i) <= 0)
      --k;
    hull[static_cast<size_t>(k++)] = i;
  }
  for (int ii = n - 2, lower = k + 1; ii >= 0; --ii) {  // upper chain
    int i = idx[static_cast<size_t>(ii)];
    while (k >= lower && cross(hull[static_cast<size_t>(k - 2)],
                               hull[static_cast<size_t>(k - 1)], i) <= 0)
      --k;
    hull[static_cast<size_t>(k++)] = i;
  }
  hull.resize(static_cast<size_t>(k - 1));
  return hull;
}

bool solve_dense(std::vector<std::vector<double>> A, std::vector<double> b,
                 std::vector<double>& out) {
  const int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(A[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
          std::fabs(A[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
        piv = r;
    if (std::fabs(A[static_cast<size_t>(piv)][static_cast<size_t>(col)]) < 1e-14)
      return false;
    std::swap(A[static_cast<size_t>(piv)], A[static_cast<size_t>(col)]);
    std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
    for (int r = col + 1; r < n; ++r) {
      double f = A[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                 A[static_cast<size_t>(col)][static_cast<size_t>(col)];
      for (int cc = col; cc < n; ++cc)
        A[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
            f * A[static_cast<size_t>(col)][static_cast<size_t>(cc)];
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
    }
  }
  out.assign(static_cast<size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[static_cast<size_t>(r)];
    for (int cc = r + 1; cc < n; ++cc)
      s -= A[static_cast<size_t>(r)][static_cast<size_t>(cc)] * out[static_cast<size_t>(cc)];
    out[static_cast<size_t>(r)] = s / A[static_cast<size_t>(r)][static_cast<size_t>(r)];
  }
  return true;
}

namespace {

// Checks whether x is a convex combination with nonnegative weights of the
// given subset of points (ambient dimension n). Solves the constrained
// least-squares system [coords; ones] a = [x; 1] via normal equations
// and accepts when the residual and weight violations are below tol.
bool combination_feasible(const std::vector<std::vector<double>>& pts,
                          const std::vector<int>& subset,
                          const std::vector<double>& x, double tol) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(subset.size());
  // rows of the design matrix: n coordinate rows + one affine row
  std::vector<std::vector<double>> A(static_cast<size_t>(n + 1),
                                     std::vector<double>(static_cast<size_t>(m)));
  std::vector<double> rhs(static_cast<size_t>(n + 1));
  for (int j = 0; j < m; ++j)
    for (int r = 0; r < n; ++r)
      A[static_cast<size_t>(r)][static_cast<size_t>(j)] =
          pts[static_cast<size_t>(subset[static_cast<size_t>(j)])][static_cast<size_t>(r)];
  for (int j = 0; j < m; ++j) A[static_cast<size_t>(n)][static_cast<size_t>(j)] = 1.0;
  for (int r = 0; r < n; ++r) rhs[static_cast<size_t>(r)] = x[static_cast<size_t>(r)];
  rhs[static_cast<size_t>(n)] = 1.0;

  // normal equations  (A^T A) a = A^T rhs
  std::vector<std::vector<double>> M(static_cast<size_t>(m),
                                     std::vector<double>(static_cast<size_t>(m), 0.0));
  std::vector<double> v(static_cast<size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      for (int r = 0; r <= n; ++r)
        M[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            A[static_cast<size_t>(r)][static_cast<size_t>(i)] *
            A[static_cast<size_t>(r)][static_cast<size_t>(j)];
    for (int r = 0; r <= n; ++r)
      v[static_cast<size_t>(i)] += A[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                                   rhs[static_cast<size_t>(r)];
  }
  std::vector<double> a;
  if (!solve_dense(M, v, a)) return false;
  for (double ai : a)
    if (ai < -tol) return false;
  // residual check
  for (int r = 0; r <= n; ++r) {
    double s = 0.0;
    for (int j = 0; j < m; ++j)
      s += A[static_cast<size_t>(r)][static_cast<size_t>(j)] * a[static_cast<size_t>(j)];
    if (std::fabs(s - rhs[static_cast<size_t>(r)]) > tol) return false;
  }
  return true;
}

void for_each_subset(int n, int max_size,
                     const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> subset;
  // iterative enumeration of subsets of size 1..max_size
  std::function<bool(int)> rec = [&](int start) -> bool {
    if (!subset.empty() && static_cast<int>(subset.size()) <= max_size)
      if (visit(subset)) return true;
    if (static_cast<int>(subset.size()) == max_size) return false;
    for (int i = start; i < n; ++i) {
      subset.push_back(i);
      if (rec(i + 1)) return true;
      subset.pop_back();
    }
    return false;
  };
  rec(0);
}

}  // namespace

bool in_convex_hull(const std::vector<std::vector<double>>& pts,
                    const std::vector<double>& x, double tol) {
  const int n = static_cast<int>(x.size());
  bool found = false;
  for_each_subset(static_cast<int>(pts.size()), n + 1,
                  [&](const std::vector<int>& subset) {
                    if (combination_feasible(pts, subset, x, tol)) {
                      found = true;
                      return true;
                    }
                    return false;
                  });
  return found;
}

std::vector<bool> extreme_point_flags(const std::vector<std::vector<double>>& pts,
                                      double tol) {
  const int n = static_cast<int>(pts.size());
  std::vector<bool> flags(static_cast<size_t>(n), true);
  if (n <= 1) return flags;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<double>> others;
    others.reserve(static_cast<size_t>(n - 1));
    for (int j = 0; j < n; ++j)
      if (j != i) others.push_back(pts[static_cast<size_t>(j)]);
    flags[static_cast<size_t>(i)] = !in_convex_hull(others, pts[static_cast<size_t>(i)], tol);
  }
  return flags;
}

}  // namespace hjlab
