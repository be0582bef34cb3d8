#include "hjlab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hjlab {

namespace {

constexpr double kActivationTol = 1e-9;

// ---------------------------------------------------------------- rasterize

PatchOnGrid rasterize_1d(const SolutionPatch& patch, const Grid& grid) {
  PatchOnGrid out;
  out.generator_id = patch.generator_id;
  out.caustic_time = patch.caustic_time;
  const size_t n = patch.arcs.size();
  std::vector<double> q(n), val(n), pv(n);
  for (size_t i = 0; i < n; ++i) {
    q[i] = patch.arcs[i].states.back().q[0];
    val[i] = patch.arcs[i].action.back();
    pv[i] = patch.arcs[i].states.back().p[0];
  }
  const int m = grid.size();
  out.value.assign(static_cast<size_t>(m), std::numeric_limits<double>::infinity());
  out.grad.assign(static_cast<size_t>(m), Vec::d1(0.0));
  out.covered.assign(static_cast<size_t>(m), 0);

  bool monotone = true;
  for (size_t i = 0; i + 1 < n; ++i)
    if (q[i + 1] <= q[i]) {
      monotone = false;
      break;
    }

  auto node_x = [&](int i) { return grid.ax[0].node(i); };

  if (monotone) {
    for (int i = 0; i < m; ++i) {
      double x = node_x(i);
      double v, g;
      if (x <= q.front()) {  // linear continuation with the transported slope
        v = val.front() + pv.front() * (x - q.front());
        g = pv.front();
      } else if (x >= q.back()) {
        v = val.back() + pv.back() * (x - q.back());
        g = pv.back();
      } else {
        auto it = std::upper_bound(q.begin(), q.end(), x);
        size_t k = static_cast<size_t>(it - q.begin()) - 1;
        double w = (x - q[k]) / (q[k + 1] - q[k]);
        v = val[k] + w * (val[k + 1] - val[k]);
        g = pv[k] + w * (pv[k + 1] - pv[k]);
        out.covered[static_cast<size_t>(i)] = 1;
      }
      out.value[static_cast<size_t>(i)] = v;
      out.grad[static_cast<size_t>(i)] = Vec::d1(g);
    }
    // boundary extrapolation still counts as a usable value
    for (int i = 0; i < m; ++i) out.covered[static_cast<size_t>(i)] = 1;
    return out;
  }

  // folded map: take the minimum over all segments covering each node
  double qlo = q.front(), qhi = q.front();
  size_t ilo = 0, ihi = 0;
  for (size_t i = 0; i < n; ++i) {
    if (q[i] < qlo) qlo = q[i], ilo = i;
    if (q[i] > qhi) qhi = q[i], ihi = i;
  }
  double h = grid.ax[0].step();
  for (size_t k = 0; k + 1 < n; ++k) {
    double a = std::min(q[k], q[k + 1]), b = std::max(q[k], q[k + 1]);
    int i0 = std::max(0, static_cast<int>(std::ceil((a - grid.ax[0].lo) / h - 1e-12)));
    int i1 = std::min(m - 1,
                      static_cast<int>(std::floor((b - grid.ax[0].lo) / h + 1e-12)));
    for (int i = i0; i <= i1; ++i) {
      double x = node_x(i);
      double denom = q[k + 1] - q[k];
      double w = std::fabs(denom) > 1e-300 ? (x - q[k]) / denom : 0.0;
      double v = val[k] + w * (val[k + 1] - val[k]);
      if (v < out.value[static_cast<size_t>(i)]) {
        out.value[static_cast<size_t>(i)] = v;
        out.grad[static_cast<size_t>(i)] = Vec::d1(pv[k] + w * (pv[k + 1] - pv[k]));
      }
      out.covered[static_cast<size_t>(i)] = 1;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (out.covered[static_cast<size_t>(i)]) continue;
    double x = node_x(i);
    size_t k = x < qlo ? ilo : ihi;
    out.value[static_cast<size_t>(i)] = val[k] + pv[k] * (x - q[k]);
    out.grad[static_cast<size_t>(i)] = Vec::d1(pv[k]);
    out.covered[static_cast<size_t>(i)] = 1;
  }
  return out;
}

PatchOnGrid rasterize_2d(const SolutionPatch& patch, const Grid& grid) {
  PatchOnGrid out;
  out.generator_id = patch.generator_id;
  out.caustic_time = patch.caustic_time;
  const int m = grid.size();
  out.value.assign(static_cast<size_t>(m), std::numeric_limits<double>::infinity());
  out.grad.assign(static_cast<size_t>(m), Vec::d2(0.0, 0.0));
  out.covered.assign(static_cast<size_t>(m), 0);

  const auto& lg = patch.launch;
  size_t nx = lg.xs.size(), ny = lg.ys.size();
  auto arc = [&](size_t i, size_t j) -> const CharacteristicArc& {
    return patch.arcs[j * nx + i];
  };
  int gx = grid.ax[0].count;
  double hx = grid.ax[0].step(), hy = grid.ax[1].step();

  auto consider_triangle = [&](const Vec q[3], const double v[3], const Vec p[3]) {
    double xlo = std::min({q[0][0], q[1][0], q[2][0]});
    double xhi = std::max({q[0][0], q[1][0], q[2][0]});
    double ylo = std::min({q[0][1], q[1][1], q[2][1]});
    double yhi = std::max({q[0][1], q[1][1], q[2][1]});
    int i0 = std::max(0, static_cast<int>(std::ceil((xlo - grid.ax[0].lo) / hx - 1e-12)));
    int i1 = std::min(grid.ax[0].count - 1,
                      static_cast<int>(std::floor((xhi - grid.ax[0].lo) / hx + 1e-12)));
    int j0 = std::max(0, static_cast<int>(std::ceil((ylo - grid.ax[1].lo) / hy - 1e-12)));
    int j1 = std::min(grid.ax[1].count - 1,
                      static_cast<int>(std::floor((yhi - grid.ax[1].lo) / hy + 1e-12)));
    double d00 = q[1][0] - q[0][0], d01 = q[2][0] - q[0][0];
    double d10 = q[1][1] - q[0][1], d11 = q[2][1] - q[0][1];
    double det = d00 * d11 - d01 * d10;
    if (std::fabs(det) < 1e-300) return;
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        double x = grid.ax[0].node(i) - q[0][0];
        double y = grid.ax[1].node(j) - q[0][1];
        double a1 = (x * d11 - y * d01) / det;
        double a2 = (-x * d10 + y * d00) / det;
        double a0 = 1.0 - a1 - a2;
        if (a0 < -1e-9 || a1 < -1e-9 || a2 < -1e-9) continue;
        size_t node = static_cast<size_t>(j * gx + i);
        double value = a0 * v[0] + a1 * v[1] + a2 * v[2];
        if (value < out.value[node]) {
          out.value[node] = value;
          out.grad[node] = a0 * p[0] + a1 * p[1] + a2 * p[2];
        }
        out.covered[node] = 1;
      }
  };

  for (size_t j = 0; j + 1 < ny; ++j)
    for (size_t i = 0; i + 1 < nx; ++i) {
      const CharacteristicArc* corner[4] = {&arc(i, j), &arc(i + 1, j),
                                            &arc(i + 1, j + 1), &arc(i, j + 1)};
      Vec q[4];
      double v[4];
      Vec p[4];
      for (int cnr = 0; cnr < 4; ++cnr) {
        q[cnr] = corner[cnr]->states.back().q;
        v[cnr] = corner[cnr]->action.back();
        p[cnr] = corner[cnr]->states.back().p;
      }
      Vec tq[3] = {q[0], q[1], q[2]};
      double tv[3] = {v[0], v[1], v[2]};
      Vec tp[3] = {p[0], p[1], p[2]};
      consider_triangle(tq, tv, tp);
      Vec uq[3] = {q[0], q[2], q[3]};
      double uv[3] = {v[0], v[2], v[3]};
      Vec up[3] = {p[0], p[2], p[3]};
      consider_triangle(uq, uv, up);
    }

  // fall back to a nearest-point linearization for uncovered nodes
  for (int node = 0; node < m; ++node) {
    if (out.covered[static_cast<size_t>(node)]) continue;
    Vec x = grid.node(node);
    double best = std::numeric_limits<double>::infinity();
    size_t bestk = 0;
    for (size_t k = 0; k < patch.arcs.size(); ++k) {
      double d2 = (patch.arcs[k].states.back().q - x).norm2();
      if (d2 < best) {
        best = d2;
        bestk = k;
      }
    }
    const auto& s = patch.arcs[bestk].states.back();
    out.value[static_cast<size_t>(node)] =
        patch.arcs[bestk].action.back() + s.p.dot(x - s.q);
    out.grad[static_cast<size_t>(node)] = s.p;
    out.covered[static_cast<size_t>(node)] = 1;
  }
  return out;
}

PatchOnGrid rasterize(const SolutionPatch& patch, const Grid& grid) {
  return grid.dim == 1 ? rasterize_1d(patch, grid) : rasterize_2d(patch, grid);
}

// ------------------------------------------------------------ launch grids

double max_generator_slope(const SemiConcaveFn& fn, const Grid& grid) {
  double s = fn.L;
  for (const auto& g : fn.generators)
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < (grid.dim == 2 ? 9 : 1); ++j) {
        Vec x = Vec::zero(grid.dim);
        x[0] = grid.ax[0].lo + (grid.ax[0].hi - grid.ax[0].lo) * i / 8.0;
        if (grid.dim == 2)
          x[1] = grid.ax[1].lo + (grid.ax[1].hi - grid.ax[1].lo) * j / 8.0;
        s = std::max(s, g.gradient(x).norm());
      }
  return s;
}

double max_characteristic_speed(const HamiltonianModel& model, const Grid& grid,
                                double s0, double t, double p_range) {
  double v = 0.0;
  Vec xc = Vec::zero(grid.dim);
  for (int a = 0; a < grid.dim; ++a) xc[a] = 0.5 * (grid.ax[a].lo + grid.ax[a].hi);
  for (int it = 0; it <= 4; ++it) {
    double tt = s0 + (t - s0) * it / 4.0;
    for (int i = 0; i <= 32; ++i)
      for (int j = 0; j <= (grid.dim == 2 ? 32 : 0); ++j) {
        Vec p = Vec::zero(grid.dim);
        p[0] = -p_range + 2.0 * p_range * i / 32.0;
        if (grid.dim == 2) p[1] = -p_range + 2.0 * p_range * j / 32.0;
        v = std::max(v, model.grad_p(tt, xc, p).norm());
      }
  }
  return v;
}

LaunchGrid make_launch_grid(const HamiltonianModel& model, const SemiConcaveFn& fn,
                            const Grid& grid, double s0, double t) {
  double duration = std::max(t - s0, 0.0);
  double p_range =
      lipschitz_bound(max_generator_slope(fn, grid), model.bound_A, duration) + 1.0;
  double vmax = max_characteristic_speed(model, grid, s0, t, p_range);
  if (grid.dim == 1) {
    double h = grid.ax[0].step();
    double margin = vmax * duration * 1.1 + 4.0 * h + 0.5;
    double lo = grid.ax[0].lo - margin, hi = grid.ax[0].hi + margin;
    int count = std::clamp(static_cast<int>(std::ceil((hi - lo) / h)) + 1, 9, 1601);
    return LaunchGrid::uniform_1d(lo, hi, count);
  }
  double hx = grid.ax[0].step(), hy = grid.ax[1].step();
  double mx = vmax * duration * 1.1 + 4.0 * hx + 0.5;
  double my = vmax * duration * 1.1 + 4.0 * hy + 0.5;
  double lx = grid.ax[0].lo - mx, hxx = grid.ax[0].hi + mx;
  double ly = grid.ax[1].lo - my, hyy = grid.ax[1].hi + my;
  int nx = std::clamp(static_cast<int>(std::ceil((hxx - lx) / hx)) + 1, 9, 101);
  int ny = std::clamp(static_cast<int>(std::ceil((hyy - ly) / hy)) + 1, 9, 101);
  return LaunchGrid::uniform_2d(lx, hxx, nx, ly, hyy, ny);
}

FamilyEvolution identity_family(const SemiConcaveFn& fn, const Grid& grid, double t) {
  FamilyEvolution fe;
  fe.t = t;
  fe.grid = grid;
  const int m = grid.size();
  for (const auto& g : fn.generators) {
    PatchOnGrid pg;
    pg.generator_id = g.id;
    pg.caustic_time = std::numeric_limits<double>::infinity();
    pg.value.resize(static_cast<size_t>(m));
    pg.grad.resize(static_cast<size_t>(m));
    pg.covered.assign(static_cast<size_t>(m), 1);
    for (int i = 0; i < m; ++i) {
      Vec x = grid.node(i);
      pg.value[static_cast<size_t>(i)] = g.value(x);
      pg.grad[static_cast<size_t>(i)] = g.gradient(x);
    }
    fe.members.push_back(std::move(pg));
  }
  return fe;
}

}  // namespace

SolutionField FamilyEvolution::min_field(const std::string& provenance) const {
  SolutionField f;
  f.t = t;
  f.grid = grid;
  f.provenance = provenance;
  const int m = grid.size();
  f.values.assign(static_cast<size_t>(m), std::numeric_limits<double>::infinity());
  for (const auto& pg : members)
    for (int i = 0; i < m; ++i)
      f.values[static_cast<size_t>(i)] =
          std::min(f.values[static_cast<size_t>(i)], pg.value[static_cast<size_t>(i)]);
  return f;
}

std::vector<int> FamilyEvolution::active_at(int node) const {
  double mv = std::numeric_limits<double>::infinity();
  for (const auto& pg : members)
    mv = std::min(mv, pg.value[static_cast<size_t>(node)]);
  std::vector<int> active;
  for (size_t k = 0; k < members.size(); ++k)
    if (members[k].value[static_cast<size_t>(node)] <= mv + kActivationTol)
      active.push_back(static_cast<int>(k));
  return active;
}

SuperDifferential FamilyEvolution::superdiff_at(const HamiltonianModel& model,
                                                int node, double cluster_tol) const {
  Vec x = grid.node(node);
  std::vector<std::pair<double, Vec>> samples;
  for (int k : active_at(node)) {
    Vec p = members[static_cast<size_t>(k)].grad[static_cast<size_t>(node)];
    samples.emplace_back(-model.eval(t, x, p), p);
  }
  return make_superdifferential(std::move(samples), grid.dim, cluster_tol);
}

FamilyEvolution evolve_family(const HamiltonianModel& model, const SemiConcaveFn& fn,
                              double t, const Grid& grid, double dt, double s0) {
  grid.validate();
  if (fn.generators.empty()) throw ArgumentError("evolve_family: empty family");
  if (model.dim != grid.dim) throw ArgumentError("evolve_family: dimension mismatch");
  if (t <= s0 + 1e-15) return identity_family(fn, grid, t);

  LaunchGrid launch = make_launch_grid(model, fn, grid, s0, t);
  FamilyEvolution fe;
  fe.t = t;
  fe.grid = grid;
  for (const auto& g : fn.generators) {
    SolutionPatch patch = evolve_generator(model, g, launch, t, dt, s0);
    if (patch.caustic_time <= t) {
      throw HorizonError("evolve_family: generator " + std::to_string(g.id) +
                             " reaches its caustic at t=" +
                             std::to_string(patch.caustic_time),
                         g.id, patch.caustic_time);
    }
    fe.members.push_back(rasterize(patch, grid));
  }
  return fe;
}

SolutionField inf_family_solution(const HamiltonianModel& model,
                                  const SemiConcaveFn& fn, double t, const Grid& grid,
                                  double dt, double s0) {
  return evolve_family(model, fn, t, grid, dt, s0).min_field("inf-family");
}

namespace {

std::vector<Vec> make_sites(const Grid& grid, int sites_per_axis) {
  if (sites_per_axis < 2) throw ArgumentError("variational: site density >= 2");
  std::vector<Vec> sites;
  if (grid.dim == 1) {
    for (int i = 0; i < sites_per_axis; ++i)
      sites.push_back(Vec::d1(grid.ax[0].lo + (grid.ax[0].hi - grid.ax[0].lo) * i /
                                                  (sites_per_axis - 1)));
  } else {
    for (int j = 0; j < sites_per_axis; ++j)
      for (int i = 0; i < sites_per_axis; ++i)
        sites.push_back(
            Vec::d2(grid.ax[0].lo + (grid.ax[0].hi - grid.ax[0].lo) * i /
                                        (sites_per_axis - 1),
                    grid.ax[1].lo + (grid.ax[1].hi - grid.ax[1].lo) * j /
                                        (sites_per_axis - 1)));
  }
  return sites;
}

SemiConcaveFn rebuild_family(const InitialData& u0, const std::vector<Vec>& sites) {
  double B = std::clamp(u0.B, 1e-6, 1e3);
  double L = std::clamp(u0.L, 1e-6, 1e3);
  return build_family_f0(u0.oracle, sites, B, L);
}

}  // namespace

FamilyEvolution variational_family(const HamiltonianModel& model,
                                   const InitialData& u0, double t, const Grid& grid,
                                   double dt, int sites_per_axis, double s0) {
  // Sites must cover every launch point whose characteristic can reach the
  // evaluation grid by time t, so widen the site interval by the maximal
  // characteristic travel distance.
  double duration = std::max(t - s0, 0.0);
  double p_range =
      lipschitz_bound(std::clamp(u0.L, 1e-6, 1e3), model.bound_A, duration) + 1.0;
  double vmax = max_characteristic_speed(model, grid, s0, t, p_range);
  double margin = vmax * duration * 1.1 + 0.5;
  Grid wide = grid;
  for (int a = 0; a < grid.dim; ++a) {
    wide.ax[a].lo -= margin;
    wide.ax[a].hi += margin;
  }
  SemiConcaveFn fam = rebuild_family(u0, make_sites(wide, sites_per_axis));
  return evolve_family(model, fam, t, grid, dt, s0);
}

SolutionField variational_solution(const HamiltonianModel& model,
                                   const InitialData& u0, double t, const Grid& grid,
                                   double dt, int sites_per_axis, double s0) {
  SolutionField f =
      variational_family(model, u0, t, grid, dt, sites_per_axis, s0).min_field(
          "variational");
  f.meta["sites"] = sites_per_axis;
  return f;
}

InitialData initial_from_grid_samples(const Grid& grid,
                                      const std::vector<double>& values) {
  if (grid.dim != 1)
    throw CapabilityError("initial_from_grid_samples: d=1 only");
  DiscreteData data;
  data.xs.resize(static_cast<size_t>(grid.ax[0].count));
  for (int i = 0; i < grid.ax[0].count; ++i)
    data.xs[static_cast<size_t>(i)] = grid.ax[0].node(i);
  data.values = values;
  InitialData init;
  init.oracle = data.oracle();
  init.B = data.estimate_B();
  init.L = data.estimate_L();
  return init;
}

SolutionField iterated_variational(const HamiltonianModel& model,
                                   const InitialData& u0, double t, const Grid& grid,
                                   double dt, int k) {
  if (k < 1) throw ArgumentError("iterated_variational: k >= 1 required");
  if (grid.dim != 1) throw CapabilityError("iterated_variational: d=1 only");
  grid.validate();

  // sites: grid nodes, subsampled to at most 201 per rebuild
  int stride = std::max(1, (grid.ax[0].count - 1) / 200);
  int sites = (grid.ax[0].count - 1) / stride + 1;

  InitialData cur = u0;
  double s = 0.0;
  std::vector<double> values;
  while (s < t - 1e-12) {
    double s_next = std::min(t, s + 1.0 / k);
    SolutionField leg;
    try {
      leg = variational_solution(model, cur, s_next, grid, dt, sites, s);
    } catch (const HorizonError& e) {
      throw HorizonError(std::string(e.what()) + " (substep of iterated operator; "
                                                 "increase k)",
                         e.generator_id, e.caustic_time);
    }
    values = leg.values;
    cur = initial_from_grid_samples(grid, values);
    s = s_next;
  }
  SolutionField f;
  f.t = t;
  f.grid = grid;
  if (values.empty()) {  // t == 0: sample the initial condition directly
    values.resize(static_cast<size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i)
      values[static_cast<size_t>(i)] = u0.oracle.value(grid.node(i));
  }
  f.values = values;
  f.provenance = "iterated-k";
  f.meta["k"] = k;
  return f;
}

DualFunction legendre_concave_dual(const std::function<double(const Vec&)>& u0,
                                   const Box& x_box, const Box& p_box,
                                   int resolution) {
  const int d = x_box.dim();
  if (p_box.dim() != d) throw ArgumentError("legendre dual: box dimension mismatch");
  if (resolution < 2) throw ArgumentError("legendre dual: resolution >= 2");
  for (int a = 0; a < d; ++a)
    if (!(x_box.hi[a] > x_box.lo[a]) || !(p_box.hi[a] > p_box.lo[a]))
      throw ArgumentError("legendre dual: empty box");

  // x sampling resolution at least matches the p resolution
  const int nx = std::max(2 * resolution + 1, 401);
  DualFunction dual;
  const double drop_tol = 1e-10;

  auto x_node_1d = [&](int i) {
    return x_box.lo[0] + (x_box.hi[0] - x_box.lo[0]) * i / (nx - 1);
  };

  auto consider = [&](const Vec& p) {
    if (d == 1) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      std::vector<double> g(static_cast<size_t>(nx));
      for (int i = 0; i < nx; ++i) {
        Vec x = Vec::d1(x_node_1d(i));
        g[static_cast<size_t>(i)] = p.dot(x) - u0(x);
        if (g[static_cast<size_t>(i)] < best) {
          best = g[static_cast<size_t>(i)];
          arg = i;
        }
      }
      double scale = 1.0 + std::fabs(best);
      bool diverges = (arg == 0 && g[0] < g[1] - drop_tol * scale) ||
                      (arg == nx - 1 &&
                       g[static_cast<size_t>(nx - 1)] <
                           g[static_cast<size_t>(nx - 2)] - drop_tol * scale);
      if (!diverges) {
        dual.p_nodes.push_back(p);
        dual.values.push_back(best);
      }
      return;
    }
    // d == 2
    double best = std::numeric_limits<double>::infinity();
    int ai = 0, aj = 0;
    const int nxy = std::max(resolution, 65);
    auto gval = [&](int i, int j) {
      Vec x = Vec::d2(x_box.lo[0] + (x_box.hi[0] - x_box.lo[0]) * i / (nxy - 1),
                      x_box.lo[1] + (x_box.hi[1] - x_box.lo[1]) * j / (nxy - 1));
      return p.dot(x) - u0(x);
    };
    for (int j = 0; j < nxy; ++j)
      for (int i = 0; i < nxy; ++i) {
        double v = gval(i, j);
        if (v < best) {
          best = v;
          ai = i;
          aj = j;
        }
      }
    double scale = 1.0 + std::fabs(best);
    bool diverges = false;
    if (ai == 0 && gval(0, aj) < gval(1, aj) - drop_tol * scale) diverges = true;
    if (ai == nxy - 1 && gval(nxy - 1, aj) < gval(nxy - 2, aj) - drop_tol * scale)
      diverges = true;
    if (aj == 0 && gval(ai, 0) < gval(ai, 1) - drop_tol * scale) diverges = true;
    if (aj == nxy - 1 && gval(ai, nxy - 1) < gval(ai, nxy - 2) - drop_tol * scale)
      diverges = true;
    if (!diverges) {
      dual.p_nodes.push_back(p);
      dual.values.push_back(best);
    }
  };

  if (d == 1) {
    for (int i = 0; i < resolution; ++i)
      consider(Vec::d1(p_box.lo[0] +
                       (p_box.hi[0] - p_box.lo[0]) * i / (resolution - 1)));
  } else {
    for (int j = 0; j < resolution; ++j)
      for (int i = 0; i < resolution; ++i)
        consider(Vec::d2(
            p_box.lo[0] + (p_box.hi[0] - p_box.lo[0]) * i / (resolution - 1),
            p_box.lo[1] + (p_box.hi[1] - p_box.lo[1]) * j / (resolution - 1)));
  }
  if (dual.p_nodes.empty())
    throw EmptyDomainError("legendre dual: all p nodes dropped");
  return dual;
}

SolutionField hopf_solution(const HamiltonianModel& model, const DualFunction& dual,
                            double t, const Grid& grid) {
  grid.validate();
  if (t < 0) throw ArgumentError("hopf_solution: t >= 0 required");
  if (dual.p_nodes.empty()) throw EmptyDomainError("hopf_solution: empty dual domain");
  SolutionField f;
  f.t = t;
  f.grid = grid;
  f.provenance = "hopf";
  const int m = grid.size();
  f.values.resize(static_cast<size_t>(m));
  Vec xdummy = Vec::zero(grid.dim);
  std::vector<double> h_of_p(dual.p_nodes.size());
  for (size_t j = 0; j < dual.p_nodes.size(); ++j)
    h_of_p[j] = model.eval(0.0, xdummy, dual.p_nodes[j]);
  for (int i = 0; i < m; ++i) {
    Vec x = grid.node(i);
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < dual.p_nodes.size(); ++j)
      best = std::min(best, dual.p_nodes[j].dot(x) - dual.values[j] - t * h_of_p[j]);
    f.values[static_cast<size_t>(i)] = best;
  }
  return f;
}

SolutionField lax_oleinik(const HamiltonianModel& model,
                          const std::function<double(const Vec&)>& u0, double t,
                          const Grid& grid, double y_margin, int resolution) {
  if (model.convexity != Convexity::ConvexInP)
    throw ArgumentError("lax_oleinik: convex-in-p model required");
  if (!(t > 0)) throw ArgumentError("lax_oleinik: t > 0 required");
  if (grid.dim != 1) throw CapabilityError("lax_oleinik: d=1 only");
  grid.validate();

  const double ylo = grid.ax[0].lo - y_margin, yhi = grid.ax[0].hi + y_margin;
  const int ny = resolution;
  const double qmax = (yhi - ylo) / t + 1.0;
  const double p_range = qmax + 2.0;

  // tabulate the convex dual L*(q) = max_p (p q - H(p)) by grid maximization
  const int np = 4 * resolution + 1;
  const int nq = 4 * resolution + 1;
  Vec xd = Vec::zero(1);
  std::vector<double> lstar(static_cast<size_t>(nq));
  for (int iq = 0; iq < nq; ++iq) {
    double qv = -qmax + 2.0 * qmax * iq / (nq - 1);
    double best = -std::numeric_limits<double>::infinity();
    for (int ip = 0; ip < np; ++ip) {
      double pv = -p_range + 2.0 * p_range * ip / (np - 1);
      best = std::max(best, pv * qv - model.eval(0.0, xd, Vec::d1(pv)));
    }
    lstar[static_cast<size_t>(iq)] = best;
  }
  auto lstar_at = [&](double qv) {
    double s = (qv + qmax) * (nq - 1) / (2.0 * qmax);
    int iq = std::clamp(static_cast<int>(std::floor(s)), 0, nq - 2);
    double w = s - iq;
    return lstar[static_cast<size_t>(iq)] * (1.0 - w) +
           lstar[static_cast<size_t>(iq + 1)] * w;
  };

  SolutionField f;
  f.t = t;
  f.grid = grid;
  f.provenance = "lax-oleinik";
  const int m = grid.size();
  f.values.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    double x = grid.ax[0].node(i);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ny; ++j) {
      double y = ylo + (yhi - ylo) * j / (ny - 1);
      best = std::min(best, u0(Vec::d1(y)) + t * lstar_at((x - y) / t));
    }
    f.values[static_cast<size_t>(i)] = best;
  }
  return f;
}

SolutionField fd_viscosity_oracle(const HamiltonianModel& model,
                                  const std::vector<double>& u0_values, double t,
                                  const Grid& grid, double cfl, double s0) {
  if (grid.dim != 1) throw CapabilityError("fd_viscosity_oracle: d=1 only");
  if (!(cfl > 0) || cfl > 1) throw ArgumentError("fd_viscosity_oracle: cfl in (0,1]");
  grid.validate();
  const int n = grid.ax[0].count;
  if (static_cast<int>(u0_values.size()) != n)
    throw ArgumentError("fd_viscosity_oracle: value count mismatch");
  const double h = grid.ax[0].step();

  std::vector<double> u = u0_values, un(static_cast<size_t>(n));
  double s = s0;
  while (s < t - 1e-14) {
    // artificial viscosity >= max sampled |dH/dp| at the current slopes
    double theta = 1e-6;
    auto ghost = [&](int i) {
      if (i < 0) return 2.0 * u[0] - u[1];
      if (i >= n) return 2.0 * u[static_cast<size_t>(n - 1)] - u[static_cast<size_t>(n - 2)];
      return u[static_cast<size_t>(i)];
    };
    for (int i = 0; i < n; ++i) {
      double slope = (ghost(i + 1) - ghost(i - 1)) / (2.0 * h);
      theta = std::max(theta, model.grad_p(s, Vec::d1(grid.ax[0].node(i)),
                                           Vec::d1(slope))
                                  .norm());
    }
    double dt_step = std::min(cfl * h / theta, t - s);
    for (int i = 0; i < n; ++i) {
      double up = ghost(i + 1), um = ghost(i - 1), uc = u[static_cast<size_t>(i)];
      double slope = (up - um) / (2.0 * h);
      double visc = theta * (up - 2.0 * uc + um) / (2.0 * h);
      un[static_cast<size_t>(i)] =
          uc - dt_step * (model.eval(s, Vec::d1(grid.ax[0].node(i)), Vec::d1(slope)) -
                          visc);
      if (!std::isfinite(un[static_cast<size_t>(i)]) ||
          std::fabs(un[static_cast<size_t>(i)]) > 1e12)
        throw StabilityError("fd_viscosity_oracle: value overflow at t=" +
                             std::to_string(s));
    }
    u.swap(un);
    s += dt_step;
  }

  SolutionField f;
  f.t = t;
  f.grid = grid;
  f.provenance = "fd-oracle";
  f.meta["cfl"] = cfl;
  f.values = u;
  return f;
}

namespace {

int ordering_rank(const std::string& provenance) {
  if (provenance == "fd-oracle" || provenance == "iterated-k" ||
      provenance == "hopf" || provenance == "lax-oleinik")
    return 0;  // viscosity level
  if (provenance == "variational") return 1;
  if (provenance == "inf-family") return 2;
  return -1;
}

}  // namespace

OrderingReport compare_solutions(const std::vector<SolutionField>& fields,
                                 double tol) {
  if (fields.size() < 2)
    throw ArgumentError("compare_solutions: need at least two fields");
  for (size_t i = 1; i < fields.size(); ++i) {
    if (!fields[i].grid.same_as(fields[0].grid) ||
        std::fabs(fields[i].t - fields[0].t) > 1e-12)
      throw ArgumentError("compare_solutions: grid or time mismatch");
  }
  OrderingReport rep;
  rep.tol = tol;
  for (size_t i = 0; i < fields.size(); ++i)
    for (size_t j = i + 1; j < fields.size(); ++j) {
      int ri = ordering_rank(fields[i].provenance);
      int rj = ordering_rank(fields[j].provenance);
      const SolutionField* lo = &fields[i];
      const SolutionField* hi = &fields[j];
      bool ordered = ri >= 0 && rj >= 0 && ri != rj;
      if (ordered && ri > rj) std::swap(lo, hi);
      OrderingPair pair;
      pair.lower = lo->provenance;
      pair.upper = hi->provenance;
      double viol = -std::numeric_limits<double>::infinity();
      double diff = 0.0;
      for (size_t kk = 0; kk < lo->values.size(); ++kk) {
        viol = std::max(viol, lo->values[kk] - hi->values[kk]);
        diff = std::max(diff, std::fabs(lo->values[kk] - hi->values[kk]));
      }
      pair.max_violation = ordered ? std::max(viol, 0.0) : 0.0;
      pair.max_abs_diff = diff;
      if (pair.max_violation > tol) rep.pass = false;
      rep.pairs.push_back(pair);
    }
  return rep;
}

SemigroupReport semigroup_inequality_check(const HamiltonianModel& model,
                                           const InitialData& u0, double s0, double s1,
                                           double s2, const Grid& grid, double dt,
                                           int sites_per_axis) {
  if (!(s0 <= s1 && s1 <= s2))
    throw ArgumentError("semigroup check: need s0 <= s1 <= s2");
  SolutionField right =
      variational_solution(model, u0, s2, grid, dt, sites_per_axis, s0);
  SolutionField left = right;
  if (s1 > s0 + 1e-15 && s2 > s1 + 1e-15) {
    SolutionField leg1 =
        variational_solution(model, u0, s1, grid, dt, sites_per_axis, s0);
    InitialData mid = initial_from_grid_samples(grid, leg1.values);
    left = variational_solution(model, mid, s2, grid, dt, sites_per_axis, s1);
  }
  SemigroupReport rep;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < left.values.size(); ++i) {
    double d = left.values[i] - right.values[i];
    rep.max_violation = std::max(rep.max_violation, d);
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::fabs(d));
  }
  rep.max_violation = std::max(rep.max_violation, 0.0);
  return rep;
}

}  // namespace hjlab
