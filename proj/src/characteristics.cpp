#include "hjlab/characteristics.hpp"

#include <algorithm>
#include <cmath>

namespace hjlab {

LaunchGrid LaunchGrid::uniform_1d(double lo, double hi, int count) {
  LaunchGrid g;
  g.dim = 1;
  g.xs.resize(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    g.xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return g;
}

LaunchGrid LaunchGrid::uniform_2d(double lox, double hix, int nx, double loy,
                                  double hiy, int ny) {
  LaunchGrid g;
  g.dim = 2;
  g.xs.resize(static_cast<size_t>(nx));
  g.ys.resize(static_cast<size_t>(ny));
  for (int i = 0; i < nx; ++i)
    g.xs[static_cast<size_t>(i)] = lox + (hix - lox) * i / (nx - 1);
  for (int j = 0; j < ny; ++j)
    g.ys[static_cast<size_t>(j)] = loy + (hiy - loy) * j / (ny - 1);
  return g;
}

namespace {

struct Deriv {
  Vec qd, pd;
  double ad;
};

Deriv rhs(const HamiltonianModel& m, double t, const Vec& q, const Vec& p) {
  Deriv d;
  d.qd = m.grad_p(t, q, p);
  d.pd = -1.0 * m.grad_x(t, q, p);
  d.ad = p.dot(d.qd) - m.eval(t, q, p);
  return d;
}

}  // namespace

CharacteristicArc integrate_hs(const HamiltonianModel& model, const PhaseState& s0,
                               double t0, double t1, double dt, double f0) {
  if (!(dt > 0)) throw ArgumentError("integrate_hs: dt > 0 required");
  if (!(t1 > t0)) throw ArgumentError("integrate_hs: t1 > t0 required");
  if (s0.q.dim != model.dim || s0.p.dim != model.dim)
    throw ArgumentError("integrate_hs: dimension mismatch");

  CharacteristicArc arc;
  arc.times.push_back(t0);
  arc.states.push_back(s0);
  arc.action.push_back(f0);

  Vec q = s0.q, p = s0.p;
  double a = f0, t = t0;
  while (t < t1 - 1e-15) {
    double h = std::min(dt, t1 - t);
    Deriv k1 = rhs(model, t, q, p);
    Deriv k2 = rhs(model, t + 0.5 * h, q + 0.5 * h * k1.qd, p + 0.5 * h * k1.pd);
    Deriv k3 = rhs(model, t + 0.5 * h, q + 0.5 * h * k2.qd, p + 0.5 * h * k2.pd);
    Deriv k4 = rhs(model, t + h, q + h * k3.qd, p + h * k3.pd);
    q += (h / 6.0) * (k1.qd + 2.0 * k2.qd + 2.0 * k3.qd + k4.qd);
    p += (h / 6.0) * (k1.pd + 2.0 * k2.pd + 2.0 * k3.pd + k4.pd);
    a += (h / 6.0) * (k1.ad + 2.0 * (k2.ad + k3.ad) + k4.ad);
    t += h;
    if (!q.finite() || !p.finite() || !std::isfinite(a))
      throw BlowupError("integrate_hs: non-finite state", arc.times.back());
    arc.times.push_back(t);
    arc.states.push_back({q, p});
    arc.action.push_back(a);
  }
  return arc;
}

SolutionPatch evolve_generator(const HamiltonianModel& model, const Generator& gen,
                               const LaunchGrid& launch, double t, double dt,
                               double t0) {
  if (launch.size() == 0) throw ArgumentError("evolve_generator: empty launch grid");
  SolutionPatch patch;
  patch.generator_id = gen.id;
  patch.launch = launch;
  patch.arcs.reserve(static_cast<size_t>(launch.size()));
  for (int i = 0; i < launch.size(); ++i) {
    Vec x0 = launch.point(i);
    PhaseState s0{x0, gen.gradient(x0)};
    if (t <= t0 + 1e-15) {  // identity: hold the launch state
      CharacteristicArc arc;
      arc.times.push_back(t0);
      arc.states.push_back(s0);
      arc.action.push_back(gen.value(x0));
      patch.arcs.push_back(std::move(arc));
    } else {
      patch.arcs.push_back(integrate_hs(model, s0, t0, t, dt, gen.value(x0)));
    }
  }
  patch.caustic_time = caustic_time(patch);
  return patch;
}

namespace {

// per-cell Jacobian determinants of launch -> q at a stored step
std::vector<double> cell_jacobians(const SolutionPatch& patch, size_t step) {
  const auto& lg = patch.launch;
  std::vector<double> dets;
  if (lg.dim == 1) {
    for (size_t i = 0; i + 1 < lg.xs.size(); ++i) {
      double dq = patch.arcs[i + 1].states[step].q[0] -
                  patch.arcs[i].states[step].q[0];
      dets.push_back(dq / (lg.xs[i + 1] - lg.xs[i]));
    }
  } else {
    size_t nx = lg.xs.size(), ny = lg.ys.size();
    auto q_at = [&](size_t i, size_t j) { return patch.arcs[j * nx + i].states[step].q; };
    for (size_t j = 0; j + 1 < ny; ++j)
      for (size_t i = 0; i + 1 < nx; ++i) {
        double hx = lg.xs[i + 1] - lg.xs[i], hy = lg.ys[j + 1] - lg.ys[j];
        Vec dqx = q_at(i + 1, j) - q_at(i, j);
        Vec dqy = q_at(i, j + 1) - q_at(i, j);
        dets.push_back((dqx[0] / hx) * (dqy[1] / hy) - (dqx[1] / hx) * (dqy[0] / hy));
      }
  }
  return dets;
}

}  // namespace

double caustic_time(const SolutionPatch& patch) {
  const double threshold = 1e-6;
  const auto& lg = patch.launch;
  if (static_cast<int>(lg.xs.size()) < 2 || (lg.dim == 2 && lg.ys.size() < 2))
    throw ArgumentError("caustic_time: need >= 2 launch points per axis");

  std::vector<double> det0 = cell_jacobians(patch, 0);
  size_t steps = patch.arcs.front().times.size();
  double prev_ratio = 1.0;
  for (size_t s = 1; s < steps; ++s) {
    std::vector<double> det = cell_jacobians(patch, s);
    double ratio = std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < det.size(); ++c)
      ratio = std::min(ratio, det[c] / det0[c]);
    if (ratio < threshold) {
      double t_prev = patch.arcs.front().times[s - 1];
      double t_cur = patch.arcs.front().times[s];
      double w = (prev_ratio - threshold) / std::max(prev_ratio - ratio, 1e-300);
      return t_prev + w * (t_cur - t_prev);
    }
    prev_ratio = ratio;
  }
  return std::numeric_limits<double>::infinity();
}

double lipschitz_bound(double L0, double A, double t) {
  if (L0 < 0 || A < 0 || t < 0)
    throw ArgumentError("lipschitz_bound: nonnegative arguments required");
  return (L0 + 1.0) * std::exp(A * t) - 1.0;
}

}  // namespace hjlab
