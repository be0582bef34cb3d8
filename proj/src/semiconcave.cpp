#include "hjlab/semiconcave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hjlab {

double Generator::value(const Vec& x) const {
  switch (kind) {
    case GenKind::Affine:
      return c + p.dot(x - x0);
    case GenKind::PhiCap:
      return c + p.dot(x - x0) + profile->phi(dist(x, x0));
    case GenKind::Analytic:
      return fn(x);
  }
  return 0.0;
}

Vec Generator::gradient(const Vec& x) const {
  switch (kind) {
    case GenKind::Affine:
      return p;
    case GenKind::PhiCap: {
      Vec d = x - x0;
      double r = d.norm();
      if (r == 0.0) return p;  // phi'(0) = 0
      return p + (profile->Psi(r) / r) * d;
    }
    case GenKind::Analytic:
      return grad_fn(x);
  }
  return p;
}

Generator Generator::affine(const Vec& slope, double offset) {
  Generator g;
  g.kind = GenKind::Affine;
  g.x0 = Vec::zero(slope.dim);
  g.p = slope;
  g.c = -offset;
  return g;
}

Generator Generator::phi_cap(const Vec& x0, const Vec& p, double value_at_x0,
                             std::shared_ptr<const PhiProfile> profile) {
  Generator g;
  g.kind = GenKind::PhiCap;
  g.x0 = x0;
  g.p = p;
  g.c = value_at_x0;
  g.profile = std::move(profile);
  return g;
}

Generator Generator::analytic(std::function<double(const Vec&)> fn,
                              std::function<Vec(const Vec&)> grad_fn) {
  Generator g;
  g.kind = GenKind::Analytic;
  g.fn = std::move(fn);
  g.grad_fn = std::move(grad_fn);
  return g;
}

double SemiConcaveFn::value(const Vec& x) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& g : generators) m = std::min(m, g.value(x));
  return m;
}

std::pair<double, std::vector<int>> SemiConcaveFn::eval_min(const Vec& x) const {
  const double activation_tol = 1e-9;
  double m = std::numeric_limits<double>::infinity();
  std::vector<double> vals(generators.size());
  for (size_t i = 0; i < generators.size(); ++i) {
    vals[i] = generators[i].value(x);
    m = std::min(m, vals[i]);
  }
  std::vector<int> active;
  for (size_t i = 0; i < generators.size(); ++i)
    if (vals[i] <= m + activation_tol) active.push_back(static_cast<int>(i));
  return {m, active};
}

SuperDifferential make_superdifferential(std::vector<std::pair<double, Vec>> samples,
                                         int dim, double cluster_tol) {
  if (cluster_tol <= 0) throw ArgumentError("superdifferential: cluster_tol > 0");
  SuperDifferential sd;
  sd.dim = dim;
  // merge gradients closer than cluster_tol (first representative wins)
  for (auto& s : samples) {
    bool merged = false;
    for (auto& v : sd.vertices)
      if (dist(v.second, s.second) <= cluster_tol) {
        merged = true;
        break;
      }
    if (!merged) sd.vertices.push_back(s);
  }

  // spatial hull
  if (dim == 1) {
    double lo = sd.vertices.front().second[0], hi = lo;
    for (auto& v : sd.vertices) {
      lo = std::min(lo, v.second[0]);
      hi = std::max(hi, v.second[0]);
    }
    sd.hull = {Vec::d1(lo), Vec::d1(hi)};
    if (hi == lo) sd.hull.resize(1);
  } else {
    std::vector<std::array<double, 2>> pts;
    for (auto& v : sd.vertices) pts.push_back({v.second[0], v.second[1]});
    for (int i : convex_hull_2d(pts))
      sd.hull.push_back(sd.vertices[static_cast<size_t>(i)].second);
  }

  // extreme points of the lifted (eta, p) set
  std::vector<std::vector<double>> lifted;
  for (auto& v : sd.vertices) {
    std::vector<double> q{v.first, v.second[0]};
    if (dim == 2) q.push_back(v.second[1]);
    lifted.push_back(q);
  }
  sd.extreme = extreme_point_flags(lifted, cluster_tol);
  return sd;
}

SuperDifferential superdifferential(const SemiConcaveFn& fn, const Vec& x,
                                    double cluster_tol) {
  auto [m, active] = fn.eval_min(x);
  (void)m;
  std::vector<std::pair<double, Vec>> samples;
  for (int id : active)
    samples.emplace_back(0.0, fn.generators[static_cast<size_t>(id)].gradient(x));
  return make_superdifferential(std::move(samples), x.dim, cluster_tol);
}

SemiConcaveFn build_family_f0(const SupergradientOracle& u,
                              const std::vector<Vec>& sites, double B, double L) {
  if (sites.empty()) throw ArgumentError("build_family_f0: empty site set");
  auto profile = std::make_shared<const PhiProfile>(build_phi(B, L));
  SemiConcaveFn fam;
  fam.B = B;
  fam.L = L;
  for (const Vec& x0 : sites) {
    double v0 = u.value(x0);
    auto grads = u.supergradients(x0);
    if (grads.empty())
      throw ArgumentError("build_family_f0: site without supergradient");
    for (const Vec& p : grads) {
      Generator g = Generator::phi_cap(x0, p, v0, profile);
      g.id = static_cast<int>(fam.generators.size());
      fam.generators.push_back(std::move(g));
    }
  }
  return fam;
}

SupergradientOracle DiscreteData::oracle() const {
  auto xs_c = xs;
  auto vs_c = values;
  SupergradientOracle o;
  o.value = [xs_c, vs_c](const Vec& x) {
    double q = x[0];
    size_t n = xs_c.size();
    if (q <= xs_c.front()) {
      double s = (vs_c[1] - vs_c[0]) / (xs_c[1] - xs_c[0]);
      return vs_c[0] + s * (q - xs_c[0]);
    }
    if (q >= xs_c.back()) {
      double s = (vs_c[n - 1] - vs_c[n - 2]) / (xs_c[n - 1] - xs_c[n - 2]);
      return vs_c[n - 1] + s * (q - xs_c[n - 1]);
    }
    auto it = std::upper_bound(xs_c.begin(), xs_c.end(), q);
    size_t i = static_cast<size_t>(it - xs_c.begin()) - 1;
    double w = (q - xs_c[i]) / (xs_c[i + 1] - xs_c[i]);
    return vs_c[i] + w * (vs_c[i + 1] - vs_c[i]);
  };
  o.supergradients = [xs_c, vs_c](const Vec& x) {
    double q = x[0];
    size_t n = xs_c.size();
    auto slope = [&](size_t seg) {
      return (vs_c[seg + 1] - vs_c[seg]) / (xs_c[seg + 1] - xs_c[seg]);
    };
    // nearest node, if the query sits on one
    size_t node = n;
    for (size_t j = 0; j < n; ++j)
      if (std::fabs(q - xs_c[j]) <= 1e-9) {
        node = j;
        break;
      }
    if (node == n) {  // interior of a segment (or beyond the ends): one slope
      size_t seg = 0;
      while (seg + 2 < n && xs_c[seg + 1] < q) ++seg;
      return std::vector<Vec>{Vec::d1(slope(seg))};
    }
    double right = node + 1 < n ? slope(node) : slope(n - 2);
    double left = node > 0 ? slope(node - 1) : right;
    double lo = std::min(left, right), hi = std::max(left, right);
    std::vector<Vec> out{Vec::d1(lo)};
    if (hi - lo > 1e-12) {
      out.push_back(Vec::d1(0.5 * (lo + hi)));
      out.push_back(Vec::d1(hi));
    }
    return out;
  };
  return o;
}

double DiscreteData::estimate_B() const {
  double b = 0.0;
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    double h1 = xs[i] - xs[i - 1], h2 = xs[i + 1] - xs[i];
    double second = 2.0 *
                    (h1 * values[i + 1] - (h1 + h2) * values[i] + h2 * values[i - 1]) /
                    (h1 * h2 * (h1 + h2));
    b = std::max(b, second);
  }
  return std::clamp(b, 1e-6, 1e3);
}

double DiscreteData::estimate_L() const {
  double l = 0.0;
  for (size_t i = 1; i < xs.size(); ++i)
    l = std::max(l, std::fabs((values[i] - values[i - 1]) / (xs[i] - xs[i - 1])));
  return std::clamp(l, 1e-6, 1e3);
}

}  // namespace hjlab
