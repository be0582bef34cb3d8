#include "hjlab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hjlab {

double HamiltonianModel::operator()(double t, const Vec& x, const Vec& p) const {
  return eval(t, x, p);
}

double eval_h(const HamiltonianModel& model, double t, const Vec& x, const Vec& p) {
  if (x.dim != model.dim || p.dim != model.dim)
    throw ArgumentError("eval_h: dimension mismatch");
  return model.eval(t, x, p);
}

namespace {

std::vector<double> parse_coeffs(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  if (out.empty()) throw ArgumentError("poly: empty coefficient list");
  return out;
}

double poly_eval(const std::vector<double>& c, double p) {
  double v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

// A for a p-only Hamiltonian, sampled on |p| <= 8.
double estimate_bound_a(const std::function<double(double)>& h,
                        const std::function<double(double)>& dh,
                        const std::function<double(double)>& d2h) {
  double a = 0.0;
  for (int i = 0; i <= 400; ++i) {
    double p = -8.0 + i * 0.04;
    a = std::max(a, std::fabs(h(p)) / ((1.0 + std::fabs(p)) * (1.0 + std::fabs(p))));
    a = std::max(a, std::fabs(dh(p)) / (1.0 + std::fabs(p)));
    a = std::max(a, std::fabs(d2h(p)));
  }
  return a;
}

HamiltonianModel p_only_model(const std::string& id, int dim,
                              std::function<double(const Vec&)> h,
                              std::function<Vec(const Vec&)> dh, double bound_a,
                              Convexity conv, bool smooth = true) {
  HamiltonianModel m;
  m.id = id;
  m.dim = dim;
  m.eval = [h](double, const Vec&, const Vec& p) { return h(p); };
  m.grad_x = [dim](double, const Vec&, const Vec&) { return Vec::zero(dim); };
  m.grad_p = [dh](double, const Vec&, const Vec& p) { return dh(p); };
  m.bound_A = bound_a;
  m.convexity = conv;
  m.smooth = smooth;
  return m;
}

}  // namespace

HamiltonianModel make_model(const std::string& id, int dim) {
  if (id == "quadratic") {
    int d = dim == 0 ? 1 : dim;
    return p_only_model(
        id, d, [](const Vec& p) { return 0.5 * p.norm2(); },
        [](const Vec& p) { return p; }, 1.0, Convexity::ConvexInP);
  }
  if (id == "neg-quadratic") {
    int d = dim == 0 ? 1 : dim;
    return p_only_model(
        id, d, [](const Vec& p) { return -0.5 * p.norm2(); },
        [](const Vec& p) { return -1.0 * p; }, 1.0, Convexity::ConcaveInP);
  }
  if (id == "rel-kinetic") {
    int d = dim == 0 ? 1 : dim;
    return p_only_model(
        id, d, [](const Vec& p) { return std::sqrt(1.0 + p.norm2()); },
        [](const Vec& p) { return (1.0 / std::sqrt(1.0 + p.norm2())) * p; }, 1.0,
        Convexity::ConvexInP);
  }
  if (id == "saddle") {
    if (dim == 1) throw ArgumentError("saddle: d=2 only");
    return p_only_model(
        id, 2, [](const Vec& p) { return 0.5 * (p[0] * p[0] - p[1] * p[1]); },
        [](const Vec& p) { return Vec::d2(p[0], -p[1]); }, 1.0,
        Convexity::Nonconvex);
  }
  if (id == "abs") {
    // continuous only; gradients are a.e. values, usable by Hopf and
    // entropy paths which never differentiate through the kink
    int d = dim == 0 ? 1 : dim;
    return p_only_model(
        id, d, [](const Vec& p) { return p.norm(); },
        [](const Vec& p) {
          double n = p.norm();
          return n > 0 ? (1.0 / n) * p : Vec::zero(p.dim);
        },
        1.0, Convexity::ConvexInP, /*smooth=*/false);
  }
  if (id.rfind("poly:", 0) == 0) {
    if (dim == 2) throw ArgumentError("poly: d=1 only");
    auto c = parse_coeffs(id.substr(5));
    auto dc = poly_derive(c);
    auto d2c = poly_derive(dc);
    double a = estimate_bound_a([c](double p) { return poly_eval(c, p); },
                                [dc](double p) { return poly_eval(dc, p); },
                                [d2c](double p) { return poly_eval(d2c, p); });
    Convexity conv = Convexity::Unknown;
    bool always_up = true, always_down = true;
    for (int i = 0; i <= 100; ++i) {
      double v = poly_eval(d2c, -5.0 + 0.1 * i);
      always_up = always_up && v >= 0.0;
      always_down = always_down && v <= 0.0;
    }
    if (always_up) conv = Convexity::ConvexInP;
    else if (always_down) conv = Convexity::ConcaveInP;
    else conv = Convexity::Nonconvex;
    return p_only_model(
        id, 1, [c](const Vec& p) { return poly_eval(c, p[0]); },
        [dc](const Vec& p) { return Vec::d1(poly_eval(dc, p[0])); }, a, conv);
  }
  throw ArgumentError("unknown hamiltonian id: " + id);
}

std::vector<std::string> model_ids() {
  return {"abs", "neg-quadratic", "poly:<coeff list>", "quadratic", "rel-kinetic",
          "saddle"};
}

BoundsReport check_hypothesis1(const HamiltonianModel& model, const BoundsBox& box,
                               int samples) {
  if (samples < 2) throw ArgumentError("check_hypothesis1: samples >= 2 required");
  const int d = model.dim;
  if (box.x.dim() != d || box.p.dim() != d)
    throw ArgumentError("check_hypothesis1: box dimension mismatch");
  if (!(box.t1 > box.t0)) throw ArgumentError("check_hypothesis1: degenerate t box");
  for (int i = 0; i < d; ++i)
    if (!(box.x.hi[i] > box.x.lo[i]) || !(box.p.hi[i] > box.p.lo[i]))
      throw ArgumentError("check_hypothesis1: degenerate box");

  BoundsReport rep;
  const double h = 1e-3;  // finite-difference step for second derivatives
  const int nvar = 1 + 2 * d;
  auto coord_step = [&](double t, Vec x, Vec p, int var, double dh) {
    if (var == 0) t += dh;
    else if (var <= d) x[var - 1] += dh;
    else p[var - d - 1] += dh;
    return model.eval(t, x, p);
  };

  auto visit = [&](double t, const Vec& x, const Vec& p) {
    double hv = std::fabs(model.eval(t, x, p));
    double pn = p.norm();
    rep.max_h_ratio = std::max(rep.max_h_ratio, hv / ((1 + pn) * (1 + pn)));
    Vec gx = model.grad_x(t, x, p), gp = model.grad_p(t, x, p);
    double dh = std::sqrt(gx.norm2() + gp.norm2());
    rep.max_dh_ratio = std::max(rep.max_dh_ratio, dh / (1 + pn));
    // max-abs entry of the finite-difference Hessian over all variables
    double center = model.eval(t, x, p);
    for (int a = 0; a < nvar; ++a) {
      double second = (coord_step(t, x, p, a, h) - 2 * center +
                       coord_step(t, x, p, a, -h)) /
                      (h * h);
      rep.max_d2h = std::max(rep.max_d2h, std::fabs(second));
      for (int b = a + 1; b < nvar; ++b) {
        Vec xp = x, pp = p;
        double tp = t;
        auto bump = [&](int var, double dd, double& tt, Vec& xx, Vec& qq) {
          if (var == 0) tt += dd;
          else if (var <= d) xx[var - 1] += dd;
          else qq[var - d - 1] += dd;
        };
        double vals[4];
        int s = 0;
        for (int sa : {+1, -1})
          for (int sb : {+1, -1}) {
            tp = t;
            xp = x;
            pp = p;
            bump(a, sa * h, tp, xp, pp);
            bump(b, sb * h, tp, xp, pp);
            vals[s++] = model.eval(tp, xp, pp);
          }
        double mixed = (vals[0] - vals[1] - vals[2] + vals[3]) / (4 * h * h);
        rep.max_d2h = std::max(rep.max_d2h, std::fabs(mixed));
      }
    }
  };

  for (int it = 0; it < samples; ++it) {
    double t = box.t0 + (box.t1 - box.t0) * it / (samples - 1);
    for (int ix = 0; ix < samples; ++ix)
      for (int iy = 0; iy < (d == 2 ? samples : 1); ++iy) {
        Vec x = Vec::zero(d);
        x[0] = box.x.lo[0] + (box.x.hi[0] - box.x.lo[0]) * ix / (samples - 1);
        if (d == 2)
          x[1] = box.x.lo[1] + (box.x.hi[1] - box.x.lo[1]) * iy / (samples - 1);
        for (int jp = 0; jp < samples; ++jp)
          for (int jq = 0; jq < (d == 2 ? samples : 1); ++jq) {
            Vec p = Vec::zero(d);
            p[0] = box.p.lo[0] + (box.p.hi[0] - box.p.lo[0]) * jp / (samples - 1);
            if (d == 2)
              p[1] = box.p.lo[1] + (box.p.hi[1] - box.p.lo[1]) * jq / (samples - 1);
            visit(t, x, p);
          }
      }
  }

  double bound = model.bound_A * rep.slack;
  rep.pass = rep.max_h_ratio <= bound && rep.max_dh_ratio <= bound &&
             rep.max_d2h <= bound;
  return rep;
}

}  // namespace hjlab
