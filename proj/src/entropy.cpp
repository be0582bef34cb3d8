#include "hjlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hjlab {

namespace {

// chord value at p between two points, or NaN if p is outside the segment
double pair_value(const EnvelopePoint& a, const EnvelopePoint& b, const Vec& p) {
  Vec d = b.p - a.p;
  double len2 = d.norm2();
  if (len2 < 1e-24) return std::numeric_limits<double>::quiet_NaN();
  double w = (p - a.p).dot(d) / len2;
  if (w < -1e-9 || w > 1.0 + 1e-9) return std::numeric_limits<double>::quiet_NaN();
  // p must actually lie on the segment, not just project onto it
  Vec foot = a.p + w * d;
  if (dist(foot, p) > 1e-9 * (1.0 + std::sqrt(len2)))
    return std::numeric_limits<double>::quiet_NaN();
  return a.h + w * (b.h - a.h);
}

}  // namespace

double envelope_value(const EnvelopeQuery& q) {
  if (q.points.empty()) throw ArgumentError("envelope_value: empty point set");
  const int d = q.p.dim;
  const bool convex = q.mode == EnvelopeMode::Convex;
  double best = std::numeric_limits<double>::quiet_NaN();
  auto take = [&](double v) {
    if (std::isnan(v)) return;
    if (std::isnan(best) || (convex ? v < best : v > best)) best = v;
  };

  for (const auto& pt : q.points)
    if (dist(pt.p, q.p) <= 1e-9) take(pt.h);

  for (size_t i = 0; i < q.points.size(); ++i)
    for (size_t j = i + 1; j < q.points.size(); ++j)
      take(pair_value(q.points[i], q.points[j], q.p));

  if (d == 2) {
    for (size_t i = 0; i < q.points.size(); ++i)
      for (size_t j = i + 1; j < q.points.size(); ++j)
        for (size_t k = j + 1; k < q.points.size(); ++k) {
          const Vec &a = q.points[i].p, &b = q.points[j].p, &c = q.points[k].p;
          double d00 = b[0] - a[0], d01 = c[0] - a[0];
          double d10 = b[1] - a[1], d11 = c[1] - a[1];
          double det = d00 * d11 - d01 * d10;
          if (std::fabs(det) < 1e-14) continue;
          double x = q.p[0] - a[0], y = q.p[1] - a[1];
          double a1 = (x * d11 - y * d01) / det;
          double a2 = (-x * d10 + y * d00) / det;
          double a0 = 1.0 - a1 - a2;
          if (a0 < -1e-9 || a1 < -1e-9 || a2 < -1e-9) continue;
          take(a0 * q.points[i].h + a1 * q.points[j].h + a2 * q.points[k].h);
        }
  }

  if (std::isnan(best))
    throw InfeasibleError("envelope_value: query point outside the hull");
  return best;
}

std::vector<Vec> extreme_spatial_gradients(const SuperDifferential& sd,
                                           double cluster_tol) {
  std::vector<Vec> out;
  for (size_t i = 0; i < sd.vertices.size(); ++i) {
    if (i < sd.extreme.size() && !sd.extreme[i]) continue;
    const Vec& p = sd.vertices[i].second;
    bool dup = false;
    for (const auto& q : out)
      if (dist(q, p) <= cluster_tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(p);
  }
  return out;
}

namespace {

std::vector<Vec> hull_samples(const std::vector<Vec>& extreme, int density) {
  std::vector<Vec> samples;
  if (extreme.empty()) return samples;
  const int d = extreme.front().dim;
  if (d == 1) {
    double lo = extreme.front()[0], hi = lo;
    for (const auto& p : extreme) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    for (int i = 0; i < density; ++i)
      samples.push_back(Vec::d1(lo + (hi - lo) * i / (density - 1)));
    return samples;
  }
  // d == 2: fan triangulation of the hull of the extreme set, barycentric grid
  std::vector<std::array<double, 2>> pts;
  for (const auto& p : extreme) pts.push_back({p[0], p[1]});
  std::vector<int> hull = convex_hull_2d(pts);
  if (hull.size() == 1) {
    samples.push_back(extreme[static_cast<size_t>(hull[0])]);
    return samples;
  }
  if (hull.size() == 2) {
    Vec a = extreme[static_cast<size_t>(hull[0])];
    Vec b = extreme[static_cast<size_t>(hull[1])];
    for (int i = 0; i < density; ++i) {
      double w = static_cast<double>(i) / (density - 1);
      samples.push_back(a + w * (b - a));
    }
    return samples;
  }
  Vec a = extreme[static_cast<size_t>(hull[0])];
  for (size_t k = 1; k + 1 < hull.size(); ++k) {
    Vec b = extreme[static_cast<size_t>(hull[k])];
    Vec c = extreme[static_cast<size_t>(hull[k + 1])];
    for (int i = 0; i < density; ++i)
      for (int j = 0; j < density - i; ++j) {
        double u = static_cast<double>(i) / (density - 1);
        double v = static_cast<double>(j) / (density - 1);
        samples.push_back(a + u * (b - a) + v * (c - a));
      }
  }
  return samples;
}

}  // namespace

EntropyReport check_entropy_at(const HamiltonianModel& model, double t, const Vec& x,
                               const SuperDifferential& sd, EnvelopeMode mode,
                               int sample_density, double tol) {
  if (sample_density < 2) throw ArgumentError("check_entropy_at: density >= 2");
  EntropyReport rep;
  rep.t = t;
  rep.x = x;
  rep.mode = mode;
  rep.extreme_gradients = extreme_spatial_gradients(sd);
  if (rep.extreme_gradients.size() < 2) {
    rep.vacuous = true;
    return rep;
  }

  EnvelopeQuery q;
  q.mode = mode;
  for (const auto& p : rep.extreme_gradients)
    q.points.push_back({p, model.eval(t, x, p)});

  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const Vec& p : hull_samples(rep.extreme_gradients, sample_density)) {
    q.p = p;
    double env;
    try {
      env = envelope_value(q);
    } catch (const InfeasibleError&) {
      continue;  // rounding pushed the sample just outside the hull
    }
    double margin = env - model.eval(t, x, p);
    rep.samples.push_back({p, margin});
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_p = p;
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

TwoBranchReport check_two_branch(const HamiltonianModel& model, double t, const Vec& x,
                                 const Vec& p_minus, const Vec& p_plus, int s_samples,
                                 double tol) {
  if (dist(p_minus, p_plus) <= 1e-12)
    throw ArgumentError("check_two_branch: p_minus == p_plus");
  if (s_samples < 2) throw ArgumentError("check_two_branch: s_samples >= 2");
  double hm = model.eval(t, x, p_minus);
  double hp = model.eval(t, x, p_plus);
  TwoBranchReport rep;
  rep.worst_violation = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < s_samples; ++i) {
    double s = static_cast<double>(i) / (s_samples - 1);
    Vec p = s * p_minus + (1.0 - s) * p_plus;
    double viol = model.eval(t, x, p) - (s * hm + (1.0 - s) * hp);
    if (viol > rep.worst_violation) {
      rep.worst_violation = viol;
      rep.worst_s = s;
    }
  }
  rep.pass = rep.worst_violation <= tol;
  return rep;
}

ShockClassification classify_shock_d1(const HamiltonianModel& model, double p_minus,
                                      double p_plus, double tol) {
  if (model.dim != 1) throw ArgumentError("classify_shock_d1: d=1 model required");
  if (p_minus < p_plus)
    throw ArgumentError("classify_shock_d1: requires p_minus >= p_plus");
  if (p_minus - p_plus <= 1e-12)
    throw ArgumentError("classify_shock_d1: degenerate jump");
  Vec x = Vec::d1(0.0);
  ShockClassification out;
  out.speed = (model.eval(0.0, x, Vec::d1(p_minus)) -
               model.eval(0.0, x, Vec::d1(p_plus))) /
              (p_minus - p_plus);
  out.chord =
      check_two_branch(model, 0.0, x, Vec::d1(p_minus), Vec::d1(p_plus), 65, tol);
  out.admissible = out.chord.pass;
  return out;
}

FieldEntropyScan scan_field(const HamiltonianModel& model, const FamilyEvolution& fe,
                            EnvelopeMode mode, double tol, int sample_density,
                            double cluster_tol) {
  FieldEntropyScan scan;
  scan.worst_margin = std::numeric_limits<double>::infinity();
  const int m = fe.grid.size();
  for (int node = 0; node < m; ++node) {
    SuperDifferential sd = fe.superdiff_at(model, node, cluster_tol);
    EntropyReport rep =
        check_entropy_at(model, fe.t, fe.grid.node(node), sd, mode, sample_density, tol);
    if (rep.vacuous) continue;
    if (!rep.pass) scan.pass = false;
    scan.worst_margin = std::min(scan.worst_margin, rep.worst_margin);
    scan.reports.push_back(std::move(rep));
  }
  if (scan.reports.empty()) scan.worst_margin = 0.0;
  return scan;
}

namespace {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string vec_json(const Vec& v) {
  std::string s = "[" + fmt_real(v[0]);
  if (v.dim == 2) s += "," + fmt_real(v[1]);
  return s + "]";
}

}  // namespace

std::string entropy_scan_to_json(const FieldEntropyScan& scan) {
  std::ostringstream os;
  os << "{\n  \"pass\": " << (scan.pass ? "true" : "false")
     << ",\n  \"worst_margin\": " << fmt_real(scan.worst_margin)
     << ",\n  \"reports\": [";
  for (size_t i = 0; i < scan.reports.size(); ++i) {
    const auto& r = scan.reports[i];
    os << (i ? ",\n    {" : "\n    {");
    os << "\"t\": " << fmt_real(r.t) << ", \"x\": " << vec_json(r.x)
       << ", \"mode\": \"" << (r.mode == EnvelopeMode::Convex ? "convex" : "concave")
       << "\", \"pass\": " << (r.pass ? "true" : "false")
       << ", \"worst_margin\": " << fmt_real(r.worst_margin)
       << ", \"worst_p\": " << vec_json(r.worst_p) << ", \"extreme_gradients\": [";
    for (size_t j = 0; j < r.extreme_gradients.size(); ++j)
      os << (j ? "," : "") << vec_json(r.extreme_gradients[j]);
    os << "]}";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

}  // namespace hjlab
