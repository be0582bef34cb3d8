// Acceptance suite: one line of output per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hjlab/entropy.hpp"
#include "hjlab/scenario.hpp"
#include "hjlab/solvers.hpp"
#include "oracles.hpp"

using namespace hjlab;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

Grid grid_1d(double lo, double hi, int count) {
  Grid g;
  g.dim = 1;
  g.ax[0] = {lo, hi, count};
  return g;
}

std::vector<double> sample_initial(const InitialData& u0, const Grid& grid) {
  std::vector<double> v(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i)
    v[static_cast<size_t>(i)] = u0.oracle.value(grid.node(i));
  return v;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

char buf[256];

// 1. Theorem-1 ordering with a strict gap: H = -p^2/2, u0 = -|x|, t = 1.
void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid = grid_1d(-2.0, 2.0, 401);
  HamiltonianModel model = make_model("neg-quadratic", 1);
  InitialData u0 = make_initial("neg-abs", 1);

  SolutionField v = fd_viscosity_oracle(model, sample_initial(u0, grid), 1.0,
                                        grid, 0.45);
  SolutionField g = variational_solution(model, u0, 1.0, grid, 0.02, 81);
  SolutionField inf_f = variational_family(model, u0, 1.0, grid, 0.02, 81)
                            .min_field("inf-family");

  double worst_vg = -1e300, worst_gi = -1e300;
  for (int i = 0; i < grid.size(); ++i) {
    size_t k = static_cast<size_t>(i);
    worst_vg = std::max(worst_vg, v.values[k] - g.values[k]);
    worst_gi = std::max(worst_gi, g.values[k] - inf_f.values[k]);
  }
  size_t mid = 200;  // x = 0
  double gap = g.values[mid] - v.values[mid];
  double secs = elapsed_s(t0);
  bool pass = worst_vg <= 5e-2 && worst_gi <= 1e-3 && gap >= 0.4 && secs < 30.0;
  std::snprintf(buf, sizeof buf,
                "v<=g viol %.3g, g<=inf viol %.3g, gap(1,0) %.3f, v(1,0) %.3f, "
                "g(1,0) %.3f, %.1fs",
                worst_vg, worst_gi, gap, v.values[mid], g.values[mid], secs);
  report(1, "ordering with strict gap", pass, buf);
}

// 2. Convex collapse: all five pipelines agree for H = p^2/2, u0 = -|x|.
void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid = grid_1d(-2.0, 2.0, 401);
  HamiltonianModel model = make_model("quadratic", 1);
  InitialData u0 = make_initial("neg-abs", 1);

  std::vector<SolutionField> fields;
  Box xb{Vec::d1(-8.0), Vec::d1(8.0)};
  Box pb{Vec::d1(-2.0), Vec::d1(2.0)};
  DualFunction dual = legendre_concave_dual(u0.oracle.value, xb, pb, 401);
  fields.push_back(hopf_solution(model, dual, 1.0, grid));
  fields.push_back(lax_oleinik(model, u0.oracle.value, 1.0, grid, 4.0, 801));
  fields.push_back(variational_solution(model, u0, 1.0, grid, 0.02, 81));
  fields.push_back(iterated_variational(model, u0, 1.0, grid, 0.02, 16));
  fields.push_back(
      fd_viscosity_oracle(model, sample_initial(u0, grid), 1.0, grid, 0.45));

  double worst = 0.0;
  for (size_t a = 0; a < fields.size(); ++a)
    for (size_t b = a + 1; b < fields.size(); ++b)
      for (int i = 0; i < grid.size(); ++i)
        worst = std::max(worst,
                         std::fabs(fields[a].values[static_cast<size_t>(i)] -
                                   fields[b].values[static_cast<size_t>(i)]));
  double at0 = fields[2].values[200];
  double secs = elapsed_s(t0);
  bool pass = worst <= 5e-2 && std::fabs(at0 + 0.5) <= 5e-2 && secs < 60.0;
  std::snprintf(buf, sizeof buf,
                "max pairwise diff %.3g, value at x=0 %.3f (want -0.5), %.1fs",
                worst, at0, secs);
  report(2, "convex collapse of the five pipelines", pass, buf);
}

// 3. Entropy iff: Burgers shock passes, anti-Burgers fails at x = 0.
void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid = grid_1d(-2.0, 2.0, 201);
  SemiConcaveFn fn;
  fn.generators.push_back(Generator::affine(Vec::d1(1.0), 0.0));
  fn.generators.back().id = 0;
  fn.generators.push_back(Generator::affine(Vec::d1(-1.0), 0.0));
  fn.generators.back().id = 1;
  fn.L = 1.0;

  HamiltonianModel burgers = make_model("quadratic", 1);
  FieldEntropyScan shock = scan_field(
      burgers, evolve_family(burgers, fn, 1.0, grid, 0.01), EnvelopeMode::Convex);

  HamiltonianModel anti = make_model("neg-quadratic", 1);
  FieldEntropyScan fan = scan_field(
      anti, evolve_family(anti, fn, 1.0, grid, 0.01), EnvelopeMode::Convex);
  bool fails_at_origin = false;
  double origin_margin = 0.0, origin_p = 1e9;
  for (const auto& r : fan.reports)
    if (!r.pass && std::fabs(r.x[0]) <= 1e-9) {
      fails_at_origin = true;
      origin_margin = r.worst_margin;
      origin_p = r.worst_p[0];
    }
  double secs = elapsed_s(t0);
  bool pass = shock.pass && !shock.reports.empty() && fails_at_origin &&
              std::fabs(origin_margin + 0.5) <= 1e-3 &&
              std::fabs(origin_p) <= 1e-6 && secs < 5.0;
  std::snprintf(buf, sizeof buf,
                "shock pass %d (%zu nonsmooth nodes), fan margin at 0: %.4f at "
                "p=%.3f, %.1fs",
                shock.pass ? 1 : 0, shock.reports.size(), origin_margin,
                origin_p, secs);
  report(3, "entropy verdicts on both Burgers signs", pass, buf);
}

// 4. Family construction quality for u0 = -|x|, B = L = 1, 81 sites.
void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  InitialData u0 = make_initial("neg-abs", 1);
  std::vector<Vec> sites;
  for (int i = 0; i < 81; ++i) sites.push_back(Vec::d1(-2.0 + 4.0 * i / 80.0));
  SemiConcaveFn fam = build_family_f0(u0.oracle, sites, 1.0, 1.0);

  double sup_err = 0.0;
  for (double x = -2.0; x <= 2.0 + 1e-12; x += 0.005)
    sup_err = std::max(sup_err, std::fabs(fam.value(Vec::d1(x)) + std::fabs(x)));

  std::mt19937 rng(47);
  std::uniform_real_distribution<double> unif(-8.0, 8.0);
  double worst_hess = 0.0, worst_grad = 0.0;
  for (const auto& g : fam.generators)
    for (int s = 0; s < 10; ++s) {
      double x = unif(rng), h = 1e-4;
      double second = (g.value(Vec::d1(x + h)) - 2.0 * g.value(Vec::d1(x)) +
                       g.value(Vec::d1(x - h))) /
                      (h * h);
      worst_hess = std::max(worst_hess, std::fabs(second));
      worst_grad = std::max(worst_grad, g.gradient(Vec::d1(x)).norm());
    }
  double secs = elapsed_s(t0);
  bool pass = sup_err <= 1e-2 && worst_hess <= 1.0 + 1e-3 && worst_grad <= 6.0 &&
              secs < 5.0;
  std::snprintf(buf, sizeof buf,
                "sup reconstruction err %.3g, max |f''| %.4f, max |df| %.3f, "
                "%.1fs",
                sup_err, worst_hess, worst_grad, secs);
  report(4, "generating-family bounds", pass, buf);
}

// 5. Radial hessian formula vs a d=2 finite-difference oracle.
void criterion_5() {
  PhiProfile prof = build_phi(1.0, 1.0);
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> unif(0.1, 6.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  double worst = 0.0;
  int checked = 0;
  while (checked < 50) {
    double r = unif(rng);
    if (std::fabs(r - 4.0) < 0.02 || std::fabs(r - 5.0) < 0.02) continue;
    double a = angle(rng);
    double fd = test_oracles::fd_hessian_norm_2d(
        [&](double x, double y) { return prof.phi(std::hypot(x, y)); },
        r * std::cos(a), r * std::sin(a), 1e-3);
    worst = std::max(worst, std::fabs(fd - hessian_norm_radial(prof, r)));
    ++checked;
  }
  bool pass = worst <= 1e-4;
  std::snprintf(buf, sizeof buf, "max |analytic - FD| %.3g over 50 radii", worst);
  report(5, "radial hessian formula", pass, buf);
}

// 6. Envelope vs independent oracles.
void criterion_6() {
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  double worst1 = 0.0;
  for (int set = 0; set < 100; ++set) {
    EnvelopeQuery q;
    std::vector<test_oracles::PtH> ref;
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 5; ++i) {
      double p = unif(rng), h = unif(rng);
      q.points.push_back({Vec::d1(p), h});
      ref.push_back({p, h});
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    for (int s = 0; s < 9; ++s) {
      double p = lo + (hi - lo) * s / 8.0;
      q.p = Vec::d1(p);
      for (bool convex : {true, false}) {
        q.mode = convex ? EnvelopeMode::Convex : EnvelopeMode::Concave;
        worst1 = std::max(
            worst1, std::fabs(envelope_value(q) -
                              test_oracles::envelope_1d_hull(ref, p, convex)));
      }
    }
  }

  std::uniform_real_distribution<double> wgt(0.0, 1.0);
  double worst2 = 0.0;
  for (int set = 0; set < 20; ++set) {
    EnvelopeQuery q;
    std::vector<test_oracles::PtH2> ref;
    for (int i = 0; i < 6; ++i) {
      double a = unif(rng) * 0.75, b = unif(rng) * 0.75, h = unif(rng);
      q.points.push_back({Vec::d2(a, b), h});
      ref.push_back({{a, b}, h});
    }
    double w[6], ws = 0.0;
    for (double& wi : w) {
      wi = wgt(rng);
      ws += wi;
    }
    std::array<double, 2> query{0.0, 0.0};
    for (int i = 0; i < 6; ++i) {
      query[0] += w[i] / ws * ref[static_cast<size_t>(i)].p[0];
      query[1] += w[i] / ws * ref[static_cast<size_t>(i)].p[1];
    }
    q.p = Vec::d2(query[0], query[1]);
    for (bool convex : {true, false}) {
      q.mode = convex ? EnvelopeMode::Convex : EnvelopeMode::Concave;
      worst2 = std::max(
          worst2, std::fabs(envelope_value(q) - test_oracles::envelope_2d_search(
                                                    ref, query, convex)));
    }
  }
  bool pass = worst1 <= 1e-9 && worst2 <= 1e-6;
  std::snprintf(buf, sizeof buf, "d=1 max err %.3g (tol 1e-9), d=2 max err %.3g "
                                 "(tol 1e-6)",
                worst1, worst2);
  report(6, "envelope oracles", pass, buf);
}

// 7. Semigroup inequality at (0, 0.5, 1).
void criterion_7() {
  Grid grid = grid_1d(-2.0, 2.0, 201);
  InitialData u0 = make_initial("neg-abs", 1);
  SemigroupReport conc = semigroup_inequality_check(
      make_model("neg-quadratic", 1), u0, 0.0, 0.5, 1.0, grid, 0.01, 81);
  SemigroupReport conv = semigroup_inequality_check(
      make_model("quadratic", 1), u0, 0.0, 0.5, 1.0, grid, 0.01, 81);
  bool pass = conc.max_violation <= 2e-2 && conv.max_abs_diff <= 2e-2;
  std::snprintf(buf, sizeof buf,
                "concave violation %.3g (tol 2e-2), convex |diff| %.3g (tol "
                "2e-2)",
                conc.max_violation, conv.max_abs_diff);
  report(7, "semigroup inequality", pass, buf);
}

// 8. Quantitative estimates: Lipschitz growth and small-time sup-distance.
void criterion_8() {
  Grid grid = grid_1d(-2.0, 2.0, 401);
  InitialData u0 = make_initial("neg-abs", 1);
  double worst_lip_slack = -1e300;
  for (const char* id : {"quadratic", "neg-quadratic"}) {
    HamiltonianModel m = make_model(id, 1);
    for (double t : {0.25, 0.5, 1.0}) {
      SolutionField f = variational_solution(m, u0, t, grid, 0.01, 81);
      double bound = lipschitz_bound(u0.L, m.bound_A, t) + 1e-2;
      worst_lip_slack = std::max(worst_lip_slack,
                                 f.discrete_lipschitz() - bound);
    }
  }

  HamiltonianModel m = make_model("quadratic", 1);
  double worst_dev_slack = -1e300;
  for (double t : {0.02, 0.05, 0.1}) {
    SolutionField f = variational_solution(m, u0, t, grid, 0.005, 161);
    double dev = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      dev = std::max(dev, std::fabs(f.values[static_cast<size_t>(i)] -
                                    u0.oracle.value(grid.node(i))));
    double lt = (u0.L + 1.0) * std::exp(m.bound_A * t);
    double bound = m.bound_A * t * lt * lt * 1.1;
    worst_dev_slack = std::max(worst_dev_slack, dev - bound);
  }
  bool pass = worst_lip_slack <= 0.0 && worst_dev_slack <= 0.0;
  std::snprintf(buf, sizeof buf,
                "Lipschitz slack %.3g, small-t sup-distance slack %.3g (both "
                "must be <= 0)",
                worst_lip_slack, worst_dev_slack);
  report(8, "quantitative growth estimates", pass, buf);
}

// 9. Characteristic consistency and the focusing caustic time.
void criterion_9() {
  HamiltonianModel quad = make_model("quadratic", 1);
  Generator gen = Generator::analytic(
      [](const Vec& x) { return -x[0] * x[0] / 2.0; },
      [](const Vec& x) { return Vec::d1(-x[0]); });
  LaunchGrid launch = LaunchGrid::uniform_1d(-1.0, 1.0, 201);

  SolutionPatch below = evolve_generator(quad, gen, launch, 0.5, 1e-3);
  double worst_p = 0.0;
  for (size_t i = 1; i + 1 < below.arcs.size(); ++i) {
    double qm = below.arcs[i - 1].states.back().q[0];
    double qp = below.arcs[i + 1].states.back().q[0];
    double fd =
        (below.arcs[i + 1].action.back() - below.arcs[i - 1].action.back()) /
        (qp - qm);
    worst_p = std::max(worst_p,
                       std::fabs(fd - below.arcs[i].states.back().p[0]));
  }

  SolutionPatch focusing = evolve_generator(quad, gen, launch, 1.5, 1e-3);
  double tc = focusing.caustic_time;
  bool pass = worst_p <= 1e-3 && std::fabs(tc - 1.0) <= 0.05;
  std::snprintf(buf, sizeof buf,
                "max |transported p - FD gradient| %.3g (tol 1e-3), caustic "
                "time %.4f (want 1 +- 0.05)",
                worst_p, tc);
  report(9, "characteristic consistency and caustic", pass, buf);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
