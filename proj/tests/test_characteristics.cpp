#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hjlab/characteristics.hpp"

using namespace hjlab;

namespace {

HamiltonianModel potential_x() {  // H(x,p) = x
  HamiltonianModel m;
  m.id = "potential-x";
  m.dim = 1;
  m.eval = [](double, const Vec& x, const Vec&) { return x[0]; };
  m.grad_x = [](double, const Vec&, const Vec&) { return Vec::d1(1.0); };
  m.grad_p = [](double, const Vec&, const Vec&) { return Vec::d1(0.0); };
  m.bound_A = 1.0;
  return m;
}

HamiltonianModel shear_xp() {  // H(x,p) = x p, closed-form flow
  HamiltonianModel m;
  m.id = "shear-xp";
  m.dim = 1;
  m.eval = [](double, const Vec& x, const Vec& p) { return x[0] * p[0]; };
  m.grad_x = [](double, const Vec&, const Vec& p) { return Vec::d1(p[0]); };
  m.grad_p = [](double, const Vec& x, const Vec&) { return Vec::d1(x[0]); };
  m.bound_A = 2.0;
  return m;
}

}  // namespace

TEST_CASE("straight-line characteristic of the quadratic model") {
  HamiltonianModel quad = make_model("quadratic", 1);
  CharacteristicArc arc =
      integrate_hs(quad, {Vec::d1(0.0), Vec::d1(1.0)}, 0.0, 1.0, 1e-3);
  CHECK(arc.states.back().q[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(arc.states.back().p[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(arc.action.back() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(arc.times.back() == doctest::Approx(1.0));

  CharacteristicArc still =
      integrate_hs(quad, {Vec::d1(0.3), Vec::d1(0.0)}, 0.0, 1.0, 1e-3);
  CHECK(still.states.back().q[0] == doctest::Approx(0.3));
  CHECK(still.action.back() == doctest::Approx(0.0));
}

TEST_CASE("sign convention: H = V(x) transports p with slope -V'") {
  CharacteristicArc arc =
      integrate_hs(potential_x(), {Vec::d1(0.0), Vec::d1(0.5)}, 0.0, 1.0, 1e-3);
  CHECK(arc.states.back().p[0] == doctest::Approx(0.5 - 1.0).epsilon(1e-10));
  CHECK(arc.states.back().q[0] == doctest::Approx(0.0));
}

TEST_CASE("integrator is fourth order on a closed-form nonconstant flow") {
  // H = x p gives q(t) = q0 e^t, p(t) = p0 e^{-t}
  HamiltonianModel m = shear_xp();
  PhaseState s0{Vec::d1(1.0), Vec::d1(1.0)};
  double exact = std::exp(1.0);
  double e1 = std::fabs(
      integrate_hs(m, s0, 0.0, 1.0, 0.02).states.back().q[0] - exact);
  double e2 = std::fabs(
      integrate_hs(m, s0, 0.0, 1.0, 0.01).states.back().q[0] - exact);
  CHECK(e2 > 0.0);
  CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("argument and blow-up errors") {
  HamiltonianModel quad = make_model("quadratic", 1);
  CHECK_THROWS_AS(integrate_hs(quad, {Vec::d1(0), Vec::d1(1)}, 0.0, 1.0, -0.1),
                  ArgumentError);
  CHECK_THROWS_AS(integrate_hs(quad, {Vec::d1(0), Vec::d1(1)}, 1.0, 0.5, 0.1),
                  ArgumentError);

  HamiltonianModel escape;  // q' = q^2 escapes in finite time
  escape.id = "escape";
  escape.dim = 1;
  escape.eval = [](double, const Vec& x, const Vec& p) {
    return x[0] * x[0] * p[0];
  };
  escape.grad_x = [](double, const Vec& x, const Vec& p) {
    return Vec::d1(2.0 * x[0] * p[0]);
  };
  escape.grad_p = [](double, const Vec& x, const Vec&) {
    return Vec::d1(x[0] * x[0]);
  };
  CHECK_THROWS_AS(
      integrate_hs(escape, {Vec::d1(1.0), Vec::d1(0.0)}, 0.0, 2.0, 1e-3),
      BlowupError);
}

TEST_CASE("affine generator evolves by f = px - c - tH(p)") {
  HamiltonianModel quad = make_model("quadratic", 1);
  Generator gen = Generator::affine(Vec::d1(0.7), 0.2);
  LaunchGrid launch = LaunchGrid::uniform_1d(-2.0, 2.0, 21);
  SolutionPatch patch = evolve_generator(quad, gen, launch, 1.5, 1e-3);
  for (int i = 0; i < launch.size(); ++i) {
    const auto& arc = patch.arcs[static_cast<size_t>(i)];
    double x = arc.states.back().q[0];
    double expected = 0.7 * x - 0.2 - 1.5 * (0.7 * 0.7 / 2.0);
    CHECK(arc.action.back() == doctest::Approx(expected).epsilon(1e-6));
  }
  CHECK(std::isinf(patch.caustic_time));
}

TEST_CASE("spreading quadratic generator matches the closed form") {
  // f0 = x^2/2, H = p^2/2: f(t,x) = x^2 / (2(1+t))
  HamiltonianModel quad = make_model("quadratic", 1);
  Generator gen = Generator::analytic(
      [](const Vec& x) { return x[0] * x[0] / 2.0; },
      [](const Vec& x) { return Vec::d1(x[0]); });
  LaunchGrid launch = LaunchGrid::uniform_1d(-1.0, 1.0, 41);
  SolutionPatch patch = evolve_generator(quad, gen, launch, 1.0, 1e-3);
  for (const auto& arc : patch.arcs) {
    double x = arc.states.back().q[0];
    CHECK(arc.action.back() ==
          doctest::Approx(x * x / 4.0).epsilon(1e-5).scale(1.0));
  }
  CHECK(std::isinf(patch.caustic_time));

  SolutionPatch frozen = evolve_generator(quad, gen, launch, 0.0, 1e-3);
  for (int i = 0; i < launch.size(); ++i) {
    double x0 = launch.point(i)[0];
    CHECK(frozen.arcs[static_cast<size_t>(i)].action.back() ==
          doctest::Approx(x0 * x0 / 2.0));
  }
}

TEST_CASE("focusing quadratic generator hits its caustic at t = 1") {
  HamiltonianModel quad = make_model("quadratic", 1);
  Generator gen = Generator::analytic(
      [](const Vec& x) { return -x[0] * x[0] / 2.0; },
      [](const Vec& x) { return Vec::d1(-x[0]); });
  LaunchGrid launch = LaunchGrid::uniform_1d(-1.0, 1.0, 41);
  SolutionPatch patch = evolve_generator(quad, gen, launch, 1.5, 1e-3);
  CHECK(patch.caustic_time == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("transported p matches the patch gradient below the caustic") {
  HamiltonianModel quad = make_model("quadratic", 1);
  Generator gen = Generator::analytic(
      [](const Vec& x) { return -x[0] * x[0] / 2.0; },
      [](const Vec& x) { return Vec::d1(-x[0]); });
  LaunchGrid launch = LaunchGrid::uniform_1d(-1.0, 1.0, 201);
  SolutionPatch patch = evolve_generator(quad, gen, launch, 0.5, 1e-3);
  for (size_t i = 1; i + 1 < patch.arcs.size(); ++i) {
    double qm = patch.arcs[i - 1].states.back().q[0];
    double qp = patch.arcs[i + 1].states.back().q[0];
    double fd = (patch.arcs[i + 1].action.back() - patch.arcs[i - 1].action.back()) /
                (qp - qm);
    CHECK(std::fabs(fd - patch.arcs[i].states.back().p[0]) <= 1e-3);
  }
}

TEST_CASE("lipschitz_bound closed form") {
  CHECK(lipschitz_bound(1.0, 0.0, 5.0) == doctest::Approx(1.0));
  CHECK(lipschitz_bound(0.0, 1.0, 0.0) == doctest::Approx(0.0));
  CHECK(lipschitz_bound(1.0, 1.0, std::log(2.0)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(lipschitz_bound(-1.0, 1.0, 1.0), ArgumentError);
}

TEST_CASE("patch values respect the Lipschitz growth bound") {
  HamiltonianModel quad = make_model("quadratic", 1);
  Generator gen = Generator::analytic(
      [](const Vec& x) { return -x[0] * x[0] / 2.0; },
      [](const Vec& x) { return Vec::d1(-x[0]); });
  LaunchGrid launch = LaunchGrid::uniform_1d(-1.0, 1.0, 201);
  double t = 0.5;
  SolutionPatch patch = evolve_generator(quad, gen, launch, t, 1e-3);
  double lip = 0.0;
  for (size_t i = 0; i + 1 < patch.arcs.size(); ++i) {
    double dq = patch.arcs[i + 1].states.back().q[0] -
                patch.arcs[i].states.back().q[0];
    double dv = patch.arcs[i + 1].action.back() - patch.arcs[i].action.back();
    lip = std::max(lip, std::fabs(dv / dq));
  }
  CHECK(lip <= lipschitz_bound(1.0, quad.bound_A, t) * (1.0 + 1e-2));
}

TEST_CASE("evolve_generator rejects an empty launch grid") {
  HamiltonianModel quad = make_model("quadratic", 1);
  Generator gen = Generator::affine(Vec::d1(1.0), 0.0);
  LaunchGrid empty;
  CHECK_THROWS_AS(evolve_generator(quad, gen, empty, 1.0, 1e-3), ArgumentError);
}
