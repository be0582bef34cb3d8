#pragma once

#include <limits>
#include <vector>

#include "hjlab/hamiltonian.hpp"
#include "hjlab/semiconcave.hpp"

namespace hjlab {

struct PhaseState {
  Vec q;
  Vec p;
};

// One characteristic with its running action f(t, q(t)).
struct CharacteristicArc {
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<double> action;
};

// Structured launch grid (1 or 2 axes of launch points).
struct LaunchGrid {
  int dim = 1;
  std::vector<double> xs;
  std::vector<double> ys;  // d=2 only

  int size() const {
    return dim == 1 ? static_cast<int>(xs.size())
                    : static_cast<int>(xs.size() * ys.size());
  }
  Vec point(int flat) const {
    if (dim == 1) return Vec::d1(xs[static_cast<size_t>(flat)]);
    int nx = static_cast<int>(xs.size());
    return Vec::d2(xs[static_cast<size_t>(flat % nx)],
                   ys[static_cast<size_t>(flat / nx)]);
  }
  static LaunchGrid uniform_1d(double lo, double hi, int count);
  static LaunchGrid uniform_2d(double lox, double hix, int nx, double loy,
                               double hiy, int ny);
};

// One generator evolved along characteristics from a launch grid.
struct SolutionPatch {
  int generator_id = -1;
  LaunchGrid launch;
  std::vector<CharacteristicArc> arcs;  // one per launch point, row-major
  double caustic_time = std::numeric_limits<double>::infinity();
};

// Classical RK4 with the action quadrature, q' = dH/dp, p' = -dH/dx.
// The last step is shortened to land exactly on t1.  f0 seeds the action.
CharacteristicArc integrate_hs(const HamiltonianModel& model, const PhaseState& s0,
                               double t0, double t1, double dt, double f0 = 0.0);

// Launches one characteristic per grid point with p(0) = df0 and fills in
// the per-patch caustic estimate.
SolutionPatch evolve_generator(const HamiltonianModel& model, const Generator& gen,
                               const LaunchGrid& launch, double t, double dt,
                               double t0 = 0.0);

// First time the launch -> q(t) Jacobian determinant drops below 1e-6 of its
// initial value (linear interpolation between steps); +inf if it never does
// within the integrated horizon.
double caustic_time(const SolutionPatch& patch);

// (L0 + 1) e^{A t} - 1.
double lipschitz_bound(double L0, double A, double t);

}  // namespace hjlab
