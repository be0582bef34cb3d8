#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hjlab/characteristics.hpp"
#include "hjlab/grid.hpp"
#include "hjlab/hamiltonian.hpp"
#include "hjlab/semiconcave.hpp"

namespace hjlab {

// Initial condition in the form every solver can consume: a generator
// representation (possibly empty for raw sampled data), an evaluable value
// with supergradient samples, and certified constants.
struct InitialData {
  SemiConcaveFn fn;
  SupergradientOracle oracle;
  double B = 0.0;
  double L = 1.0;
};

// One evolved generator resampled onto the target grid.
struct PatchOnGrid {
  int generator_id = -1;
  double caustic_time = 0.0;
  std::vector<double> value;
  std::vector<Vec> grad;       // transported p interpolated at the node
  std::vector<char> covered;   // node reached by the traced point cloud
};

// A whole family evolved to time t and rasterized on a grid; this is the
// family-backed field the entropy checker queries.
struct FamilyEvolution {
  double t = 0.0;
  Grid grid;
  std::vector<PatchOnGrid> members;

  SolutionField min_field(const std::string& provenance) const;
  // active members at a node (within 1e-9 of the pointwise minimum)
  std::vector<int> active_at(int node) const;
  // superdifferential with eta = -H(t, x, p) per active member
  SuperDifferential superdiff_at(const HamiltonianModel& model, int node,
                                 double cluster_tol = 1e-6) const;
};

// Evolves every generator of fn by characteristics over [s0, s0+...t] and
// rasterizes.  Throws HorizonError when t reaches a patch caustic.
FamilyEvolution evolve_family(const HamiltonianModel& model, const SemiConcaveFn& fn,
                              double t, const Grid& grid, double dt, double s0 = 0.0);

SolutionField inf_family_solution(const HamiltonianModel& model,
                                  const SemiConcaveFn& fn, double t, const Grid& grid,
                                  double dt, double s0 = 0.0);

// Rebuilds a Lemma-style family from the oracle over uniformly spread sites
// and takes the inf of its evolution.
FamilyEvolution variational_family(const HamiltonianModel& model,
                                   const InitialData& u0, double t, const Grid& grid,
                                   double dt, int sites_per_axis, double s0 = 0.0);
SolutionField variational_solution(const HamiltonianModel& model,
                                   const InitialData& u0, double t, const Grid& grid,
                                   double dt, int sites_per_axis, double s0 = 0.0);

// Repeats rebuild -> one substep of length 1/k -> min -> resample (d=1).
SolutionField iterated_variational(const HamiltonianModel& model,
                                   const InitialData& u0, double t, const Grid& grid,
                                   double dt, int k);

// Concave Legendre dual u0*(p) = inf_x (p.x - u0(x)) on its effective domain.
struct DualFunction {
  std::vector<Vec> p_nodes;
  std::vector<double> values;
};

DualFunction legendre_concave_dual(const std::function<double(const Vec&)>& u0,
                                   const Box& x_box, const Box& p_box,
                                   int resolution);

// min over dual nodes of p.x - u0*(p) - t H(p); model must be p-only.
SolutionField hopf_solution(const HamiltonianModel& model, const DualFunction& dual,
                            double t, const Grid& grid);

// u(t,x) = min_y [u0(y) + t L*((x-y)/t)] with L* computed by grid
// maximization; convex-in-p models, d=1.
SolutionField lax_oleinik(const HamiltonianModel& model,
                          const std::function<double(const Vec&)>& u0, double t,
                          const Grid& grid, double y_margin, int resolution);

// Monotone Lax-Friedrichs-type scheme for the viscosity solution, d=1.
SolutionField fd_viscosity_oracle(const HamiltonianModel& model,
                                  const std::vector<double>& u0_values, double t,
                                  const Grid& grid, double cfl, double s0 = 0.0);

// Theorem-1 ordering report: viscosity-level fields (fd-oracle, iterated-k,
// hopf, lax-oleinik) <= variational <= inf-family.
struct OrderingPair {
  std::string lower, upper;
  double max_violation = 0.0;  // max over nodes of lower - upper
  double max_abs_diff = 0.0;
};
struct OrderingReport {
  std::vector<OrderingPair> pairs;
  double tol = 0.0;
  bool pass = true;
};

OrderingReport compare_solutions(const std::vector<SolutionField>& fields, double tol);

struct SemigroupReport {
  double max_violation = 0.0;  // max over nodes of left - right
  double max_abs_diff = 0.0;
};

// Corollary-style two-leg vs one-leg comparison; the left side re-families
// at s1 from the grid samples of the first leg.
SemigroupReport semigroup_inequality_check(const HamiltonianModel& model,
                                           const InitialData& u0, double s0, double s1,
                                           double s2, const Grid& grid, double dt,
                                           int sites_per_axis);

// Discrete InitialData wrapping a d=1 field sample.
InitialData initial_from_grid_samples(const Grid& grid,
                                      const std::vector<double>& values);

}  // namespace hjlab
