#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "hjlab/geometry.hpp"
#include "hjlab/phi_profile.hpp"

namespace hjlab {

enum class GenKind { Affine, PhiCap, Analytic };

// One C^2 member of a generating family.
struct Generator {
  GenKind kind = GenKind::Affine;
  Vec x0;        // base point
  Vec p;         // slope at the base point
  double c = 0;  // value at the base point
  std::shared_ptr<const PhiProfile> profile;  // phi-cap only
  std::function<double(const Vec&)> fn;       // analytic only
  std::function<Vec(const Vec&)> grad_fn;     // analytic only
  int id = -1;

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;

  static Generator affine(const Vec& slope, double offset);  // slope.x - offset
  static Generator phi_cap(const Vec& x0, const Vec& p, double value_at_x0,
                           std::shared_ptr<const PhiProfile> profile);
  static Generator analytic(std::function<double(const Vec&)> fn,
                            std::function<Vec(const Vec&)> grad_fn);
};

// Finite minimum of C^2 generators, with semi-concavity constant B and
// Lipschitz constant L.
struct SemiConcaveFn {
  std::vector<Generator> generators;
  double B = 0.0;
  double L = 0.0;

  double value(const Vec& x) const;
  // minimum value and ids of all generators within 1e-9 of it
  std::pair<double, std::vector<int>> eval_min(const Vec& x) const;
};

// Finite description of a superdifferential at one point: merged (eta, p)
// vertices, the convex hull of their spatial projections, and flags marking
// the extreme vertices of the lifted (eta, p) set.
struct SuperDifferential {
  int dim = 1;                                  // spatial dimension
  std::vector<std::pair<double, Vec>> vertices; // (eta, p)
  std::vector<Vec> hull;  // d=1: {p_min, p_max}; d=2: ccw polygon
  std::vector<bool> extreme;
};

SuperDifferential make_superdifferential(std::vector<std::pair<double, Vec>> samples,
                                         int dim, double cluster_tol);

// Gradients of all active generators at x, clustered and hulled.
// eta entries are zero: the time slope is supplied by evolved-family queries.
SuperDifferential superdifferential(const SemiConcaveFn& fn, const Vec& x,
                                    double cluster_tol = 1e-6);

// Evaluable function plus a finite sample of its superdifferential per point.
struct SupergradientOracle {
  std::function<double(const Vec&)> value;
  std::function<std::vector<Vec>(const Vec&)> supergradients;
};

// Lemma-style family {u(x0) + p.(x-x0) + phi(|x-x0|)} over the sites and
// their supplied supergradients.  The minimum touches u at every site and
// never undercuts it.
SemiConcaveFn build_family_f0(const SupergradientOracle& u,
                              const std::vector<Vec>& sites, double B, double L);

// Piecewise-linear d=1 data with one-sided-difference supergradients
// (interval endpoints and midpoint).  B and L are estimated from discrete
// differences and clamped to [1e-6, 1e3].
struct DiscreteData {
  std::vector<double> xs;      // strictly increasing
  std::vector<double> values;
  SupergradientOracle oracle() const;
  double estimate_B() const;
  double estimate_L() const;
};

}  // namespace hjlab
