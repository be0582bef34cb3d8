#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hjlab/geometry.hpp"

namespace hjlab {

enum class Convexity { ConvexInP, ConcaveInP, Nonconvex, Unknown };

// A Hamiltonian H(t,x,p) with its first derivatives and the constant A
// bounding |H|/(1+|p|)^2, |dH|/(1+|p|) and |d^2H|.
struct HamiltonianModel {
  std::string id;
  int dim = 1;
  std::function<double(double, const Vec&, const Vec&)> eval;
  std::function<Vec(double, const Vec&, const Vec&)> grad_x;
  std::function<Vec(double, const Vec&, const Vec&)> grad_p;
  double bound_A = 1.0;
  Convexity convexity = Convexity::Unknown;
  bool smooth = true;  // false for continuous-only models (Hopf/entropy paths)

  double operator()(double t, const Vec& x, const Vec& p) const;
};

double eval_h(const HamiltonianModel& model, double t, const Vec& x, const Vec& p);

// Sampling box in (t,x,p)-space for the Hypothesis-1 check.
struct BoundsBox {
  double t0 = 0.0, t1 = 1.0;
  Box x;
  Box p;
};

struct BoundsReport {
  double max_h_ratio = 0.0;   // max |H| / (1+|p|)^2
  double max_dh_ratio = 0.0;  // max |dH| / (1+|p|)
  double max_d2h = 0.0;       // finite-difference estimate of |d^2H|
  double slack = 1.01;
  bool pass = false;
};

// Samples the three Hypothesis-1 ratios on the box and flags pass/fail
// against model.bound_A with slack factor 1.01. Second derivatives use
// centered finite differences with step 1e-3.
BoundsReport check_hypothesis1(const HamiltonianModel& model, const BoundsBox& box,
                               int samples);

// Built-in models: quadratic, neg-quadratic, rel-kinetic, saddle, abs,
// poly:<c0,c1,...>. saddle is d=2 only, poly is d=1 only.
HamiltonianModel make_model(const std::string& id, int dim = 0);
std::vector<std::string> model_ids();

}  // namespace hjlab
