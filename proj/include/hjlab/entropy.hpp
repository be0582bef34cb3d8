#pragma once

#include <string>
#include <vector>

#include "hjlab/hamiltonian.hpp"
#include "hjlab/semiconcave.hpp"
#include "hjlab/solvers.hpp"

namespace hjlab {

enum class EnvelopeMode { Convex, Concave };

struct EnvelopePoint {
  Vec p;
  double h;
};

struct EnvelopeQuery {
  std::vector<EnvelopePoint> points;
  Vec p;
  EnvelopeMode mode = EnvelopeMode::Convex;
};

// Exact optimum over convex combinations of at most d+1 of the given points.
// Throws InfeasibleError when the query lies outside the hull of the points.
double envelope_value(const EnvelopeQuery& q);

std::vector<Vec> extreme_spatial_gradients(const SuperDifferential& sd,
                                           double cluster_tol = 1e-6);

struct EntropySample {
  Vec p;
  double margin;  // envelope(p) - H(p); pass requires margin >= -tol
};

struct EntropyReport {
  double t = 0.0;
  Vec x = Vec::d1(0.0);
  EnvelopeMode mode = EnvelopeMode::Convex;
  std::vector<Vec> extreme_gradients;
  std::vector<EntropySample> samples;
  double worst_margin = 0.0;
  Vec worst_p = Vec::d1(0.0);
  bool pass = true;
  bool vacuous = false;  // fewer than two extreme gradients
};

EntropyReport check_entropy_at(const HamiltonianModel& model, double t, const Vec& x,
                               const SuperDifferential& sd, EnvelopeMode mode,
                               int sample_density = 33, double tol = 1e-6);

struct TwoBranchReport {
  double worst_violation = 0.0;  // max over s of H(chord point) - chord value
  double worst_s = 0.0;
  bool pass = true;
};

TwoBranchReport check_two_branch(const HamiltonianModel& model, double t, const Vec& x,
                                 const Vec& p_minus, const Vec& p_plus,
                                 int s_samples = 33, double tol = 1e-6);

struct ShockClassification {
  double speed = 0.0;
  bool admissible = false;
  TwoBranchReport chord;
};

// d=1, p-only model; requires the semi-concave orientation p_minus >= p_plus.
ShockClassification classify_shock_d1(const HamiltonianModel& model, double p_minus,
                                      double p_plus, double tol = 1e-6);

struct FieldEntropyScan {
  std::vector<EntropyReport> reports;  // one per node with >= 2 extreme gradients
  bool pass = true;
  double worst_margin = 0.0;
};

FieldEntropyScan scan_field(const HamiltonianModel& model, const FamilyEvolution& fe,
                            EnvelopeMode mode, double tol = 1e-6,
                            int sample_density = 33, double cluster_tol = 1e-6);

std::string entropy_scan_to_json(const FieldEntropyScan& scan);

}  // namespace hjlab
