#pragma once

#include <vector>

#include "hjlab/errors.hpp"

namespace hjlab {

// Radial profile used by the semi-concave generator construction:
// psi is B on [0, 4L/B], tapers linearly to 0 on [4L/B, 5L/B] and vanishes
// afterwards; Psi is its primitive with Psi(0)=0 and phi the primitive of
// Psi with phi(0)=0.  The linear taper keeps all three piecewise
// polynomial, so evaluation is exact.
struct PhiProfile {
  double B = 1.0;
  double L = 1.0;
  double r_plateau = 4.0;  // 4L/B
  double r_support = 5.0;  // 5L/B

  std::vector<double> r_nodes, psi_nodes, Psi_nodes, phi_nodes;

  double psi(double r) const;
  double Psi(double r) const;
  double phi(double r) const;
  double phi_second(double r) const { return psi(r); }
};

PhiProfile build_phi(double B, double L, int samples = 65);

// Norm of the Hessian of x -> phi(|x|): max(|phi''(r)|, |phi'(r)|/r),
// equal to phi''(0) at r = 0.
double hessian_norm_radial(const PhiProfile& profile, double r);

}  // namespace hjlab
