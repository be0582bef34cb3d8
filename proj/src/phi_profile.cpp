#include "hjlab/phi_profile.hpp"

#include <algorithm>
#include <cmath>

namespace hjlab {

double PhiProfile::psi(double r) const {
  if (r < 0) r = 0;
  if (r <= r_plateau) return B;
  if (r >= r_support) return 0.0;
  return B * (r_support - r) / (r_support - r_plateau);
}

double PhiProfile::Psi(double r) const {
  if (r < 0) r = 0;
  if (r <= r_plateau) return B * r;
  double w = r_support - r_plateau;
  if (r >= r_support) return B * r_plateau + 0.5 * B * w;
  double tau = (r - r_plateau) / w;
  return B * r_plateau + B * w * (tau - 0.5 * tau * tau);
}

double PhiProfile::phi(double r) const {
  if (r < 0) r = 0;
  if (r <= r_plateau) return 0.5 * B * r * r;
  double w = r_support - r_plateau;
  double phi1 = 0.5 * B * r_plateau * r_plateau;
  if (r <= r_support) {
    double tau = (r - r_plateau) / w;
    // integral of Psi over the taper zone
    return phi1 + B * r_plateau * w * tau +
           B * w * w * (0.5 * tau * tau - tau * tau * tau / 6.0);
  }
  double phi2 = phi1 + B * r_plateau * w + B * w * w / 3.0;
  return phi2 + Psi(r_support) * (r - r_support);
}

PhiProfile build_phi(double B, double L, int samples) {
  if (!(B > 0) || !(L > 0)) throw ArgumentError("build_phi: B and L must be positive");
  if (samples < 2) throw ArgumentError("build_phi: samples >= 2 required");
  PhiProfile p;
  p.B = B;
  p.L = L;
  p.r_plateau = 4.0 * L / B;
  p.r_support = 5.0 * L / B;
  double r_max = 6.0 * L / B;  // table reaches beyond the support radius
  p.r_nodes.resize(static_cast<size_t>(samples));
  p.psi_nodes.resize(static_cast<size_t>(samples));
  p.Psi_nodes.resize(static_cast<size_t>(samples));
  p.phi_nodes.resize(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    double r = r_max * i / (samples - 1);
    p.r_nodes[static_cast<size_t>(i)] = r;
    p.psi_nodes[static_cast<size_t>(i)] = p.psi(r);
    p.Psi_nodes[static_cast<size_t>(i)] = p.Psi(r);
    p.phi_nodes[static_cast<size_t>(i)] = p.phi(r);
  }
  return p;
}

double hessian_norm_radial(const PhiProfile& profile, double r) {
  if (r < 0) throw ArgumentError("hessian_norm_radial: r >= 0 required");
  if (r == 0.0) return profile.psi(0.0);
  return std::max(std::fabs(profile.psi(r)), std::fabs(profile.Psi(r)) / r);
}

}  // namespace hjlab
