#pragma once

#include <string>
#include <vector>

namespace hermspec {

/// Binary collision kernel B(|g|, chi).
///
/// IsotropicMaxwell: strength/(4*pi), independent of speed and angle.
/// VHS:              strength * g^exponent / (4*pi), angle-independent.
/// IPL:              strength * g^((eta-5)/(eta-1)) * (W0/sin chi)|dW0/dchi|
///                   for the inverse-power-law force with exponent eta > 3.
struct KernelSpec {
  enum class Variant { IsotropicMaxwell, VHS, IPL };

  Variant variant = Variant::IsotropicMaxwell;
  double strength = 1.0;
  double exponent = 0.0;  // VHS only
  double eta = 5.0;       // IPL only

  static KernelSpec isotropic_maxwell(double strength);
  static KernelSpec vhs(double exponent, double strength);
  static KernelSpec ipl(double eta, double strength);

  /// Velocity-homogeneity exponent s in B ~ g^s.
  double homogeneity_exponent() const;

  /// True when B does not depend on the scattering angle.
  bool angle_independent() const { return variant != Variant::IPL; }

  std::string describe() const;
};

/// Kernel value at relative speed g >= 0 and scattering angle chi in [0,pi].
double kernel_eval(const KernelSpec& kernel, double g, double chi);

/// Classical scattering angle of the repulsive inverse-power-law potential
/// as a function of the dimensionless impact parameter W0 > 0.  Monotone
/// decreasing, chi -> pi as W0 -> 0 and chi -> 0 as W0 -> infinity.
double deflection_angle(double W0, double eta);

/// Angular Legendre integrals of the kernel against (P_l(cos chi) - 1),
/// l = 0..lmax: c_l = 2*pi * integral B(1,chi) (P_l(cos chi) - 1) sin chi dchi,
/// with the speed power factored out.  These stay finite for grazing-
/// singular kernels because P_l - 1 vanishes quadratically at chi = 0.
std::vector<double> kernel_angular_integrals(const KernelSpec& kernel, int lmax);

}  // namespace hermspec
