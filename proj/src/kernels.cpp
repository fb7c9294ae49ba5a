#include "hermspec/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hermspec/errors.hpp"
#include "hermspec/quadrature.hpp"

namespace hermspec {

KernelSpec KernelSpec::isotropic_maxwell(double strength) {
  if (!(strength > 0.0)) throw ConfigError("kernel: strength must be positive");
  KernelSpec k;
  k.variant = Variant::IsotropicMaxwell;
  k.strength = strength;
  return k;
}

KernelSpec KernelSpec::vhs(double exponent, double strength) {
  if (!(strength > 0.0)) throw ConfigError("kernel: strength must be positive");
  KernelSpec k;
  k.variant = Variant::VHS;
  k.exponent = exponent;
  k.strength = strength;
  return k;
}

KernelSpec KernelSpec::ipl(double eta, double strength) {
  if (!(eta > 3.0)) throw ConfigError("kernel: IPL requires eta > 3");
  if (!(strength > 0.0)) throw ConfigError("kernel: strength must be positive");
  KernelSpec k;
  k.variant = Variant::IPL;
  k.eta = eta;
  k.strength = strength;
  return k;
}

double KernelSpec::homogeneity_exponent() const {
  switch (variant) {
    case Variant::IsotropicMaxwell: return 0.0;
    case Variant::VHS: return exponent;
    case Variant::IPL: return (eta - 5.0) / (eta - 1.0);
  }
  return 0.0;
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  switch (variant) {
    case Variant::IsotropicMaxwell: os << "isotropic_maxwell(strength=" << strength << ")"; break;
    case Variant::VHS: os << "vhs(exponent=" << exponent << ",strength=" << strength << ")"; break;
    case Variant::IPL: os << "ipl(eta=" << eta << ",strength=" << strength << ")"; break;
  }
  return os.str();
}

namespace {

// Positive root of 1 - u^2 - 2/(eta-1) (u/W0)^(eta-1) = 0; the function is
// strictly decreasing on u > 0 with h(0) = 1 and h(max) < 0.  The impact
// parameter is nondimensionalized the classical way (Bird), which also
// fixes the scale of the tabulated mode constants.
double potential_term(double u, double W0, double eta) {
  return 2.0 / (eta - 1.0) * std::pow(u / W0, eta - 1.0);
}

double turning_point(double W0, double eta) {
  double lo = 0.0, hi = 1.0;
  while (1.0 - hi * hi - potential_term(hi, W0, eta) > 0.0) hi *= 2.0;
  for (int it = 0; it < 90; ++it) {
    const double u = 0.5 * (lo + hi);
    const double h = 1.0 - u * u - potential_term(u, W0, eta);
    (h > 0.0 ? lo : hi) = u;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double deflection_angle(double W0, double eta) {
  if (!(W0 > 0.0)) throw NumericError("deflection_angle: W0 must be positive");
  if (!(eta > 3.0)) throw NumericError("deflection_angle: eta > 3 required");
  const double u1 = turning_point(W0, eta);

  // chi = pi - 2 * integral_0^{u1} du / sqrt(h(u)).  The substitution
  // u = u1 sin(phi) removes the inverse-square-root endpoint singularity;
  // the remaining integrand is smooth.
  static const Quadrature1D gl = gauss_legendre(48, 0.0, 1.0);
  double integral = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double phi = 0.5 * std::numbers::pi * gl.nodes[i];
    const double u = u1 * std::sin(phi);
    const double h = 1.0 - u * u - potential_term(u, W0, eta);
    const double du = u1 * 0.5 * std::numbers::pi * std::cos(phi);
    if (h <= 0.0) {
      // The nodes never land exactly on the turning point.
      throw NumericError("deflection_angle: quadrature hit the turning point");
    }
    integral += gl.weights[i] * du / std::sqrt(h);
  }
  const double chi = std::numbers::pi - 2.0 * integral;
  return std::min(std::max(chi, 0.0), std::numbers::pi);
}

namespace {

// Monotone inversion W0(chi) by bisection on log W0.
double impact_parameter(double chi, double eta) {
  double lo = std::log(1e-8), hi = std::log(1e8);
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    // chi decreases in W0
    (deflection_angle(std::exp(mid), eta) > chi ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

double kernel_eval(const KernelSpec& kernel, double g, double chi) {
  if (g < 0.0) throw NumericError("kernel_eval: g must be nonnegative");
  if (chi < 0.0 || chi > std::numbers::pi) throw NumericError("kernel_eval: chi outside [0,pi]");
  const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
  switch (kernel.variant) {
    case KernelSpec::Variant::IsotropicMaxwell:
      return kernel.strength * inv4pi;
    case KernelSpec::Variant::VHS:
      return kernel.strength * std::pow(g, kernel.exponent) * inv4pi;
    case KernelSpec::Variant::IPL: {
      const double W0 = impact_parameter(chi, kernel.eta);
      const double h = 1e-4 * W0;
      const double dchi = (deflection_angle(W0 + h, kernel.eta) - deflection_angle(W0 - h, kernel.eta)) / (2.0 * h);
      const double s = kernel.homogeneity_exponent();
      return kernel.strength * std::pow(g, s) * W0 / (std::sin(chi) * std::abs(dchi));
    }
  }
  return 0.0;
}

std::vector<double> kernel_angular_integrals(const KernelSpec& kernel, int lmax) {
  std::vector<double> c(lmax + 1, 0.0);
  if (kernel.angle_independent()) {
    // b(chi) = strength/(4 pi): every l > 0 projection vanishes, so
    // c_l = -strength for l >= 1 and c_0 = 0.
    for (int l = 1; l <= lmax; ++l) c[l] = -kernel.strength;
    return c;
  }

  // IPL: B sin(chi) dchi dphi = strength * W0 dW0 dphi, so
  // c_l = 2 pi strength * integral (P_l(cos chi(W0)) - 1) W0 dW0.
  // The integrand decays like W0^(3 - 2(eta-1)); panels are graded out to
  // where the tail is negligible.
  const double eta = kernel.eta;
  const double W0max = std::min(1e6, std::pow(10.0, 12.0 / (2.0 * eta - 4.0)) + 10.0);
  std::vector<double> edges = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0};
  while (edges.back() < W0max) edges.push_back(edges.back() * 2.0);
  edges.back() = std::max(edges.back(), W0max);

  std::vector<double> pl(lmax + 1);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const Quadrature1D gl = gauss_legendre(32, edges[e], edges[e + 1]);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double W0 = gl.nodes[i];
      const double t = std::cos(deflection_angle(W0, eta));
      pl[0] = 1.0;
      if (lmax >= 1) pl[1] = t;
      for (int l = 1; l < lmax; ++l) pl[l + 1] = ((2 * l + 1) * t * pl[l] - l * pl[l - 1]) / (l + 1);
      const double w = gl.weights[i] * W0;
      for (int l = 1; l <= lmax; ++l) c[l] += w * (pl[l] - 1.0);
    }
  }
  const double f = 2.0 * std::numbers::pi * kernel.strength;
  for (int l = 0; l <= lmax; ++l) c[l] *= f;
  return c;
}

}  // namespace hermspec
