#pragma once

#include <array>
#include <span>

#include "hermspec/basis.hpp"

namespace hermspec {

/// Macroscopic state: density, bulk velocity, temperature, stress
/// deviator (symmetric traceless) and heat flux.
struct MacroState {
  double rho = 0.0;
  std::array<double, 3> u = {0.0, 0.0, 0.0};
  double theta = 0.0;
  std::array<std::array<double, 3>, 3> sigma = {};
  std::array<double, 3> q = {0.0, 0.0, 0.0};
};

/// Recovers the macroscopic state from expansion coefficients.
/// rho, u, theta come from the degree <= 2 closed forms; sigma and q from
/// exact raw-moment combinations (bit-stable, no quadrature).
MacroState macro_from_coeffs(const CoeffVector& coeffs);
MacroState macro_from_coeffs(const BasisSpec& spec, std::span<const double> coeffs);

/// Raw velocity moment: integral of v1^a1 v2^a2 v3^a3 * f over R^3,
/// evaluated exactly from the finitely many coefficients with k_d <= a_d.
/// Supports |a| <= 3.
double raw_moment(const BasisSpec& spec, std::span<const double> coeffs, const MultiIndex& a);
double raw_moment(const CoeffVector& coeffs, const MultiIndex& a);

/// Expansion coefficients of the Maxwellian with parameters (rho, u, theta)
/// in the given basis.  Per-axis two-term recurrence, O(term_count) total.
/// The coefficient series of a Gaussian converges only for
/// beta^2 * theta < 2; outside that region the projection is still returned
/// but *converged (if given) is set to false.
CoeffVector maxwellian_coeffs(double rho, const std::array<double, 3>& u, double theta,
                              const BasisSpec& spec, bool* converged = nullptr);

void maxwellian_coeffs(double rho, const std::array<double, 3>& u, double theta,
                       const BasisSpec& spec, std::span<double> out, bool* converged = nullptr);

}  // namespace hermspec
