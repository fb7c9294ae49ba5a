#pragma once

#include <complex>
#include <functional>
#include <span>

#include "hermspec/basis.hpp"
#include "hermspec/moments.hpp"

namespace hermspec {

/// Hermite coefficients at every Fourier collocation point of a periodic
/// box, plus the shared basis.  D = 0 denotes the homogeneous case (a
/// single point, no spatial dependence).
struct SpatialField {
  BasisSpec spec;
  int D = 0;
  int M = 1;                            // points per spatial axis, even for D >= 1
  std::array<double, 3> L = {1, 1, 1};  // domain lengths
  std::vector<double> data;             // [point][rank], row-major

  SpatialField() = default;
  SpatialField(const BasisSpec& s, int D_, int M_, const std::array<double, 3>& L_);

  std::int64_t points() const;
  std::span<double> at(std::int64_t p) { return {data.data() + p * spec.size(), static_cast<std::size_t>(spec.size())}; }
  std::span<const double> at(std::int64_t p) const {
    return {data.data() + p * spec.size(), static_cast<std::size_t>(spec.size())};
  }

  /// Collocation point of the flattened index (axis 0 fastest).
  std::array<double, 3> point(std::int64_t p) const;

  /// Pads (with zeros) or truncates every point to a new order.
  void resize_order(int new_N);
};

/// Discrete Fourier coefficients g[k,l] with gbar = (1/M^D) sum_j f_j E_l(x_j)*;
/// layout matches the field ([frequency-point][rank]), frequencies in FFT
/// order per axis.  fourier_inverse is the exact inverse.
std::vector<std::complex<double>> fourier_forward(const SpatialField& field);
void fourier_inverse(std::span<const std::complex<double>> ghat, SpatialField& field);

/// Convection right-hand side: h[k,j] such that the semi-discrete system
/// reads d f / dt = -h + Q/eps.  Spectral differentiation of the
/// degree-coupled flux along every axis; Nyquist mode zeroed.
void advection_rhs(const SpatialField& field, SpatialField& out);

/// Domain totals of the collision invariants (rectangle rule in x):
/// mass, momentum, kinetic energy (integral of |v|^2 f / here without 1/2).
struct DomainTotals {
  double mass = 0.0;
  std::array<double, 3> momentum = {0.0, 0.0, 0.0};
  double energy = 0.0;
};
DomainTotals domain_totals(const SpatialField& field);

/// Domain-averaged macroscopic state derived from the totals.
MacroState mean_state(const SpatialField& field);

}  // namespace hermspec
