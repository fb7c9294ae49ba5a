#pragma once

#include <array>
#include <vector>

namespace hermspec {

/// Nodes and weights of a Gauss rule on the real line.
struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Hermite rule for the weight exp(-x^2) on R, exact for polynomials
/// of degree <= 2n-1.  Golub-Welsch on the Jacobi matrix.
Quadrature1D gauss_hermite(int n);

/// Gauss-Legendre rule on [-1,1], exact for degree <= 2n-1.
Quadrature1D gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a,b].
Quadrature1D gauss_legendre(int n, double a, double b);

/// Gauss rule on [0,inf) for the weight r^(2+s) exp(-(a*r)^2), exact for
/// polynomials of degree <= 2n-1.  Recurrence coefficients come from a
/// discretized Stieltjes procedure, nodes/weights from Golub-Welsch.
/// Requires s > -3 so the weight is integrable.  The default a = 1/2
/// matches the relative-speed Gaussian of the collision integral.
Quadrature1D half_line_rule(double s, int n, double gauss_scale = 0.5);

/// Quadrature on the unit sphere, exact for spherical polynomials up to
/// the stated total degree.  Product construction: Gauss-Legendre in
/// cos(theta) and a uniform azimuth grid; antipodally symmetric.
struct SphereRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;  // sum to 4*pi

  std::size_t size() const { return points.size(); }
};

SphereRule sphere_rule(int degree);

}  // namespace hermspec
