#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hermspec/errors.hpp"
#include "hermspec/kernels.hpp"
#include "hermspec/quadrature.hpp"

using namespace hermspec;

TEST_CASE("kernel closed forms and degeneracies") {
  const KernelSpec iso = KernelSpec::isotropic_maxwell(1.0);
  CHECK(kernel_eval(iso, 0.3, 0.7) ==
        doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(kernel_eval(iso, 5.0, 3.0) == kernel_eval(iso, 0.0, 0.1));

  const KernelSpec vhs0 = KernelSpec::vhs(0.0, 1.0);
  for (double g : {0.1, 1.0, 7.0})
    for (double chi : {0.2, 1.5, 3.0}) CHECK(kernel_eval(vhs0, g, chi) == kernel_eval(iso, g, chi));

  const KernelSpec vhs = KernelSpec::vhs(0.5, 2.0);
  CHECK(kernel_eval(vhs, 4.0, 1.0) == doctest::Approx(2.0 * 2.0 / (4.0 * std::numbers::pi)));

  CHECK_THROWS_AS(kernel_eval(iso, -1.0, 1.0), NumericError);
  CHECK_THROWS_AS(kernel_eval(iso, 1.0, 4.0), NumericError);
  CHECK_THROWS_AS(KernelSpec::ipl(2.0, 1.0), ConfigError);
}

TEST_CASE("homogeneity exponents") {
  CHECK(KernelSpec::isotropic_maxwell(1.0).homogeneity_exponent() == 0.0);
  CHECK(KernelSpec::vhs(0.4, 1.0).homogeneity_exponent() == 0.4);
  CHECK(KernelSpec::ipl(5.0, 1.0).homogeneity_exponent() == 0.0);
  CHECK(KernelSpec::ipl(10.0, 1.0).homogeneity_exponent() == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("deflection angle: limits and monotonicity") {
  CHECK(deflection_angle(10.0, 5.0) < 0.05);
  CHECK(deflection_angle(0.01, 5.0) > 3.0);
  CHECK(deflection_angle(0.5, 10.0) > deflection_angle(1.0, 10.0));
  CHECK(deflection_angle(1.0, 10.0) > deflection_angle(2.0, 10.0));
  // fine-grained monotonicity sweep
  for (double eta : {5.0, 10.0}) {
    double prev = deflection_angle(0.05, eta);
    for (double w = 0.1; w < 4.0; w += 0.05) {
      const double cur = deflection_angle(w, eta);
      CHECK(cur < prev);
      prev = cur;
    }
  }
  CHECK_THROWS_AS(deflection_angle(-1.0, 5.0), NumericError);
}

TEST_CASE("Maxwell-molecule kernel is speed independent") {
  const KernelSpec ipl5 = KernelSpec::ipl(5.0, 1.0);
  const double b1 = kernel_eval(ipl5, 1.0, 1.2);
  const double b2 = kernel_eval(ipl5, 2.0, 1.2);
  CHECK(b1 / b2 == doctest::Approx(1.0).epsilon(1e-12));

  const KernelSpec ipl10 = KernelSpec::ipl(10.0, 1.0);
  const double r = kernel_eval(ipl10, 2.0, 0.9) / kernel_eval(ipl10, 1.0, 0.9);
  CHECK(r == doctest::Approx(std::pow(2.0, 5.0 / 9.0)).epsilon(1e-10));
}

TEST_CASE("kernel_eval(IPL) is consistent with the scattering measure") {
  // B(1, chi(W0)) * sin(chi) * |dchi/dW0| must equal W0 * strength:
  // the angular factor is the Jacobian of the (W0, phi) parameterization.
  const KernelSpec ipl = KernelSpec::ipl(10.0, 1.0);
  for (double W0 : {0.4, 0.8, 1.3}) {
    const double chi = deflection_angle(W0, ipl.eta);
    const double h = 1e-5 * W0;
    const double dchi =
        (deflection_angle(W0 + h, ipl.eta) - deflection_angle(W0 - h, ipl.eta)) / (2.0 * h);
    const double lhs = kernel_eval(ipl, 1.0, chi) * std::sin(chi) * std::abs(dchi);
    CHECK(lhs == doctest::Approx(W0).epsilon(1e-5));
  }
}

TEST_CASE("slowest even relaxation mode reproduces the classical constant") {
  // -(3/2) * integral sin^2(chi(W0)) W0 dW0 for eta = 5 is the tabulated
  // Maxwell-molecule mode value -0.6543.
  double integral = 0.0;
  std::vector<double> edges = {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 15.0, 30.0, 60.0, 120.0};
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const Quadrature1D gl = gauss_legendre(40, edges[e], edges[e + 1]);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double chi = deflection_angle(gl.nodes[i], 5.0);
      integral += gl.weights[i] * std::sin(chi) * std::sin(chi) * gl.nodes[i];
    }
  }
  CHECK(-1.5 * integral == doctest::Approx(-0.6543).epsilon(5e-4));
}

TEST_CASE("angular Legendre integrals") {
  const auto iso = kernel_angular_integrals(KernelSpec::isotropic_maxwell(2.0), 4);
  CHECK(iso[0] == 0.0);
  for (int l = 1; l <= 4; ++l) CHECK(iso[l] == doctest::Approx(-2.0).epsilon(1e-14));

  // For eta = 5, c_2 = -3 pi * integral sin^2 chi W0 dW0 relates to the
  // mode constant: c_2 = 2 pi * (-0.6543) * ... = -2 pi * (2/3) * 0.6543 * 3/2
  const auto ipl = kernel_angular_integrals(KernelSpec::ipl(5.0, 1.0), 2);
  CHECK(ipl[0] == 0.0);
  CHECK(ipl[2] == doctest::Approx(-2.0 * std::numbers::pi * 0.6543).epsilon(1e-3));
}
