#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hermspec/basis.hpp"
#include "hermspec/quadrature.hpp"
#include "support/oracles.hpp"

using namespace hermspec;

TEST_CASE("multi-index ranking is graded lexicographic") {
  CHECK(rank({0, 0, 0}, 4) == 0);
  CHECK(rank({0, 0, 1}, 4) == 1);
  CHECK(rank({0, 1, 0}, 4) == 2);
  CHECK(rank({1, 0, 0}, 4) == 3);
  CHECK(term_count(4) == 35);
  CHECK_THROWS_AS(rank({3, 2, 0}, 4), NumericError);
}

TEST_CASE("rank/unrank are inverse bijections up to N = 10") {
  for (int N = 0; N <= 10; ++N) {
    std::vector<bool> seen(term_count(N), false);
    for_each_index(N, [&](std::int64_t r, int k1, int k2, int k3) {
      const MultiIndex k{k1, k2, k3};
      CHECK(rank(k, N) == r);
      CHECK(unrank(r, N) == k);
      CHECK(!seen[r]);
      seen[r] = true;
    });
    for (bool s : seen) CHECK(s);
  }
}

TEST_CASE("gauss_hermite closed forms") {
  const Quadrature1D q1 = gauss_hermite(1);
  CHECK(q1.nodes[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(q1.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));

  const Quadrature1D q2 = gauss_hermite(2);
  CHECK(q2.nodes[0] == doctest::Approx(-1.0 / std::numbers::sqrt2).epsilon(1e-13));
  CHECK(q2.nodes[1] == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-13));
  CHECK(q2.weights[0] == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-13));

  // Gaussian fourth moment from the 3-point rule.
  const Quadrature1D q3 = gauss_hermite(3);
  double m4 = 0.0;
  for (std::size_t i = 0; i < q3.size(); ++i) m4 += q3.weights[i] * std::pow(q3.nodes[i], 4);
  CHECK(m4 == doctest::Approx(0.75 * std::sqrt(std::numbers::pi)).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_hermite(0), NumericError);
  CHECK_THROWS_AS(gauss_hermite(201), NumericError);
}

TEST_CASE("gauss_hermite weight sums and polynomial exactness") {
  for (int n : {5, 20, 64}) {
    const Quadrature1D q = gauss_hermite(n);
    double sum = 0.0;
    for (double w : q.weights) sum += w;
    CHECK(std::abs(sum - std::sqrt(std::numbers::pi)) < 1e-13);

    // Monomial moments of exp(-x^2): odd vanish, even are
    // Gamma((m+1)/2).  Exact through degree 2n-1; the tolerance scales
    // with the magnitude of the summed terms.
    for (int m = 0; m <= std::min(2 * n - 1, 20); ++m) {
      double got = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) got += q.weights[i] * std::pow(q.nodes[i], m);
      const double want = (m % 2 == 1) ? 0.0 : std::tgamma((m + 1) / 2.0);
      const double scale = std::tgamma((m + 2.0) / 2.0) + 1.0;
      CHECK(std::abs(got - want) < 1e-12 * scale);
    }
  }
}

TEST_CASE("half-line rule reproduces Gamma-function moments") {
  for (double s : {0.0, 5.0 / 9.0, 1.0}) {
    const Quadrature1D q = half_line_rule(s, 14);
    for (int m = 0; m <= 27; ++m) {
      double got = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) got += q.weights[i] * std::pow(q.nodes[i], m);
      // integral r^(m+2+s) exp(-r^2/4) dr = 2^(m+2+s) Gamma((m+3+s)/2)
      const double want = std::pow(2.0, m + 2.0 + s) * std::tgamma((m + 3.0 + s) / 2.0);
      CHECK(std::abs(got - want) < 1e-11 * want);
    }
  }
}

TEST_CASE("sphere rule integrates spherical polynomials exactly") {
  const SphereRule rule = sphere_rule(14);
  double sum = 0.0;
  for (double w : rule.weights) sum += w;
  CHECK(sum == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));

  // Even monomial x^2 y^4: closed form 4 pi * 3 / 105.
  double m24 = 0.0, modd = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& p = rule.points[i];
    m24 += rule.weights[i] * p[0] * p[0] * std::pow(p[1], 4);
    modd += rule.weights[i] * p[0] * p[1] * p[2] * p[2];
  }
  CHECK(m24 == doctest::Approx(4.0 * std::numbers::pi / 35.0).epsilon(1e-12));
  CHECK(std::abs(modd) < 1e-14);
}

TEST_CASE("1D basis values: parity, closed forms, weighted/unweighted relation") {
  CHECK(eval_basis_1d(3, 0.7, 0.0)[1] == 0.0);
  CHECK(eval_basis_1d(0, 1.0, 0.0)[0] ==
        doctest::Approx(std::pow(2.0 * std::numbers::pi, -0.25)).epsilon(1e-10));
  CHECK(eval_poly_1d(0, 1.0, 0.0)[0] ==
        doctest::Approx(std::pow(2.0 * std::numbers::pi, -0.25)).epsilon(1e-10));

  for (double beta : {0.5, 1.0, 2.0})
    for (double v : {-2.3, -0.4, 0.9, 3.7}) {
      const auto h = eval_basis_1d(10, beta, v);
      const auto hm = eval_basis_1d(10, beta, -v);
      const auto p = eval_poly_1d(10, beta, v);
      CHECK(p[1] / p[0] == doctest::Approx(beta * v).epsilon(1e-13));
      const double weight = std::exp(-0.5 * beta * beta * v * v);
      for (int k = 0; k <= 10; ++k) {
        CHECK(hm[k] == doctest::Approx(std::pow(-1.0, k) * h[k]).epsilon(1e-12));
        if (std::abs(beta * v) <= 6.0)
          CHECK(h[k] == doctest::Approx(p[k] * weight).epsilon(1e-12));
      }
    }
}

TEST_CASE("eval_poly_1d flags overflow") {
  CHECK_THROWS_AS(eval_poly_1d(60, 1.0, 1e8), NumericError);
}

TEST_CASE("orthogonality of dual pairs under quadrature") {
  // Stable form: fold half the compensating Gaussian into each weighted
  // basis value so that every factor stays O(1) at the extreme nodes.
  const Quadrature1D gh = gauss_hermite(40);
  for (double beta : {0.5, 1.0, 2.0}) {
    std::vector<std::vector<double>> basis(gh.size());
    std::vector<double> wc(gh.size());
    for (std::size_t q = 0; q < gh.size(); ++q) {
      const double x = gh.nodes[q];
      const double v = std::numbers::sqrt2 * x / beta;
      basis[q] = eval_basis_1d(12, beta, v);
      for (double& b : basis[q]) b *= std::exp(0.5 * x * x);
      wc[q] = gh.weights[q] * std::exp(x * x);
    }
    for (int l = 0; l <= 12; ++l)
      for (int k = 0; k <= 12; ++k) {
        double acc = 0.0;
        for (std::size_t q = 0; q < gh.size(); ++q) acc += wc[q] * basis[q][l] * basis[q][k];
        acc *= std::numbers::sqrt2 / beta;
        CHECK(std::abs(acc - (l == k ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("eval_f: point values and linearity") {
  const BasisSpec spec(4, 1.3, {0.2, -0.1, 0.4});
  CoeffVector unit(spec);
  unit.data[0] = 1.0;
  CHECK(eval_f(unit, spec.zeta) ==
        doctest::Approx(std::pow(spec.beta, 1.5) * std::pow(2.0 * std::numbers::pi, -0.75))
            .epsilon(1e-13));

  CoeffVector zero(spec);
  CHECK(eval_f(zero, {0.3, 2.0, -1.0}) == 0.0);

  const CoeffVector c1 = oracle::random_coeffs(spec, 11);
  const CoeffVector c2 = oracle::random_coeffs(spec, 22);
  CoeffVector mix(spec);
  const double a = 0.7, b = -1.9;
  for (std::int64_t r = 0; r < spec.size(); ++r) mix.data[r] = a * c1.data[r] + b * c2.data[r];
  for (const auto& v : {std::array<double, 3>{0.1, 0.2, 0.3}, {-1.0, 2.0, 0.5}}) {
    CHECK(eval_f(mix, v) ==
          doctest::Approx(a * eval_f(c1, v) + b * eval_f(c2, v)).epsilon(1e-13));
  }
}

TEST_CASE("even densities project with vanishing odd-degree coefficients") {
  const BasisSpec spec(6, 0.9);
  auto f = [](const std::array<double, 3>& v) {
    const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    return std::exp(-0.7 * v2) * (1.0 + 0.3 * v2);
  };
  const CoeffVector c = oracle::project_by_quadrature(f, spec, 48, 0.9);
  for_each_index(spec.N, [&](std::int64_t r, int k1, int k2, int k3) {
    if ((k1 + k2 + k3) % 2 == 1) CHECK(std::abs(c.data[r]) < 1e-12);
    if (k1 % 2 == 1 || k2 % 2 == 1 || k3 % 2 == 1) CHECK(std::abs(c.data[r]) < 1e-12);
  });
}

TEST_CASE("advection speed: closed forms and scaling") {
  CHECK(advection_speed(0, 2.0, -0.7) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(advection_speed(1, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(advection_speed(1, 1.0, 0.5) == doctest::Approx(1.5).epsilon(1e-12));
  for (int N : {2, 5, 9}) {
    const double s1 = advection_speed(N, 1.0, 0.0);
    const double s2 = advection_speed(N, 2.0, 0.0);
    CHECK(s2 == doctest::Approx(0.5 * s1).epsilon(1e-12));
  }
  // strictly increasing in N
  double prev = advection_speed(1, 1.0, 0.0);
  for (int N = 2; N <= 20; ++N) {
    const double cur = advection_speed(N, 1.0, 0.0);
    CHECK(cur > prev);
    prev = cur;
  }
}
