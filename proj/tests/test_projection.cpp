#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hermspec/moments.hpp"
#include "hermspec/transfer.hpp"
#include "support/oracles.hpp"

using namespace hermspec;

TEST_CASE("transfer matrix: identity, diagonal closed form, structure") {
  const TransferMatrix id = build_transfer(6, 1.3, 1.3);
  for (int l = 0; l <= 6; ++l)
    for (int k = 0; k <= 6; ++k) CHECK(id(l, k) == (l == k ? 1.0 : 0.0));

  const TransferMatrix tm = build_transfer(8, 1.0, 4.0);
  CHECK(tm(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  for (int l = 0; l <= 8; ++l)
    CHECK(tm(l, l) == doctest::Approx(std::pow(4.0, l + 0.5)).epsilon(1e-13));

  // Upper triangle and odd offsets vanish identically (never computed).
  for (int l = 0; l <= 8; ++l)
    for (int k = 0; k <= 8; ++k)
      if (l < k || (l + k) % 2 == 1) CHECK(tm(l, k) == 0.0);

  CHECK_THROWS_AS(build_transfer(4, -1.0, 2.0), NumericError);
}

TEST_CASE("every transfer entry matches its defining integral") {
  for (auto [bf, bt] : {std::pair{1.0, 0.7}, {1.0, 1.4}, {0.5, 2.0}}) {
    const TransferMatrix tm = build_transfer(16, bf, bt);
    for (int l = 0; l <= 16; ++l)
      for (int k = 0; k <= 16; ++k) {
        const double want = oracle::transfer_entry_by_quadrature(l, k, bf, bt);
        CHECK(std::abs(tm(l, k) - want) < 1e-12 * std::max(1.0, std::abs(want)));
      }
  }
}

TEST_CASE("three-term identity holds on computed entries") {
  // Independent recurrence (not used in construction): for l >= 1,
  // T[l][k] = r sqrt((k+1)/l) T[l-1][k+1] + r sqrt(k/l) T[l-1][k-1]
  //           - sqrt((l-1)/l) T[l-2][k].
  for (auto [bf, bt] : {std::pair{1.0, 0.8}, {0.6, 1.1}}) {
    const int N = 12;
    const TransferMatrix tm = build_transfer(N, bf, bt);
    const double r = bt / bf;
    for (int l = 1; l <= N; ++l)
      for (int k = 0; k <= N; ++k) {
        double want = 0.0;
        if (k + 1 <= N) want += r * std::sqrt((k + 1.0) / l) * tm(l - 1, k + 1);
        if (k >= 1) want += r * std::sqrt(double(k) / l) * tm(l - 1, k - 1);
        if (l >= 2) want -= std::sqrt((l - 1.0) / l) * tm(l - 2, k);
        CHECK(std::abs(tm(l, k) - want) < 1e-11 * std::max(1.0, std::abs(tm(l, k))));
      }
  }
}

TEST_CASE("project_scale at the same beta is the identity") {
  const BasisSpec spec(6, 0.9, {0.1, 0.0, -0.2});
  const CoeffVector c = oracle::random_coeffs(spec, 7);
  const CoeffVector p = project_scale(c, 0.9);
  for (std::int64_t r = 0; r < spec.size(); ++r)
    CHECK(p.data[r] == doctest::Approx(c.data[r]).epsilon(1e-15));
}

TEST_CASE("projection preserves every polynomial moment up to degree 3") {
  const BasisSpec spec(6, 1.0);
  const CoeffVector c = oracle::random_coeffs(spec, 99);
  const CoeffVector p = project_scale(c, 0.8);
  for (int a1 = 0; a1 <= 3; ++a1)
    for (int a2 = 0; a2 + a1 <= 3; ++a2)
      for (int a3 = 0; a3 + a1 + a2 <= 3; ++a3) {
        const double before = raw_moment(c, {a1, a2, a3});
        const double after = raw_moment(p, {a1, a2, a3});
        CHECK(std::abs(before - after) < 1e-11 * std::max(1.0, std::abs(before)));
      }
}

TEST_CASE("macroscopic state is invariant under rescaling") {
  const BasisSpec spec(6, 1.0);
  CoeffVector c = oracle::random_coeffs(spec, 5, 0.05);
  c.data[0] += 1.0;  // keep the density positive
  const MacroState before = macro_from_coeffs(c);
  const CoeffVector p = project_scale(c, 0.8);
  const MacroState after = macro_from_coeffs(p);
  CHECK(std::abs(before.rho - after.rho) < 1e-12);
  for (int d = 0; d < 3; ++d) CHECK(std::abs(before.u[d] - after.u[d]) < 1e-12);
  CHECK(std::abs(before.theta - after.theta) < 1e-12);
}

TEST_CASE("projected coefficients match the defining integrals") {
  // Project a band-limited density both ways and compare the new
  // coefficients against direct quadrature of the target-basis integrals.
  const BasisSpec from(8, 1.0);
  CoeffVector c = oracle::random_coeffs(from, 31, 0.1);
  c.data[0] += 1.0;
  const double bt = 0.75;
  const CoeffVector p = project_scale(c, bt);
  auto f = [&](const std::array<double, 3>& v) { return eval_f(c, v); };
  const CoeffVector want = oracle::project_by_quadrature(f, BasisSpec(8, bt), 48, 0.7);
  for (std::int64_t r = 0; r < from.size(); ++r)
    CHECK(std::abs(p.data[r] - want.data[r]) < 1e-10 * std::max(1.0, std::abs(want.data[r])));
}

TEST_CASE("composition of projections agrees on retained degrees") {
  const BasisSpec spec(8, 1.0);
  CoeffVector c = oracle::random_coeffs(spec, 13, 0.2);
  // support only on degrees <= N-2 so one projection step loses nothing
  for (std::int64_t r = degree_offset(7); r < spec.size(); ++r) c.data[r] = 0.0;

  const CoeffVector two_step = project_scale(project_scale(c, 0.9), 0.81);
  const CoeffVector one_step = project_scale(c, 0.81);
  for (std::int64_t r = 0; r < degree_offset(7); ++r)
    CHECK(std::abs(two_step.data[r] - one_step.data[r]) < 1e-10);
}

TEST_CASE("round trip touches only the top degrees") {
  const BasisSpec spec(6, 1.0);
  CoeffVector c(spec);
  maxwellian_coeffs(1.0, {0.2, 0.0, 0.0}, 0.9, spec, c.data);
  const CoeffVector back = project_scale(project_scale(c, 1.1), 1.0);
  for (std::int64_t r = 0; r < degree_offset(5); ++r)
    CHECK(std::abs(back.data[r] - c.data[r]) < 1e-10);
  const MacroState before = macro_from_coeffs(c), after = macro_from_coeffs(back);
  CHECK(std::abs(before.rho - after.rho) < 1e-12);
  CHECK(std::abs(before.theta - after.theta) < 1e-12);
}
