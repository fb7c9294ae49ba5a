#include "hermspec/transfer.hpp"

#include <cmath>

#include "hermspec/errors.hpp"

namespace hermspec {

TransferMatrix build_transfer(int N, double beta_from, double beta_to) {
  if (!(beta_from > 0.0) || !(beta_to > 0.0))
    throw NumericError("build_transfer: scaling factors must be positive");
  TransferMatrix tm;
  tm.N = N;
  tm.beta_from = beta_from;
  tm.beta_to = beta_to;
  tm.T.assign(static_cast<std::size_t>(N + 1) * (N + 1), 0.0);
  auto at = [&](int l, int k) -> double& { return tm.T[static_cast<std::size_t>(l) * (N + 1) + k]; };

  const double r = beta_to / beta_from;
  if (std::abs(r - 1.0) < 1e-12) {
    for (int l = 0; l <= N; ++l) at(l, l) = 1.0;
    return tm;
  }

  for (int l = 0; l <= N; ++l) at(l, l) = std::pow(r, l + 0.5);
  const double c = r - 1.0 / r;
  for (int d = 2; d <= N; d += 2)
    for (int k = 0; k + d <= N; ++k) {
      const int l = k + d;
      at(l, k) = std::sqrt(double(l) * (k + 1)) / d * c * at(l - 1, k + 1);
    }
  return tm;
}

void apply_transfer(const TransferMatrix& tm, std::span<const double> in, std::span<double> out) {
  const int N = tm.N;
  const int n1 = N + 1;
  auto idx = [n1](int a, int b, int c) { return (static_cast<std::size_t>(a) * n1 + b) * n1 + c; };

  // Scratch cubes: only entries with index sum <= N are touched.
  thread_local std::vector<double> cube_a, cube_b;
  cube_a.assign(static_cast<std::size_t>(n1) * n1 * n1, 0.0);
  cube_b.assign(static_cast<std::size_t>(n1) * n1 * n1, 0.0);

  for_each_index(N, [&](std::int64_t r, int k1, int k2, int k3) { cube_a[idx(k1, k2, k3)] = in[r]; });

  // Contract axis 1, then 2, then 3.  Parity halves each inner sum.
  for (int k2 = 0; k2 <= N; ++k2)
    for (int k3 = 0; k3 + k2 <= N; ++k3)
      for (int l1 = 0; l1 <= N - k2 - k3; ++l1) {
        double s = 0.0;
        for (int k1 = l1; k1 >= 0; k1 -= 2) s += tm(l1, k1) * cube_a[idx(k1, k2, k3)];
        cube_b[idx(l1, k2, k3)] = s;
      }
  std::fill(cube_a.begin(), cube_a.end(), 0.0);
  for (int l1 = 0; l1 <= N; ++l1)
    for (int k3 = 0; k3 + l1 <= N; ++k3)
      for (int l2 = 0; l2 <= N - l1 - k3; ++l2) {
        double s = 0.0;
        for (int k2 = l2; k2 >= 0; k2 -= 2) s += tm(l2, k2) * cube_b[idx(l1, k2, k3)];
        cube_a[idx(l1, l2, k3)] = s;
      }
  for_each_index(N, [&](std::int64_t r, int l1, int l2, int l3) {
    double s = 0.0;
    for (int k3 = l3; k3 >= 0; k3 -= 2) s += tm(l3, k3) * cube_a[idx(l1, l2, k3)];
    out[r] = s;
  });
}

CoeffVector project_scale(const CoeffVector& coeffs, double beta_to) {
  if (!(beta_to > 0.0)) throw NumericError("project_scale: beta_to must be positive");
  const TransferMatrix tm = build_transfer(coeffs.spec.N, coeffs.spec.beta, beta_to);
  CoeffVector out(BasisSpec(coeffs.spec.N, beta_to, coeffs.spec.zeta));
  apply_transfer(tm, coeffs.data, out.data);
  return out;
}

}  // namespace hermspec
