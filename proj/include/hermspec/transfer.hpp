#pragma once

#include <span>
#include <vector>

#include "hermspec/basis.hpp"

namespace hermspec {

/// One-dimensional change-of-scaling matrix T[l][k] = integral of the dual
/// polynomial at beta_to against the weighted basis function at beta_from.
/// Lower triangular; entries with l+k odd vanish identically.
struct TransferMatrix {
  int N = 0;
  double beta_from = 1.0;
  double beta_to = 1.0;
  std::vector<double> T;  // (N+1)^2, row-major [l][k]

  double operator()(int l, int k) const { return T[static_cast<std::size_t>(l) * (N + 1) + k]; }
};

/// Builds the transfer matrix in O(N^2): the diagonal has the closed form
/// (beta_to/beta_from)^(l+1/2); the strict lower triangle follows from the
/// two-term recurrence T[l][k] = sqrt(l(k+1))/(l-k) (r - 1/r) T[l-1][k+1]
/// with r = beta_to/beta_from.  Returns exact identity when the ratio is
/// within 1e-12 of one.
TransferMatrix build_transfer(int N, double beta_from, double beta_to);

/// Applies the tensorized transfer to one coefficient slice.  Three
/// sequential 1D contractions, O(N^4) total; `in` and `out` hold
/// term_count(N) values and must not alias.
void apply_transfer(const TransferMatrix& tm, std::span<const double> in, std::span<double> out);

/// Orthogonal projection of an expansion onto the same-order space with a
/// new scaling factor.  Preserves every polynomial moment up to degree N.
CoeffVector project_scale(const CoeffVector& coeffs, double beta_to);

}  // namespace hermspec
