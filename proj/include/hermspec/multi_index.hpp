#pragma once

#include <array>
#include <cstdint>

#include "hermspec/errors.hpp"

namespace hermspec {

/// Multi-index (k1,k2,k3) of a tensor-product basis function.
struct MultiIndex {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  int degree() const { return k1 + k2 + k3; }
  bool operator==(const MultiIndex&) const = default;
};

/// Number of multi-indices with |k| <= N.
constexpr std::int64_t term_count(int N) {
  return static_cast<std::int64_t>(N + 1) * (N + 2) * (N + 3) / 6;
}

/// Rank of the first multi-index of total degree d (== term_count(d-1)).
constexpr std::int64_t degree_offset(int d) {
  return static_cast<std::int64_t>(d) * (d + 1) * (d + 2) / 6;
}

// Coefficients are stored graded by |k|, ties broken by ascending
// lexicographic (k1,k2,k3).  The tail degrees monitored by the frequency
// indicator are then one contiguous slice.
inline std::int64_t rank(const MultiIndex& k, int N) {
  const int d = k.degree();
  if (k.k1 < 0 || k.k2 < 0 || k.k3 < 0 || d > N)
    throw NumericError("rank: multi-index outside |k| <= N");
  const std::int64_t before_k1 =
      static_cast<std::int64_t>(k.k1) * (d + 1) - static_cast<std::int64_t>(k.k1) * (k.k1 - 1) / 2;
  return degree_offset(d) + before_k1 + k.k2;
}

inline MultiIndex unrank(std::int64_t r, int N) {
  if (r < 0 || r >= term_count(N)) throw NumericError("unrank: rank out of range");
  int d = 0;
  while (degree_offset(d + 1) <= r) ++d;
  std::int64_t rem = r - degree_offset(d);
  for (int k1 = 0; k1 <= d; ++k1) {
    const std::int64_t block = d - k1 + 1;
    if (rem < block) return {k1, static_cast<int>(rem), d - k1 - static_cast<int>(rem)};
    rem -= block;
  }
  throw NumericError("unrank: internal inconsistency");
}

/// Visits all multi-indices with |k| <= N in rank order.
/// fn(r, k1, k2, k3) with r the running rank.
template <class Fn>
inline void for_each_index(int N, Fn&& fn) {
  std::int64_t r = 0;
  for (int d = 0; d <= N; ++d)
    for (int k1 = 0; k1 <= d; ++k1)
      for (int k2 = 0; k2 <= d - k1; ++k2) fn(r++, k1, k2, d - k1 - k2);
}

/// Scaled Hermite basis parameters: truncation degree N, scaling factor
/// beta (inverse-velocity units) and moving center zeta (velocity units).
struct BasisSpec {
  int N = 0;
  double beta = 1.0;
  std::array<double, 3> zeta = {0.0, 0.0, 0.0};

  BasisSpec() = default;
  BasisSpec(int N_, double beta_, std::array<double, 3> zeta_ = {0.0, 0.0, 0.0})
      : N(N_), beta(beta_), zeta(zeta_) {
    if (N < 0) throw NumericError("BasisSpec: N must be nonnegative");
    if (!(beta > 0.0)) throw NumericError("BasisSpec: beta must be positive");
  }

  std::int64_t size() const { return term_count(N); }
  bool operator==(const BasisSpec&) const = default;
};

}  // namespace hermspec
