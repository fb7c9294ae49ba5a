#pragma once

#include <span>
#include <vector>

#include "hermspec/multi_index.hpp"

namespace hermspec {

/// Values of the scaled, Gaussian-weighted Hermite functions
/// [H_0^beta(v), ..., H_N^beta(v)] * exp(-beta^2 v^2 / 2), computed by the
/// weighted three-term recurrence (stable at large |beta*v|).
std::vector<double> eval_basis_1d(int N, double beta, double v);

/// Same without the exponential factor (the dual/test polynomials).
/// Throws NumericError if values overflow (very large |beta*v| and N).
std::vector<double> eval_poly_1d(int N, double beta, double v);

// In-place variants used by hot loops; out must hold N+1 values.
void eval_basis_1d(int N, double beta, double v, double* out);
void eval_poly_1d(int N, double beta, double v, double* out);

/// Hermite expansion coefficients of a distribution at one point in space.
struct CoeffVector {
  BasisSpec spec;
  std::vector<double> data;

  CoeffVector() = default;
  explicit CoeffVector(const BasisSpec& s) : spec(s), data(s.size(), 0.0) {}
  CoeffVector(const BasisSpec& s, std::vector<double> d);

  double& operator[](std::int64_t r) { return data[r]; }
  double operator[](std::int64_t r) const { return data[r]; }
};

/// Pointwise evaluation of the expansion at velocity v.
double eval_f(const CoeffVector& coeffs, const std::array<double, 3>& v);

/// Evaluation from a raw coefficient slice sharing a basis (field points).
double eval_f(const BasisSpec& spec, std::span<const double> coeffs, const std::array<double, 3>& v);

/// Maximum 1D characteristic speed of the advection coupling: |zeta_d|
/// plus the spectral radius of the tridiagonal degree-coupling matrix
/// with off-diagonal entries sqrt(k+1)/beta.
double advection_speed(int N, double beta, double zeta_d);

}  // namespace hermspec
