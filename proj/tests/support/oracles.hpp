#pragma once

#include <functional>
#include <random>

#include "hermspec/basis.hpp"
#include "hermspec/kernels.hpp"
#include "hermspec/quadrature.hpp"

// Independent oracles used by the tests.  Everything here recomputes
// quantities from definitions (quadrature, Monte-Carlo, brute force) and
// never calls the production evaluation path it checks.
namespace oracle {

/// Coefficients of an arbitrary density by tensor Gauss-Hermite quadrature
/// of the defining integral.  quad_beta sets the quadrature scale (pick it
/// at or below the slowest Gaussian decay of f).
hermspec::CoeffVector project_by_quadrature(
    const std::function<double(const std::array<double, 3>&)>& f, const hermspec::BasisSpec& spec,
    int nodes_per_axis, double quad_beta);

/// Scalar integral of f over R^3 by the same compensated rule.
double integrate3(const std::function<double(const std::array<double, 3>&)>& f, int nodes_per_axis,
                  double quad_beta, const std::array<double, 3>& center = {0.0, 0.0, 0.0});

/// One-dimensional transfer entry by quadrature of its defining integral.
double transfer_entry_by_quadrature(int l, int k, double beta_from, double beta_to);

/// Collision tensor entry by the direct nested rule: tensor Gauss-Hermite
/// over both pre-collision velocities and a sphere rule for the
/// post-collision direction.  Angle-independent kernels only.
double tensor_entry_direct(const hermspec::KernelSpec& kernel, const hermspec::MultiIndex& i,
                           const hermspec::MultiIndex& j, const hermspec::MultiIndex& k,
                           int nodes_per_axis, int sphere_degree);

/// Monte-Carlo estimate of the same entry with its standard error.
struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};
McEstimate tensor_entry_mc(const hermspec::KernelSpec& kernel, const hermspec::MultiIndex& i,
                           const hermspec::MultiIndex& j, const hermspec::MultiIndex& k,
                           std::int64_t samples, std::uint64_t seed);

/// Uniform random coefficients in [-1,1], fixed seed.
hermspec::CoeffVector random_coeffs(const hermspec::BasisSpec& spec, std::uint64_t seed,
                                    double scale = 1.0);

/// Spearman rank correlation of two equally long series.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace oracle
