#pragma once

#include <filesystem>
#include <limits>
#include <vector>

#include "hermspec/basis.hpp"
#include "hermspec/kernels.hpp"

namespace hermspec {

/// Quadrature orders for the tensor assembly.  Zero fields are replaced by
/// defaults that make the assembly exact for polynomial integrands:
///   centroid Gauss-Hermite and radial rules of degree >= 3*N0,
///   sphere rules of degree >= 3*N0 (sigma) and >= 2*N0 resp. 4*N0 (omega).
struct QuadOrders {
  int n_gauss = 0;
  int n_radial = 0;
  int sphere_degree = 0;
  int omega_degree = 0;
};

/// Dense Galerkin tensor of the quadratic collision operator at beta = 1,
/// zeta = 0, plus the BGK relaxation rate of the linearized operator.
/// Entry layout: A[(k*T + i)*T + j] with T = term_count(N0).
struct CollisionTensor {
  KernelSpec kernel;
  int N0 = 0;
  QuadOrders orders;
  std::vector<double> A;
  double nu = 0.0;                    // spectral radius at the standard Maxwellian
  double conservation_residual = 0.0; // assembly diagnostic (relative)

  std::int64_t terms() const { return term_count(N0); }
  double entry(std::int64_t k, std::int64_t i, std::int64_t j) const {
    const std::int64_t T = terms();
    return A[(k * T + i) * T + j];
  }
};

QuadOrders default_orders(const KernelSpec& kernel, int N0);

/// Assembles the tensor by quadrature in the centroid/relative-velocity
/// frame: Gauss-Hermite in the centroid, a half-line Gauss rule absorbing
/// the r^2 Jacobian, the kernel speed power and the Gaussian factor, and
/// product sphere rules for the relative directions.  Angle-dependent
/// kernels enter through their Legendre coefficients (Funk-Hecke), which
/// keeps the grazing-singular gain and loss parts combined.
CollisionTensor assemble_tensor(const KernelSpec& kernel, int N0, QuadOrders orders = {},
                                int threads = 1);

/// Single tensor entry at an arbitrary scaling factor by direct quadrature
/// (used to validate the beta-scaling law against scale_tensor_factor).
double tensor_entry_quadrature(const KernelSpec& kernel, const MultiIndex& i, const MultiIndex& j,
                               const MultiIndex& k, double beta, QuadOrders orders = {});

/// Scaling law of the tensor: A at scaling beta equals
/// beta^(-3/2 - s) * A at beta = 1, with s the kernel homogeneity exponent.
double scale_tensor_factor(const KernelSpec& kernel, double beta);

/// Largest conservation-column violation of the tensor relative to its
/// largest entry (mass, momentum and energy columns must vanish).
double conservation_residual(const CollisionTensor& tensor);

/// Spectral radius of the linearized collision operator around the
/// Maxwellian (rho, u, theta) in the assembly frame, by power iteration
/// (relative tolerance 1e-8, at most 1e4 iterations).
double spectral_radius_nu(const CollisionTensor& tensor, double rho, const std::array<double, 3>& u,
                          double theta);

/// Same linearization evaluated in an arbitrary basis: the tensor is
/// beta-scaled and the Maxwellian expanded in (spec.beta, spec.zeta).
double nu_for_basis(const CollisionTensor& tensor, double rho, const std::array<double, 3>& u,
                    double theta, const BasisSpec& spec);

/// Combined collision model: quadratic double contraction for degrees up
/// to N0, BGK relaxation nu*(M_k - f_k) for higher degrees.  `nu` may be
/// precomputed by the caller; if NaN it is derived from the local state.
CoeffVector collide(const CoeffVector& coeffs, const CollisionTensor& tensor,
                    double nu = std::numeric_limits<double>::quiet_NaN());

/// In-place form over a raw coefficient slice (field hot path).
void collide(const BasisSpec& spec, std::span<const double> coeffs, const CollisionTensor& tensor,
             double nu, std::span<double> out);

// Tensor cache file ("HBCT", little-endian).  The loader verifies magic,
// version and one randomly chosen conservation column.
void save_tensor(const CollisionTensor& tensor, const std::filesystem::path& path);
CollisionTensor load_tensor(const std::filesystem::path& path);

/// Content-addressed cache filename for a (kernel, N0, orders) triple.
std::string tensor_cache_name(const KernelSpec& kernel, int N0, QuadOrders orders = {});

}  // namespace hermspec
