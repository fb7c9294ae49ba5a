#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hermspec/field.hpp"

namespace hermspec {

/// Tail width monitored by the frequency indicator: max(floor(N/3), 2).
int indicator_tail_width(int N);

/// Frequency indicator: square root of the coefficient energy in the top
/// tail degrees over the total, in [0,1].  Throws on an all-zero input.
double indicator_hom(const CoeffVector& coeffs);

/// Field version: double sums over degrees and collocation points.
/// Reduces to indicator_hom for a single point.
double indicator_field(const SpatialField& field);

/// Same indicator evaluated from the Fourier-side coefficients; agrees
/// with indicator_field to roundoff (Parseval).
double indicator_field_fourier(const SpatialField& field);

/// Per-degree coefficient energy sums over all points (length N+1).
std::vector<double> degree_energy(const SpatialField& field);

/// Indicator of the order-Ntrial truncation, from precomputed sums.
double indicator_from_energy(const std::vector<double>& energy, int Ntrial);

/// Thresholds and bounds of the two adaptive algorithms.
struct AdaptiveParams {
  int N_min = 2;
  int N_max = 24;
  int delta_N = 1;
  double eta0_p = 0.01;
  double etal_p = 0.3;
  double etah_p = 1.5;
  double F_l0 = 1e-9;
  double F_h0 = 1e-6;
  double etal_s = 0.9995;
  double etah_s = 1.0005;
  double q = 0.9995;
  double beta_min = 0.15;
  double beta_max = 2.0;

  void validate() const;
};

/// Exponential mesh of admissible scaling factors {q^m} within
/// [beta_min, beta_max]; positions are tracked by the integer exponent to
/// keep repeated moves drift-free.
struct ScalingMesh {
  double q = 0.9995;
  double beta_min = 0.15;
  double beta_max = 2.0;
  int m_lo = 0;  // largest beta
  int m_hi = 0;  // smallest beta

  static ScalingMesh make(double q, double beta_min, double beta_max);
  double beta_of(int m) const;
  int nearest(double beta) const;
  int size() const { return m_hi - m_lo + 1; }
};

struct AdjustmentRecord {
  double t = 0.0;
  std::string kind;  // "scale" or "order"
  double old_value = 0.0;
  double new_value = 0.0;
  double indicator_before = 0.0;
  double indicator_after = 0.0;
};

/// Reference indicators and the adjustment history.
struct AdaptiveState {
  double F_ref_p = 0.0;
  double F_ref_s = 0.0;
  int mesh_m = 0;  // current position on the scaling mesh
  std::vector<AdjustmentRecord> log;
};

/// Order adaptation: raises N while the indicator exceeds the upper
/// threshold (new degrees zero), lowers it while the trial indicator stays
/// below the lower threshold.  Clamps to [N_min, N_max], never throws.
/// Returns true when N changed.
bool p_adapt(SpatialField& field, AdaptiveState& state, const AdaptiveParams& params, double t);

/// Scaling adaptation: bidirectional line search on the mesh, moving to
/// whichever neighbour lowers the field indicator until a local minimum
/// or a mesh bound.  Candidate projections are evaluated once and the
/// winner is kept.  Returns true when beta changed.
bool scale_adapt(SpatialField& field, AdaptiveState& state, const AdaptiveParams& params,
                 const ScalingMesh& mesh, double t);

/// Exhaustive argmin of the indicator over the whole mesh; ties prefer the
/// larger beta.  `generate` fills a field for the given scaling factor.
/// Initializes both reference indicators to the winning value.
struct InitBetaResult {
  int mesh_m = 0;
  double beta = 0.0;
  double indicator = 0.0;
};
InitBetaResult init_beta(const std::function<void(double beta, SpatialField&)>& generate,
                         SpatialField& field, const ScalingMesh& mesh, AdaptiveState& state);

}  // namespace hermspec
