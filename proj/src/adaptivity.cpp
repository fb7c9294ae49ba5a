#include "hermspec/adaptivity.hpp"

#include <cmath>
#include <limits>

#include "hermspec/errors.hpp"
#include "hermspec/transfer.hpp"

namespace hermspec {

int indicator_tail_width(int N) { return std::max(N / 3, 2); }

std::vector<double> degree_energy(const SpatialField& field) {
  const int N = field.spec.N;
  std::vector<double> energy(N + 1, 0.0);
  const std::int64_t P = field.points(), T = field.spec.size();
  for (std::int64_t p = 0; p < P; ++p) {
    const double* f = field.data.data() + p * T;
    std::int64_t r = 0;
    for (int d = 0; d <= N; ++d) {
      double s = 0.0;
      const std::int64_t end = degree_offset(d + 1);
      for (; r < end; ++r) s += f[r] * f[r];
      energy[d] += s;
    }
  }
  return energy;
}

double indicator_from_energy(const std::vector<double>& energy, int Ntrial) {
  if (Ntrial < 2) throw NumericError("indicator: needs N >= 2");
  const int tail_from = Ntrial - indicator_tail_width(Ntrial) + 1;
  double tail = 0.0, total = 0.0;
  for (int d = 0; d <= Ntrial; ++d) {
    total += energy[d];
    if (d >= tail_from) tail += energy[d];
  }
  if (total == 0.0) throw NumericError("indicator: all coefficients are zero");
  return std::sqrt(tail / total);
}

double indicator_field(const SpatialField& field) {
  return indicator_from_energy(degree_energy(field), field.spec.N);
}

double indicator_hom(const CoeffVector& coeffs) {
  SpatialField f(coeffs.spec, 0, 1, {1, 1, 1});
  f.data = coeffs.data;
  return indicator_field(f);
}

double indicator_field_fourier(const SpatialField& field) {
  const std::vector<std::complex<double>> ghat = fourier_forward(field);
  const int N = field.spec.N;
  const std::int64_t P = field.points(), T = field.spec.size();
  std::vector<double> energy(N + 1, 0.0);
  for (std::int64_t p = 0; p < P; ++p) {
    std::int64_t r = 0;
    for (int d = 0; d <= N; ++d) {
      double s = 0.0;
      const std::int64_t end = degree_offset(d + 1);
      for (; r < end; ++r) s += std::norm(ghat[p * T + r]);
      energy[d] += s;
    }
  }
  return indicator_from_energy(energy, N);
}

void AdaptiveParams::validate() const {
  if (!(0.0 < etal_p && etal_p <= 1.0 && 1.0 <= etah_p))
    throw ConfigError("adaptive params: need 0 < etal_p <= 1 <= etah_p");
  if (!(0.0 < etal_s && etal_s <= 1.0 && 1.0 <= etah_s))
    throw ConfigError("adaptive params: need 0 < etal_s <= 1 <= etah_s");
  if (!(0.0 < q && q < 1.0)) throw ConfigError("adaptive params: need 0 < q < 1");
  if (!(beta_min > 0.0 && beta_min < beta_max))
    throw ConfigError("adaptive params: need 0 < beta_min < beta_max");
  if (N_min < 2) throw ConfigError("adaptive params: N_min >= 2 keeps the moments conserved");
  if (N_max < N_min || delta_N < 1) throw ConfigError("adaptive params: bad order bounds");
  if (eta0_p < 0.0 || F_l0 < 0.0 || F_h0 < 0.0)
    throw ConfigError("adaptive params: negative threshold floor");
}

ScalingMesh ScalingMesh::make(double q, double beta_min, double beta_max) {
  if (!(0.0 < q && q < 1.0)) throw ConfigError("scaling mesh: need 0 < q < 1");
  if (!(0.0 < beta_min && beta_min < beta_max)) throw ConfigError("scaling mesh: bad beta bounds");
  ScalingMesh mesh;
  mesh.q = q;
  mesh.beta_min = beta_min;
  mesh.beta_max = beta_max;
  const double lq = std::log(q);
  mesh.m_lo = static_cast<int>(std::ceil(std::log(beta_max) / lq - 1e-12));
  mesh.m_hi = static_cast<int>(std::floor(std::log(beta_min) / lq + 1e-12));
  if (mesh.m_lo > mesh.m_hi) throw ConfigError("scaling mesh: empty mesh");
  return mesh;
}

double ScalingMesh::beta_of(int m) const { return std::pow(q, m); }

int ScalingMesh::nearest(double beta) const {
  if (!(beta > 0.0)) throw NumericError("scaling mesh: beta must be positive");
  int m = static_cast<int>(std::lround(std::log(beta) / std::log(q)));
  return std::min(std::max(m, m_lo), m_hi);
}

bool p_adapt(SpatialField& field, AdaptiveState& state, const AdaptiveParams& params, double t) {
  params.validate();
  const double Fh = std::max(params.etah_p * state.F_ref_p, params.F_h0);
  const double Fl = std::max(params.etal_p * state.F_ref_p, params.F_l0);

  std::vector<double> energy = degree_energy(field);
  double F = indicator_from_energy(energy, field.spec.N);
  bool raised = false, modified = false;

  while (F > Fh) {
    raised = true;
    if (field.spec.N + params.delta_N > params.N_max) {
      state.log.push_back({t, "order", double(field.spec.N), double(field.spec.N), F, F});
      break;
    }
    const int old_N = field.spec.N;
    field.resize_order(old_N + params.delta_N);
    modified = true;
    energy.resize(field.spec.N + 1, 0.0);  // new degrees hold zeros
    const double Fnew = indicator_from_energy(energy, field.spec.N);
    state.log.push_back({t, "order", double(old_N), double(field.spec.N), F, Fnew});
    F = Fnew;
  }

  if (!raised) {
    while (F < Fl && field.spec.N - params.delta_N >= params.N_min) {
      const int trial = field.spec.N - params.delta_N;
      double Ftrial;
      try {
        Ftrial = indicator_from_energy(energy, trial);
      } catch (const NumericError&) {
        break;  // all-zero truncation; nothing to decide on
      }
      if (!(Ftrial < Fl)) break;
      const int old_N = field.spec.N;
      field.resize_order(trial);
      modified = true;
      energy.resize(trial + 1);
      state.log.push_back({t, "order", double(old_N), double(trial), F, Ftrial});
      F = Ftrial;
    }
  }

  if (raised || (modified && F >= params.eta0_p * state.F_ref_p)) state.F_ref_p = F;
  return modified;
}

bool scale_adapt(SpatialField& field, AdaptiveState& state, const AdaptiveParams& params,
                 const ScalingMesh& mesh, double t) {
  params.validate();
  double F = indicator_field(field);
  const double lo = params.etal_s * state.F_ref_s, hi = params.etah_s * state.F_ref_s;
  bool moved = false;

  SpatialField cand_de, cand_in;
  for (int step = 0; step < mesh.size(); ++step) {
    if (F >= lo && F <= hi) break;

    const int m = state.mesh_m;
    const bool de_ok = m + 1 <= mesh.m_hi, in_ok = m - 1 >= mesh.m_lo;
    double F_de = std::numeric_limits<double>::infinity();
    double F_in = std::numeric_limits<double>::infinity();
    if (de_ok) {
      const TransferMatrix tm = build_transfer(field.spec.N, field.spec.beta, mesh.beta_of(m + 1));
      cand_de = SpatialField(BasisSpec(field.spec.N, mesh.beta_of(m + 1), field.spec.zeta), field.D,
                             field.M, field.L);
      for (std::int64_t p = 0; p < field.points(); ++p) apply_transfer(tm, field.at(p), cand_de.at(p));
      F_de = indicator_field(cand_de);
    }
    if (in_ok) {
      const TransferMatrix tm = build_transfer(field.spec.N, field.spec.beta, mesh.beta_of(m - 1));
      cand_in = SpatialField(BasisSpec(field.spec.N, mesh.beta_of(m - 1), field.spec.zeta), field.D,
                             field.M, field.L);
      for (std::int64_t p = 0; p < field.points(); ++p) apply_transfer(tm, field.at(p), cand_in.at(p));
      F_in = indicator_field(cand_in);
    }

    // Ties with the current value keep beta where it is.
    if (F_de < F && F_de <= F_in) {
      state.log.push_back({t, "scale", field.spec.beta, cand_de.spec.beta, F, F_de});
      field = std::move(cand_de);
      state.mesh_m = m + 1;
      F = F_de;
      moved = true;
    } else if (F_in < F) {
      state.log.push_back({t, "scale", field.spec.beta, cand_in.spec.beta, F, F_in});
      field = std::move(cand_in);
      state.mesh_m = m - 1;
      F = F_in;
      moved = true;
    } else {
      break;
    }
  }
  if (moved) state.F_ref_s = F;
  return moved;
}

InitBetaResult init_beta(const std::function<void(double beta, SpatialField&)>& generate,
                         SpatialField& field, const ScalingMesh& mesh, AdaptiveState& state) {
  if (mesh.m_lo > mesh.m_hi) throw ConfigError("init_beta: empty mesh");
  InitBetaResult best;
  best.indicator = std::numeric_limits<double>::infinity();
  // Scanning from the largest beta downward makes ties resolve toward the
  // larger scaling factor.
  for (int m = mesh.m_lo; m <= mesh.m_hi; ++m) {
    const double beta = mesh.beta_of(m);
    generate(beta, field);
    const double F = indicator_field(field);
    if (F < best.indicator) {
      best.indicator = F;
      best.mesh_m = m;
      best.beta = beta;
    }
  }
  generate(best.beta, field);
  state.mesh_m = best.mesh_m;
  state.F_ref_p = best.indicator;
  state.F_ref_s = best.indicator;
  return best;
}

}  // namespace hermspec
