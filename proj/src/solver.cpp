#include "hermspec/solver.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "hermspec/error_norms.hpp"
#include "hermspec/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hermspec {

Switches switches_from_string(const std::string& s) {
  if (s == "none") return Switches::None;
  if (s == "scale") return Switches::Scale;
  if (s == "p") return Switches::P;
  if (s == "scale-p") return Switches::ScaleP;
  throw ConfigError("unknown adaptivity switches: " + s);
}

std::string to_string(Switches s) {
  switch (s) {
    case Switches::None: return "none";
    case Switches::Scale: return "scale";
    case Switches::P: return "p";
    case Switches::ScaleP: return "scale-p";
  }
  return "none";
}

CoeffVector step_homogeneous(const CoeffVector& coeffs, const CollisionTensor& tensor, double eps,
                             double dt, double nu) {
  if (!(dt > 0.0) || !(eps > 0.0)) throw NumericError("step_homogeneous: dt and eps must be positive");
  const double inv_eps = std::isinf(eps) ? 0.0 : 1.0 / eps;
  const std::int64_t T = coeffs.spec.size();
  auto rhs = [&](const CoeffVector& f) {
    CoeffVector q = collide(f, tensor, nu);
    for (std::int64_t r = 0; r < T; ++r) q.data[r] *= inv_eps;
    return q;
  };
  const CoeffVector k1 = rhs(coeffs);
  CoeffVector tmp(coeffs.spec);
  for (std::int64_t r = 0; r < T; ++r) tmp.data[r] = coeffs.data[r] + 0.5 * dt * k1.data[r];
  const CoeffVector k2 = rhs(tmp);
  for (std::int64_t r = 0; r < T; ++r) tmp.data[r] = coeffs.data[r] + 0.5 * dt * k2.data[r];
  const CoeffVector k3 = rhs(tmp);
  for (std::int64_t r = 0; r < T; ++r) tmp.data[r] = coeffs.data[r] + dt * k3.data[r];
  const CoeffVector k4 = rhs(tmp);

  CoeffVector out(coeffs.spec);
  for (std::int64_t r = 0; r < T; ++r)
    out.data[r] = coeffs.data[r] +
                  dt / 6.0 * (k1.data[r] + 2.0 * k2.data[r] + 2.0 * k3.data[r] + k4.data[r]);
  for (std::int64_t r = 0; r < T; ++r)
    if (!std::isfinite(out.data[r]))
      throw NumericError("step_homogeneous: non-finite coefficients (instability), dt = " +
                         std::to_string(dt));
  return out;
}

double cfl_dt(const SpatialField& field, double cfl, double dt_max) {
  if (!(cfl > 0.0)) throw NumericError("cfl_dt: CFL must be positive");
  double rate = 0.0;
  for (int d = 0; d < field.D; ++d) {
    const double dx = field.L[d] / field.M;
    rate += advection_speed(field.spec.N, field.spec.beta, field.spec.zeta[d]) / dx;
  }
  if (rate <= 0.0) return dt_max;
  return std::min(cfl / rate, dt_max);
}

namespace {

// L(u) = -advection(u) + Q(u)/eps, evaluated into `out`.
void field_rhs(const SpatialField& field, const CollisionTensor& tensor, double eps_value,
               double nu, int threads, SpatialField& adv, SpatialField& out) {
  advection_rhs(field, adv);
  const double inv_eps = std::isinf(eps_value) ? 0.0 : 1.0 / eps_value;
  const std::int64_t P = field.points(), T = field.spec.size();
  out.spec = field.spec;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::int64_t p = 0; p < P; ++p) {
    if (inv_eps != 0.0) {
      collide(field.spec, field.at(p), tensor, nu, out.at(p));
      double* o = out.data.data() + p * T;
      const double* a = adv.data.data() + p * T;
      for (std::int64_t r = 0; r < T; ++r) o[r] = inv_eps * o[r] - a[r];
    } else {
      double* o = out.data.data() + p * T;
      const double* a = adv.data.data() + p * T;
      for (std::int64_t r = 0; r < T; ++r) o[r] = -a[r];
    }
  }
}

void check_finite(const SpatialField& field, double t) {
  for (double v : field.data)
    if (!std::isfinite(v))
      throw NumericError("step_nonhomogeneous: non-finite field (instability) at t = " +
                         std::to_string(t));
}

}  // namespace

void step_nonhomogeneous(SpatialField& field, const CollisionTensor& tensor,
                         const std::function<double(double)>& eps, double t, double dt, double nu,
                         int threads) {
  if (!(dt > 0.0)) throw NumericError("step_nonhomogeneous: dt must be positive");
  const std::int64_t n = static_cast<std::int64_t>(field.data.size());
  SpatialField adv(field.spec, field.D, field.M, field.L);
  SpatialField rhs(field.spec, field.D, field.M, field.L);
  SpatialField u1(field.spec, field.D, field.M, field.L);

  field_rhs(field, tensor, eps(t), nu, threads, adv, rhs);
  for (std::int64_t i = 0; i < n; ++i) u1.data[i] = field.data[i] + dt * rhs.data[i];

  field_rhs(u1, tensor, eps(t + dt), nu, threads, adv, rhs);
  for (std::int64_t i = 0; i < n; ++i)
    u1.data[i] = 0.75 * field.data[i] + 0.25 * (u1.data[i] + dt * rhs.data[i]);

  field_rhs(u1, tensor, eps(t + 0.5 * dt), nu, threads, adv, rhs);
  for (std::int64_t i = 0; i < n; ++i)
    field.data[i] = field.data[i] / 3.0 + 2.0 / 3.0 * (u1.data[i] + dt * rhs.data[i]);

  check_finite(field, t + dt);
}

namespace {

void record_row(RunReport& report, const Scenario& scenario, const SpatialField& field, double t,
                double dt, bool with_errors) {
  ReportRow row;
  row.t = t;
  row.dt = dt;
  row.beta = field.spec.beta;
  row.N = field.spec.N;
  row.indicator = indicator_field(field);

  if (with_errors && scenario.has_analytic && field.D == 0) {
    CoeffVector c(field.spec);
    c.data.assign(field.data.begin(), field.data.end());
    if (scenario.analytic_f)
      row.l2_error = l2_error(c, [&](const std::array<double, 3>& v) { return scenario.analytic_f(t, v); });
    if (scenario.analytic_macro) {
      const MacroState ref = scenario.analytic_macro(t);
      const MacroState now = macro_from_coeffs(c);
      row.rho_err = std::abs(now.rho - ref.rho);
      double du = 0.0, dq = 0.0, ds = 0.0;
      for (int d = 0; d < 3; ++d) {
        du += (now.u[d] - ref.u[d]) * (now.u[d] - ref.u[d]);
        dq += (now.q[d] - ref.q[d]) * (now.q[d] - ref.q[d]);
      }
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          ds += (now.sigma[i][j] - ref.sigma[i][j]) * (now.sigma[i][j] - ref.sigma[i][j]);
      row.u_err = std::sqrt(du);
      row.q_err = std::sqrt(dq);
      row.sigma_err = std::sqrt(ds);
      row.theta_err = std::abs(now.theta - ref.theta);
    }
  }
  report.rows.push_back(row);
}

}  // namespace

void run(const Scenario& scenario, const CollisionTensor& tensor, const SolverOptions& options,
         RunReport& report) {
  options.adapt.validate();
  if (!(options.t_end > 0.0)) throw ConfigError("run: t_end must be positive");
  const bool scale_on = options.switches == Switches::Scale || options.switches == Switches::ScaleP;
  const bool p_on = options.switches == Switches::P || options.switches == Switches::ScaleP;

  const ScalingMesh mesh =
      ScalingMesh::make(options.adapt.q, options.adapt.beta_min, options.adapt.beta_max);
  AdaptiveState state;

  // Step 1: basis selection and initial coefficients.
  SpatialField field(BasisSpec(options.N, 1.0, scenario.zeta), scenario.D,
                     scenario.D == 0 ? 1 : options.M, scenario.L);
  if (scale_on) {
    init_beta([&](double beta, SpatialField& f) { scenario.fill_field(f, beta); }, field, mesh,
              state);
  } else {
    const double beta0 = options.beta0 > 0.0 ? options.beta0 : scenario.default_beta0;
    scenario.fill_field(field, beta0);
    state.mesh_m = mesh.nearest(beta0);
    const double F0 = indicator_field(field);
    state.F_ref_p = F0;
    state.F_ref_s = F0;
  }

  // The BGK tail rate is linearized around the conserved mean state and
  // refreshed whenever the scaling factor changes.
  MacroState mean = mean_state(field);
  double nu = std::numeric_limits<double>::quiet_NaN();
  auto refresh_nu = [&]() {
    if (field.spec.N > tensor.N0) {
      nu = nu_for_basis(tensor, mean.rho, mean.u, mean.theta, field.spec);
      std::clog << "[hermspec] nu refreshed: " << nu << " (beta = " << field.spec.beta << ")\n";
    }
  };
  refresh_nu();

  double dt = options.dt > 0.0 ? std::min(options.dt, options.dt_max)
                               : cfl_dt(field, options.cfl, options.dt_max);

  const auto t0 = std::chrono::steady_clock::now();
  double t = 0.0;
  int step = 0, rows = 0;
  record_row(report, scenario, field, t, dt, options.error_every > 0);

  while (t < options.t_end - 1e-14) {
    const double dt_step = std::min(dt, options.t_end - t);
    if (field.D == 0) {
      CoeffVector c(field.spec);
      c.data.assign(field.data.begin(), field.data.end());
      c = step_homogeneous(c, tensor, scenario.epsilon(t), dt_step, nu);
      field.data = std::move(c.data);
    } else {
      step_nonhomogeneous(field, tensor, scenario.epsilon, t, dt_step, nu, options.threads);
    }
    t += dt_step;
    ++step;

    bool basis_changed = false;
    if (scale_on) {
      const int old_m = state.mesh_m;
      if (scale_adapt(field, state, options.adapt, mesh, t)) {
        basis_changed = true;
        refresh_nu();
        (void)old_m;
      }
    }
    if (p_on) {
      const int old_N = field.spec.N;
      if (p_adapt(field, state, options.adapt, t)) {
        basis_changed = true;
        if (field.spec.N > tensor.N0 && old_N <= tensor.N0) refresh_nu();
      }
    }
    if (basis_changed && options.dt == 0.0) dt = cfl_dt(field, options.cfl, options.dt_max);

    const bool last = t >= options.t_end - 1e-14;
    if (step % std::max(1, options.report_every) == 0 || last) {
      ++rows;
      const bool with_errors =
          options.error_every > 0 && (rows % options.error_every == 0 || last);
      record_row(report, scenario, field, t, dt_step, with_errors);
    }
  }

  report.adjustments = state.log;
  report.final_field = std::move(field);
  report.steps = step;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace hermspec
