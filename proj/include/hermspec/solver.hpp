#pragma once

#include <limits>
#include <string>

#include "hermspec/adaptivity.hpp"
#include "hermspec/collision.hpp"
#include "hermspec/scenarios.hpp"

namespace hermspec {

enum class Switches { None, Scale, P, ScaleP };

Switches switches_from_string(const std::string& s);
std::string to_string(Switches s);

struct SolverOptions {
  int N = 4;
  int M = 1;
  Switches switches = Switches::None;
  AdaptiveParams adapt;
  double t_end = 1.0;
  double dt = 0.0;        // fixed step; 0 derives the step from the CFL number
  double cfl = 0.5;
  double dt_max = 0.1;    // cap, also covers the zero-speed degenerate case
  double beta0 = 0.0;     // 0: scenario default (or mesh argmin when scaling is on)
  int report_every = 10;  // record a report row every n-th step
  int error_every = 1;    // evaluate error columns on every n-th report row (0: never)
  int threads = 1;
};

struct ReportRow {
  double t = 0.0;
  double dt = 0.0;
  double beta = 0.0;
  int N = 0;
  double indicator = 0.0;
  double l2_error = std::numeric_limits<double>::quiet_NaN();
  double rho_err = std::numeric_limits<double>::quiet_NaN();
  double u_err = std::numeric_limits<double>::quiet_NaN();
  double theta_err = std::numeric_limits<double>::quiet_NaN();
  double sigma_err = std::numeric_limits<double>::quiet_NaN();
  double q_err = std::numeric_limits<double>::quiet_NaN();
};

struct RunReport {
  std::vector<ReportRow> rows;
  std::vector<AdjustmentRecord> adjustments;
  SpatialField final_field;
  double wall_seconds = 0.0;
  int steps = 0;
};

/// One classical RK4 step of the homogeneous system df/dt = Q[f]/eps.
CoeffVector step_homogeneous(const CoeffVector& coeffs, const CollisionTensor& tensor, double eps,
                             double dt,
                             double nu = std::numeric_limits<double>::quiet_NaN());

/// Time step from the CFL number: dt = CFL / sum_d (v_max_d / dx_d),
/// capped at dt_max.
double cfl_dt(const SpatialField& field, double cfl, double dt_max);

/// One Shu-Osher SSP-RK3 step of the semi-discrete non-homogeneous system
/// df/dt = -h + Q/eps(t).  eps may return +infinity (collisionless).
void step_nonhomogeneous(SpatialField& field, const CollisionTensor& tensor,
                         const std::function<double(double)>& eps, double t, double dt, double nu,
                         int threads);

/// Full run per the adaptive scheme: initialize (mesh argmin when scaling
/// is enabled), evolve, scaling adaptation, order adaptation, repeat.
/// Fills `report` in place so a partial record survives step failures.
void run(const Scenario& scenario, const CollisionTensor& tensor, const SolverOptions& options,
         RunReport& report);

}  // namespace hermspec
