#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hermspec/field.hpp"
#include "hermspec/kernels.hpp"

namespace hermspec {

/// A runnable problem: initial condition, collision kernel, Knudsen
/// function, domain geometry and solver defaults, plus closed-form
/// reference data when the problem has an exact solution.
struct Scenario {
  std::string name;
  int D = 0;
  std::array<double, 3> L = {1.0, 1.0, 1.0};
  int default_M = 1;
  int default_N = 4;
  int default_N0 = 4;
  double default_t_end = 1.0;
  double default_dt = 0.0;  // 0: derive from the CFL number
  double default_cfl = 0.5;
  double default_beta0 = 1.0;  // non-adaptive scaling choice (1/sqrt(mean theta))
  std::array<double, 3> zeta = {0.0, 0.0, 0.0};
  KernelSpec kernel = KernelSpec::isotropic_maxwell(1.0);
  std::function<double(double)> epsilon = [](double) { return 1.0; };

  /// Fills the expansion of f(0, x, .) in the given basis.
  std::function<void(const std::array<double, 3>& x, const BasisSpec&, std::span<double>)>
      init_coeffs;

  bool has_analytic = false;
  std::function<double(double t, const std::array<double, 3>& v)> analytic_f;  // homogeneous
  std::function<void(double t, const BasisSpec&, std::span<double>)> analytic_coeffs;
  std::function<MacroState(double t)> analytic_macro;

  /// Fills a whole field at t = 0 for the given scaling factor.
  void fill_field(SpatialField& field, double beta) const;
};

/// Krook-Wu exact relaxation problem (Maxwell molecules).  The default
/// kernel strength makes the analytic decay rate lambda = -strength/3
/// match the classical tabulated value.
Scenario bkw_scenario();
Scenario bkw_scenario(double kernel_strength);

/// Krook-Wu closed forms reused by tests and calibration.
double bkw_S(double t, double lambda);
double bkw_f(double S, const std::array<double, 3>& v);
void bkw_coeffs(double S, const BasisSpec& spec, std::span<double> out);

Scenario quad_gaussian_scenario();
Scenario mixed_gaussian_scenario();
Scenario density_wave_1d_scenario();
Scenario time_varying_regime_1d_scenario();
Scenario taylor_green_2d_scenario();
Scenario hexa_gaussian_3d_scenario();

Scenario scenario_by_name(const std::string& name);
std::vector<std::string> scenario_names();

}  // namespace hermspec
