#include "hermspec/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "hermspec/errors.hpp"

namespace hermspec {

namespace {

constexpr double kBkwModeConstant = 0.6543;  // classical value of the slowest Krook-Wu mode

struct GaussianComponent {
  double rho;
  std::array<double, 3> u;
  double theta;
};

// Sum of Maxwellians; coefficients are the sums of the component
// expansions (projection is linear).
void mixture_coeffs(const std::vector<GaussianComponent>& comps, const BasisSpec& spec,
                    std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> tmp(spec.size());
  for (const GaussianComponent& c : comps) {
    maxwellian_coeffs(c.rho, c.u, c.theta, spec, tmp);
    for (std::int64_t r = 0; r < spec.size(); ++r) out[r] += tmp[r];
  }
}

MacroState mixture_macro(const std::vector<GaussianComponent>& comps) {
  MacroState m;
  for (const GaussianComponent& c : comps) m.rho += c.rho;
  for (int d = 0; d < 3; ++d) {
    double mom = 0.0;
    for (const GaussianComponent& c : comps) mom += c.rho * c.u[d];
    m.u[d] = mom / m.rho;
  }
  double e = 0.0;
  for (const GaussianComponent& c : comps) {
    double u2 = 0.0;
    for (int d = 0; d < 3; ++d) u2 += c.u[d] * c.u[d];
    e += c.rho * (3.0 * c.theta + u2);
  }
  double um2 = 0.0;
  for (int d = 0; d < 3; ++d) um2 += m.u[d] * m.u[d];
  m.theta = (e / m.rho - um2) / 3.0;
  return m;
}

}  // namespace

void Scenario::fill_field(SpatialField& field, double beta) const {
  field.spec = BasisSpec(field.spec.N, beta, zeta);
  for (std::int64_t p = 0; p < field.points(); ++p)
    init_coeffs(field.point(p), field.spec, field.at(p));
}

// ---------------------------------------------------------------------------
// Krook-Wu solution
// ---------------------------------------------------------------------------

double bkw_S(double t, double lambda) { return 1.0 - 0.4 * std::exp(lambda * t); }

double bkw_f(double S, const std::array<double, 3>& v) {
  const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const double g = std::pow(2.0 * std::numbers::pi * S, -1.5) * std::exp(-v2 / (2.0 * S));
  return g * ((1.0 - S) / (2.0 * S * S) * v2 + (5.0 * S - 3.0) / (2.0 * S));
}

void bkw_coeffs(double S, const BasisSpec& spec, std::span<double> out) {
  if (std::abs(spec.zeta[0]) + std::abs(spec.zeta[1]) + std::abs(spec.zeta[2]) > 0.0)
    throw NumericError("bkw_coeffs: the solution is centered, use zeta = 0");
  const int N = spec.N;
  const double beta = spec.beta;
  const double a = (1.0 - S) / (2.0 * S * S);
  const double b = (5.0 * S - 3.0) / (2.0 * S);

  // 1D ingredients for the centered Gaussian of variance S:
  //   m[k]  = integral of poly_k(w) * g_S(w) dw
  //   m2[k] = integral of w^2 poly_k(w) * g_S(w) dw
  std::vector<double> m(N + 1, 0.0), m2(N + 1, 0.0);
  m[0] = std::sqrt(beta) * std::pow(2.0 * std::numbers::pi, -0.25);
  const double tb = S * beta * beta - 1.0;
  for (int k = 1; k < N; ++k) m[k + 1] = std::sqrt(double(k)) * tb * m[k - 1] / std::sqrt(double(k + 1));
  for (int k = 0; k <= N; ++k) {
    m2[k] = S * m[k];
    if (k >= 2) m2[k] += S * S * beta * beta * std::sqrt(double(k) * (k - 1)) * m[k - 2];
  }
  for_each_index(N, [&](std::int64_t r, int k1, int k2, int k3) {
    const double base = m[k1] * m[k2] * m[k3];
    const double quad = m2[k1] * m[k2] * m[k3] + m[k1] * m2[k2] * m[k3] + m[k1] * m[k2] * m2[k3];
    out[r] = a * quad + b * base;
  });
}

Scenario bkw_scenario(double kernel_strength) {
  Scenario s;
  s.name = "bkw";
  s.D = 0;
  s.default_N = 4;
  s.default_N0 = 4;
  s.default_t_end = 4.0;
  s.default_dt = 1e-3;
  s.default_beta0 = 1.0;  // theta = 1 throughout
  s.kernel = KernelSpec::isotropic_maxwell(kernel_strength);
  // Slowest even mode of the isotropic Maxwell kernel: the solution decays
  // at rate strength/6 (the default strength reproduces the classical
  // tabulated rate pi * 0.6543 / 3).
  const double lambda = -kernel_strength / 6.0;
  s.init_coeffs = [lambda](const std::array<double, 3>&, const BasisSpec& spec,
                           std::span<double> out) { bkw_coeffs(bkw_S(0.0, lambda), spec, out); };
  s.has_analytic = true;
  s.analytic_f = [lambda](double t, const std::array<double, 3>& v) {
    return bkw_f(bkw_S(t, lambda), v);
  };
  s.analytic_coeffs = [lambda](double t, const BasisSpec& spec, std::span<double> out) {
    bkw_coeffs(bkw_S(t, lambda), spec, out);
  };
  s.analytic_macro = [](double) {
    MacroState m;
    m.rho = 1.0;
    m.theta = 1.0;
    return m;
  };
  return s;
}

Scenario bkw_scenario() { return bkw_scenario(2.0 * std::numbers::pi * kBkwModeConstant); }

// ---------------------------------------------------------------------------
// Gaussian-mixture relaxation problems
// ---------------------------------------------------------------------------

Scenario quad_gaussian_scenario() {
  Scenario s;
  s.name = "quad_gaussian";
  s.D = 0;
  s.default_N = 10;
  s.default_N0 = 10;
  s.default_t_end = 1.0;
  s.default_dt = 0.01;
  s.default_beta0 = 1.0;  // mixture temperature is 1
  s.kernel = KernelSpec::isotropic_maxwell(2.0 * std::numbers::pi * kBkwModeConstant);
  const double w = std::numbers::sqrt2;
  std::vector<GaussianComponent> comps = {
      {0.25, {w, 0.0, 0.0}, 1.0 / 3.0},
      {0.25, {-w, 0.0, 0.0}, 1.0 / 3.0},
      {0.25, {0.0, w, 0.0}, 1.0 / 3.0},
      {0.25, {0.0, -w, 0.0}, 1.0 / 3.0},
  };
  s.init_coeffs = [comps](const std::array<double, 3>&, const BasisSpec& spec,
                          std::span<double> out) { mixture_coeffs(comps, spec, out); };
  return s;
}

Scenario mixed_gaussian_scenario() {
  Scenario s;
  s.name = "mixed_gaussian";
  s.D = 0;
  s.default_N = 12;
  s.default_N0 = 6;
  s.default_t_end = 3.0;
  s.default_dt = 0.01;
  s.kernel = KernelSpec::isotropic_maxwell(2.0 * std::numbers::pi * kBkwModeConstant);

  const double kappa = 0.05, mu = 4.0;
  const double c = std::sqrt(5.0 / 3.0);
  std::vector<GaussianComponent> comps = {
      {1.0 - kappa, {c * mu, 0.0, 0.0}, 1.0},
      {kappa * 4.0 * mu * mu / (mu * mu + 3.0),
       {c * (mu * mu + 3.0) / (4.0 * mu), 0.0, 0.0},
       (5.0 * mu * mu - 1.0) * (mu * mu + 3.0) / (16.0 * mu * mu)},
  };
  const MacroState macro = mixture_macro(comps);
  s.zeta = macro.u;  // expansion centered on the bulk velocity
  s.default_beta0 = 1.0 / std::sqrt(macro.theta);
  s.init_coeffs = [comps](const std::array<double, 3>&, const BasisSpec& spec,
                          std::span<double> out) { mixture_coeffs(comps, spec, out); };
  return s;
}

// ---------------------------------------------------------------------------
// Non-homogeneous problems (periodic boxes)
// ---------------------------------------------------------------------------

Scenario density_wave_1d_scenario() {
  Scenario s;
  s.name = "density_wave_1d";
  s.D = 1;
  s.L = {2.0, 1.0, 1.0};
  s.default_M = 16;
  s.default_N = 6;
  s.default_N0 = 6;
  s.default_t_end = 0.8;
  s.default_beta0 = 1.0;
  s.kernel = KernelSpec::ipl(10.0, 1.0);
  s.epsilon = [](double) { return 5.0; };
  s.init_coeffs = [](const std::array<double, 3>& x, const BasisSpec& spec, std::span<double> out) {
    const double rho = 1.0 + 0.3 * std::sin(std::numbers::pi * x[0]);
    maxwellian_coeffs(rho, {0.0, 0.0, 0.0}, 1.0, spec, out);
  };
  return s;
}

Scenario time_varying_regime_1d_scenario() {
  Scenario s;
  s.name = "time_varying_regime_1d";
  s.D = 1;
  s.L = {2.0, 1.0, 1.0};
  s.default_M = 16;
  s.default_N = 15;
  s.default_N0 = 6;
  s.default_t_end = 2.0;
  s.default_beta0 = std::numbers::sqrt2;  // mean temperature is 1/2
  s.kernel = KernelSpec::ipl(10.0, 1.0);
  s.epsilon = [](double t) {
    return 5.05 + 2.5 * (std::tanh(10.0 * (0.25 - t)) + std::tanh(10.0 * (t - 1.75)));
  };
  const double ux = std::sqrt(1.5);
  s.init_coeffs = [ux](const std::array<double, 3>& x, const BasisSpec& spec, std::span<double> out) {
    const double sx = std::sin(std::numbers::pi * x[0]);
    const double rho = 0.5 * (1.0 + 0.1 * sx);
    const double theta = 0.5 * (1.0 - 0.1 * sx);
    std::vector<GaussianComponent> comps = {{rho, {ux, 0.0, 0.0}, theta},
                                            {rho, {-ux, 0.0, 0.0}, theta}};
    mixture_coeffs(comps, spec, out);
  };
  return s;
}

Scenario taylor_green_2d_scenario() {
  Scenario s;
  s.name = "taylor_green_2d";
  s.D = 2;
  s.L = {1.0, 1.0, 1.0};
  s.default_M = 16;
  s.default_N = 6;
  s.default_N0 = 6;
  s.default_t_end = 2.0;
  s.default_beta0 = 1.0;  // theta_0 = 1
  s.kernel = KernelSpec::ipl(10.0, 1.0);
  s.epsilon = [](double) { return 0.05; };
  const double u0 = 1.2, theta0 = 1.0;
  s.init_coeffs = [u0, theta0](const std::array<double, 3>& x, const BasisSpec& spec,
                               std::span<double> out) {
    const double tp = 2.0 * std::numbers::pi;
    const double theta =
        theta0 - u0 * u0 * (std::cos(2.0 * tp * x[0]) + std::cos(2.0 * tp * x[1])) / 4.0;
    const std::array<double, 3> u = {-u0 * std::cos(tp * x[0]) * std::sin(tp * x[1]),
                                     u0 * std::sin(tp * x[0]) * std::cos(tp * x[1]), 0.0};
    maxwellian_coeffs(1.0, u, theta, spec, out);
  };
  return s;
}

Scenario hexa_gaussian_3d_scenario() {
  Scenario s;
  s.name = "hexa_gaussian_3d";
  s.D = 3;
  s.L = {2.0, 2.0, 2.0};
  s.default_M = 16;
  s.default_N = 8;
  s.default_N0 = 6;
  s.default_t_end = 0.3;
  s.default_beta0 = std::numbers::sqrt2;  // theta = 1/2
  s.kernel = KernelSpec::ipl(10.0, 1.0);
  s.epsilon = [](double) { return 1.0; };
  const double w = std::sqrt(1.5);
  s.init_coeffs = [w](const std::array<double, 3>& x, const BasisSpec& spec, std::span<double> out) {
    const double pi = std::numbers::pi;
    const double lam = (std::sin(pi * x[0]) - 0.5 * std::sin(2.0 * pi * x[0]) +
                        0.125 * std::sin(3.0 * pi * x[0])) *
                       (std::sin(pi * x[1]) - 0.5 * std::sin(2.0 * pi * x[1])) * std::sin(pi * x[2]);
    const double rho = (1.0 + 0.3 * lam) / 6.0;
    std::vector<GaussianComponent> comps;
    for (int d = 0; d < 3; ++d)
      for (double sgn : {1.0, -1.0}) {
        std::array<double, 3> u = {0.0, 0.0, 0.0};
        u[d] = sgn * w;
        comps.push_back({rho, u, 0.5});
      }
    mixture_coeffs(comps, spec, out);
  };
  return s;
}

Scenario scenario_by_name(const std::string& name) {
  if (name == "bkw") return bkw_scenario();
  if (name == "quad_gaussian") return quad_gaussian_scenario();
  if (name == "mixed_gaussian") return mixed_gaussian_scenario();
  if (name == "density_wave_1d") return density_wave_1d_scenario();
  if (name == "time_varying_regime_1d") return time_varying_regime_1d_scenario();
  if (name == "taylor_green_2d") return taylor_green_2d_scenario();
  if (name == "hexa_gaussian_3d") return hexa_gaussian_3d_scenario();
  throw ConfigError("unknown scenario: " + name);
}

std::vector<std::string> scenario_names() {
  return {"bkw",
          "quad_gaussian",
          "mixed_gaussian",
          "density_wave_1d",
          "time_varying_regime_1d",
          "taylor_green_2d",
          "hexa_gaussian_3d"};
}

}  // namespace hermspec
