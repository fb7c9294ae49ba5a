#include "hermspec/error_norms.hpp"

#include <cmath>
#include <numbers>

#include "hermspec/errors.hpp"
#include "hermspec/quadrature.hpp"

namespace hermspec {

namespace {

constexpr int kNodes = 64;

struct VelocityGrid {
  std::vector<double> v;   // node offsets from the center, one axis
  std::vector<double> w;   // weights including the Gaussian compensation
};

VelocityGrid velocity_grid(double beta_q) {
  static const Quadrature1D gh = gauss_hermite(kNodes);
  VelocityGrid g;
  g.v.resize(kNodes);
  g.w.resize(kNodes);
  const double scale = std::numbers::sqrt2 / beta_q;
  for (int i = 0; i < kNodes; ++i) {
    g.v[i] = scale * gh.nodes[i];
    g.w[i] = scale * gh.weights[i] * std::exp(gh.nodes[i] * gh.nodes[i]);
  }
  return g;
}

// Per-axis basis tables of an expansion on the grid: tab[i][k].
std::vector<std::vector<double>> basis_tables(const BasisSpec& spec, int axis,
                                              const VelocityGrid& g, double center) {
  std::vector<std::vector<double>> tab(kNodes);
  for (int i = 0; i < kNodes; ++i)
    tab[i] = eval_basis_1d(spec.N, spec.beta, center + g.v[i] - spec.zeta[axis]);
  return tab;
}

double l2_pointwise(const BasisSpec& sa, std::span<const double> a, const BasisSpec& sb,
                    std::span<const double> b,
                    const std::function<double(const std::array<double, 3>&)>& closure) {
  const double beta_q = closure ? sa.beta : std::min(sa.beta, sb.beta);
  const VelocityGrid g = velocity_grid(beta_q);
  const std::array<double, 3> c = sa.zeta;  // grid centered on the first basis

  auto ta1 = basis_tables(sa, 0, g, c[0]);
  auto ta2 = basis_tables(sa, 1, g, c[1]);
  auto ta3 = basis_tables(sa, 2, g, c[2]);
  std::vector<std::vector<double>> tb1, tb2, tb3;
  if (!closure) {
    tb1 = basis_tables(sb, 0, g, c[0]);
    tb2 = basis_tables(sb, 1, g, c[1]);
    tb3 = basis_tables(sb, 2, g, c[2]);
  }

  double acc = 0.0;
  for (int i = 0; i < kNodes; ++i)
    for (int j = 0; j < kNodes; ++j) {
      // Partial contraction over the two outer axes.
      for (int k = 0; k < kNodes; ++k) {
        double fa = 0.0;
        for_each_index(sa.N, [&](std::int64_t r, int k1, int k2, int k3) {
          fa += a[r] * ta1[i][k1] * ta2[j][k2] * ta3[k][k3];
        });
        double fb;
        if (closure) {
          fb = closure({c[0] + g.v[i], c[1] + g.v[j], c[2] + g.v[k]});
        } else {
          fb = 0.0;
          for_each_index(sb.N, [&](std::int64_t r, int k1, int k2, int k3) {
            fb += b[r] * tb1[i][k1] * tb2[j][k2] * tb3[k][k3];
          });
        }
        const double d = fa - fb;
        acc += g.w[i] * g.w[j] * g.w[k] * d * d;
      }
    }
  return acc;
}

}  // namespace

double l2_error(const CoeffVector& a, const CoeffVector& b) {
  return std::sqrt(l2_pointwise(a.spec, a.data, b.spec, b.data, nullptr));
}

double l2_error(const CoeffVector& a,
                const std::function<double(const std::array<double, 3>&)>& f) {
  if (!f) throw NumericError("l2_error: empty closure");
  return std::sqrt(l2_pointwise(a.spec, a.data, a.spec, a.data, f));
}

double l2_error(const SpatialField& a, const SpatialField& b) {
  if (a.D != b.D || a.M != b.M || a.L != b.L)
    throw NumericError("l2_error: incompatible spatial layouts");
  double cell = 1.0;
  for (int d = 0; d < a.D; ++d) cell *= a.L[d] / a.M;
  double acc = 0.0;
  for (std::int64_t p = 0; p < a.points(); ++p)
    acc += cell * l2_pointwise(a.spec, a.at(p), b.spec, b.at(p), nullptr);
  return std::sqrt(acc);
}

double macro_l2_error(const SpatialField& a, const SpatialField& b,
                      const std::function<double(const MacroState&)>& quantity) {
  if (a.D != b.D || a.M != b.M || a.L != b.L)
    throw NumericError("macro_l2_error: incompatible spatial layouts");
  double cell = 1.0;
  for (int d = 0; d < a.D; ++d) cell *= a.L[d] / a.M;
  double acc = 0.0;
  for (std::int64_t p = 0; p < a.points(); ++p) {
    const double d = quantity(macro_from_coeffs(a.spec, a.at(p))) -
                     quantity(macro_from_coeffs(b.spec, b.at(p)));
    acc += cell * d * d;
  }
  return std::sqrt(acc);
}

}  // namespace hermspec
