#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hermspec/errors.hpp"

namespace oracle {

using namespace hermspec;

namespace {

struct CompensatedGrid {
  std::vector<double> x;  // offsets
  std::vector<double> w;  // weights with the Gaussian divided out
};

CompensatedGrid grid(int n, double quad_beta) {
  const Quadrature1D gh = gauss_hermite(n);
  CompensatedGrid g;
  g.x.resize(n);
  g.w.resize(n);
  const double s = std::numbers::sqrt2 / quad_beta;
  for (int i = 0; i < n; ++i) {
    g.x[i] = s * gh.nodes[i];
    g.w[i] = s * gh.weights[i] * std::exp(gh.nodes[i] * gh.nodes[i]);
  }
  return g;
}

}  // namespace

double integrate3(const std::function<double(const std::array<double, 3>&)>& f, int nodes_per_axis,
                  double quad_beta, const std::array<double, 3>& center) {
  const CompensatedGrid g = grid(nodes_per_axis, quad_beta);
  double acc = 0.0;
  for (int i = 0; i < nodes_per_axis; ++i)
    for (int j = 0; j < nodes_per_axis; ++j)
      for (int k = 0; k < nodes_per_axis; ++k)
        acc += g.w[i] * g.w[j] * g.w[k] *
               f({center[0] + g.x[i], center[1] + g.x[j], center[2] + g.x[k]});
  return acc;
}

CoeffVector project_by_quadrature(const std::function<double(const std::array<double, 3>&)>& f,
                                  const BasisSpec& spec, int nodes_per_axis, double quad_beta) {
  const CompensatedGrid g = grid(nodes_per_axis, quad_beta);
  CoeffVector out(spec);
  std::vector<std::vector<double>> t1(nodes_per_axis), t2(nodes_per_axis), t3(nodes_per_axis);
  for (int i = 0; i < nodes_per_axis; ++i) {
    t1[i] = eval_poly_1d(spec.N, spec.beta, g.x[i]);
    t2[i] = eval_poly_1d(spec.N, spec.beta, g.x[i]);
    t3[i] = eval_poly_1d(spec.N, spec.beta, g.x[i]);
  }
  for (int i = 0; i < nodes_per_axis; ++i)
    for (int j = 0; j < nodes_per_axis; ++j)
      for (int k = 0; k < nodes_per_axis; ++k) {
        const std::array<double, 3> v = {spec.zeta[0] + g.x[i], spec.zeta[1] + g.x[j],
                                         spec.zeta[2] + g.x[k]};
        const double fw = f(v) * g.w[i] * g.w[j] * g.w[k];
        for_each_index(spec.N, [&](std::int64_t r, int k1, int k2, int k3) {
          out.data[r] += fw * t1[i][k1] * t2[j][k2] * t3[k][k3];
        });
      }
  return out;
}

namespace {

// Quad-precision helpers for the transfer oracle.  The integrand mixes
// magnitudes across ten orders at wide scaling ratios and the small
// entries live entirely in the cancellation, so the oracle carries far
// more precision than the values it checks.
using quad = __float128;

quad quad_sqrt(quad x) {
  if (x <= 0.0Q) return 0.0Q;
  quad y = (quad)std::sqrt((long double)x);
  y = 0.5Q * (y + x / y);
  y = 0.5Q * (y + x / y);
  return y;
}

std::vector<quad> poly_1d_ext(int N, quad beta, quad v) {
  std::vector<quad> p(N + 1);
  p[0] = quad_sqrt(beta) * (quad)std::pow(2.0L * std::numbers::pi_v<long double>, -0.25L);
  if (N == 0) return p;
  const quad bv = beta * v;
  p[1] = bv * p[0];
  for (int k = 1; k < N; ++k)
    p[k + 1] = (bv * p[k] - quad_sqrt((quad)k) * p[k - 1]) / quad_sqrt((quad)(k + 1));
  return p;
}

struct ExtQuadrature {
  std::vector<quad> nodes, weights;
};

// Gauss-Hermite rule for exp(-x^2) refined in quad precision: Newton on
// the orthonormal recurrence starting from the double-precision nodes,
// Christoffel weights.
ExtQuadrature gauss_hermite_ext(int n) {
  const Quadrature1D seed = gauss_hermite(n);
  ExtQuadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  std::vector<quad> p(n + 1), dp(n + 1);
  const quad p0 = (quad)std::pow(std::numbers::pi_v<long double>, -0.25L);
  auto eval = [&](quad x) {
    p[0] = p0;
    dp[0] = 0.0Q;
    for (int k = 0; k < n; ++k) {
      const quad bk1 = quad_sqrt((k + 1) / 2.0Q);
      const quad bk = quad_sqrt(k / 2.0Q);
      const quad pm = (k == 0 ? 0.0Q : p[k - 1]);
      const quad dpm = (k == 0 ? 0.0Q : dp[k - 1]);
      p[k + 1] = (x * p[k] - bk * pm) / bk1;
      dp[k + 1] = (p[k] + x * dp[k] - bk * dpm) / bk1;
    }
  };
  auto qabs = [](quad x) { return x < 0.0Q ? -x : x; };
  for (int i = 0; i < n; ++i) {
    quad x = (quad)seed.nodes[i];
    for (int it = 0; it < 8; ++it) {
      eval(x);
      const quad dx = p[n] / dp[n];
      x -= dx;
      if (qabs(dx) < 1e-32Q * (1.0Q + qabs(x))) break;
    }
    eval(x);
    quad chr = 0.0Q;
    for (int k = 0; k < n; ++k) chr += p[k] * p[k];
    q.nodes[i] = x;
    q.weights[i] = 1.0Q / chr;
  }
  return q;
}

}  // namespace

double transfer_entry_by_quadrature(int l, int k, double beta_from, double beta_to) {
  // Integrand: poly_l(beta_to) * poly_k(beta_from) * exp(-beta_from^2 v^2 / 2);
  // substitute v = sqrt(2) x / beta_from so the weight becomes exp(-x^2).
  // The rule is symmetric, so node pairs (+x, -x) combine through the
  // parity of l + k; summing the positive half keeps the cancellation of
  // odd integrands exact.
  static const ExtQuadrature gh = gauss_hermite_ext(64);
  const int N = std::max(l, k);
  const int n = static_cast<int>(gh.nodes.size());
  const quad parity = (l + k) % 2 == 0 ? 2.0Q : 0.0Q;
  quad acc = 0.0Q;
  const quad sqrt2 = quad_sqrt(2.0Q);
  for (int i = n / 2; i < n; ++i) {
    const quad v = sqrt2 * gh.nodes[i] / (quad)beta_from;
    const std::vector<quad> pl = poly_1d_ext(N, (quad)beta_to, v);
    const std::vector<quad> pk = poly_1d_ext(N, (quad)beta_from, v);
    acc += parity * gh.weights[i] * pl[l] * pk[k];
  }
  return static_cast<double>(acc * sqrt2 / (quad)beta_from);
}

namespace {

double poly_product(const MultiIndex& m, double beta, const std::array<double, 3>& v) {
  double t[3][9];
  eval_poly_1d(m.k1, beta, v[0], t[0]);
  eval_poly_1d(m.k2, beta, v[1], t[1]);
  eval_poly_1d(m.k3, beta, v[2], t[2]);
  return t[0][m.k1] * t[1][m.k2] * t[2][m.k3];
}

}  // namespace

double tensor_entry_direct(const KernelSpec& kernel, const MultiIndex& i, const MultiIndex& j,
                           const MultiIndex& k, int n, int sphere_degree) {
  if (!kernel.angle_independent())
    throw NumericError("tensor_entry_direct: angle-independent kernels only");
  const Quadrature1D gh = gauss_hermite(n);
  const SphereRule sphere = sphere_rule(sphere_degree);
  const double s = kernel.homogeneity_exponent();

  // v = sqrt(2) x (so exp(-|v|^2/2) becomes the Gauss-Hermite weight per axis),
  // same for v*; the bracket keeps gain and loss together.
  const double jac = std::pow(std::numbers::sqrt2, 6.0);
  double acc = 0.0;
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
      for (int a3 = 0; a3 < n; ++a3) {
        const std::array<double, 3> v = {std::numbers::sqrt2 * gh.nodes[a1],
                                         std::numbers::sqrt2 * gh.nodes[a2],
                                         std::numbers::sqrt2 * gh.nodes[a3]};
        const double wv = gh.weights[a1] * gh.weights[a2] * gh.weights[a3];
        const double hk = poly_product(k, 1.0, v);
        for (int b1 = 0; b1 < n; ++b1)
          for (int b2 = 0; b2 < n; ++b2)
            for (int b3 = 0; b3 < n; ++b3) {
              const std::array<double, 3> vs = {std::numbers::sqrt2 * gh.nodes[b1],
                                                std::numbers::sqrt2 * gh.nodes[b2],
                                                std::numbers::sqrt2 * gh.nodes[b3]};
              const double w = wv * gh.weights[b1] * gh.weights[b2] * gh.weights[b3];
              const std::array<double, 3> gvec = {v[0] - vs[0], v[1] - vs[1], v[2] - vs[2]};
              const double gnorm =
                  std::sqrt(gvec[0] * gvec[0] + gvec[1] * gvec[1] + gvec[2] * gvec[2]);
              const double loss = poly_product(i, 1.0, vs) * poly_product(j, 1.0, v);
              double inner = 0.0;
              for (std::size_t m = 0; m < sphere.size(); ++m) {
                const auto& om = sphere.points[m];
                const std::array<double, 3> vp = {0.5 * (v[0] + vs[0] + gnorm * om[0]),
                                                  0.5 * (v[1] + vs[1] + gnorm * om[1]),
                                                  0.5 * (v[2] + vs[2] + gnorm * om[2])};
                const std::array<double, 3> vsp = {0.5 * (v[0] + vs[0] - gnorm * om[0]),
                                                   0.5 * (v[1] + vs[1] - gnorm * om[1]),
                                                   0.5 * (v[2] + vs[2] - gnorm * om[2])};
                inner += sphere.weights[m] * (poly_product(i, 1.0, vsp) * poly_product(j, 1.0, vp) - loss);
              }
              const double b_over = kernel.strength / (4.0 * std::numbers::pi) * std::pow(gnorm, s);
              acc += w * b_over * inner * hk;
            }
      }
  return acc * jac;
}

McEstimate tensor_entry_mc(const KernelSpec& kernel, const MultiIndex& i, const MultiIndex& j,
                           const MultiIndex& k, std::int64_t samples, std::uint64_t seed) {
  if (!kernel.angle_independent())
    throw NumericError("tensor_entry_mc: angle-independent kernels only");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double s = kernel.homogeneity_exponent();

  // Importance sampling: v, v* standard normal per axis (density matches
  // the Gaussian factor of the integrand), omega uniform on the sphere.
  const double norm = std::pow(2.0 * std::numbers::pi, 3.0) * 4.0 * std::numbers::pi;
  double sum = 0.0, sum2 = 0.0;
  for (std::int64_t it = 0; it < samples; ++it) {
    std::array<double, 3> v, vs, om;
    for (int d = 0; d < 3; ++d) {
      v[d] = gauss(rng);
      vs[d] = gauss(rng);
    }
    const double z = 2.0 * unif(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unif(rng);
    const double sz = std::sqrt(std::max(0.0, 1.0 - z * z));
    om = {sz * std::cos(phi), sz * std::sin(phi), z};

    const std::array<double, 3> gvec = {v[0] - vs[0], v[1] - vs[1], v[2] - vs[2]};
    const double gnorm = std::sqrt(gvec[0] * gvec[0] + gvec[1] * gvec[1] + gvec[2] * gvec[2]);
    const std::array<double, 3> vp = {0.5 * (v[0] + vs[0] + gnorm * om[0]),
                                      0.5 * (v[1] + vs[1] + gnorm * om[1]),
                                      0.5 * (v[2] + vs[2] + gnorm * om[2])};
    const std::array<double, 3> vsp = {0.5 * (v[0] + vs[0] - gnorm * om[0]),
                                       0.5 * (v[1] + vs[1] - gnorm * om[1]),
                                       0.5 * (v[2] + vs[2] - gnorm * om[2])};
    const double bracket = poly_product(i, 1.0, vsp) * poly_product(j, 1.0, vp) -
                           poly_product(i, 1.0, vs) * poly_product(j, 1.0, v);
    const double b = kernel.strength / (4.0 * std::numbers::pi) * std::pow(gnorm, s);
    const double val = norm * b * bracket * poly_product(k, 1.0, v);
    sum += val;
    sum2 += val * val;
  }
  McEstimate e;
  e.mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - e.mean * e.mean);
  e.stderr_ = std::sqrt(var / samples);
  return e;
}

CoeffVector random_coeffs(const BasisSpec& spec, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CoeffVector c(spec);
  for (double& v : c.data) v = scale * unif(rng);
  return c;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(n);
    for (std::size_t p = 0; p < n; ++p) r[idx[p]] = static_cast<double>(p);
    return r;
  };
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  const double mean = (n - 1) / 2.0;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    cov += (ra[p] - mean) * (rb[p] - mean);
    va += (ra[p] - mean) * (ra[p] - mean);
    vb += (rb[p] - mean) * (rb[p] - mean);
  }
  return cov / std::sqrt(va * vb);
}

}  // namespace oracle
