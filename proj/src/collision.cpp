#include "hermspec/collision.hpp"

#define EIGEN_DONT_PARALLELIZE
#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "hermspec/errors.hpp"
#include "hermspec/moments.hpp"
#include "hermspec/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hermspec {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using CMapMat = Eigen::Map<const RowMat>;

constexpr double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);

// Product of the three 1D dual polynomials over all ranks.
inline void poly_vector(int N0, const double* t1, const double* t2, const double* t3, double* out) {
  for_each_index(N0, [&](std::int64_t r, int k1, int k2, int k3) {
    out[r] = t1[k1] * t2[k2] * t3[k3];
  });
}

struct PolyEvaluator {
  int N0;
  double beta;
  std::vector<double> t1, t2, t3;
  PolyEvaluator(int N0_, double beta_) : N0(N0_), beta(beta_), t1(N0_ + 1), t2(N0_ + 1), t3(N0_ + 1) {}
  void operator()(const std::array<double, 3>& v, double* out) {
    eval_poly_1d(N0, beta, v[0], t1.data());
    eval_poly_1d(N0, beta, v[1], t2.data());
    eval_poly_1d(N0, beta, v[2], t3.data());
    poly_vector(N0, t1.data(), t2.data(), t3.data(), out);
  }
};

// Legendre values P_0..P_l at t.
inline void legendre_values(int lmax, double t, double* p) {
  p[0] = 1.0;
  if (lmax >= 1) p[1] = t;
  for (int l = 1; l < lmax; ++l) p[l + 1] = ((2 * l + 1) * t * p[l] - l * p[l - 1]) / (l + 1);
}

struct AssemblyGrid {
  Quadrature1D gh;      // centroid, weight exp(-x^2); node -> G = x / beta
  Quadrature1D radial;  // weight r^(2+s) exp(-(beta r / 2)^2)
  SphereRule sigma;
  SphereRule omega;
  std::vector<double> ktilde;  // angle-dependent kernels: K(sigma_m . omega_b) * w_omega_b
  double beta;

  std::size_t sigma_n() const { return sigma.size(); }
  std::size_t omega_n() const { return omega.size(); }
};

AssemblyGrid make_grid(const KernelSpec& kernel, int N0, const QuadOrders& orders, double beta) {
  AssemblyGrid g;
  g.beta = beta;
  g.gh = gauss_hermite(orders.n_gauss);
  g.radial = half_line_rule(kernel.homogeneity_exponent(), orders.n_radial, beta / 2.0);
  g.sigma = sphere_rule(orders.sphere_degree);
  g.omega = sphere_rule(orders.omega_degree);

  if (!kernel.angle_independent()) {
    const int lmax = 2 * N0;
    const std::vector<double> c = kernel_angular_integrals(kernel, lmax);
    std::vector<double> pl(lmax + 1);
    g.ktilde.resize(g.sigma_n() * g.omega_n());
    for (std::size_t m = 0; m < g.sigma_n(); ++m)
      for (std::size_t b = 0; b < g.omega_n(); ++b) {
        const auto& s = g.sigma.points[m];
        const auto& o = g.omega.points[b];
        double dot = s[0] * o[0] + s[1] * o[1] + s[2] * o[2];
        dot = std::min(1.0, std::max(-1.0, dot));
        legendre_values(lmax, dot, pl.data());
        double k = 0.0;
        for (int l = 0; l <= lmax; ++l) k += (2 * l + 1) * kInv4Pi * c[l] * pl[l];
        g.ktilde[m * g.omega_n() + b] = k * g.omega.weights[b];
      }
  }
  return g;
}

}  // namespace

QuadOrders default_orders(const KernelSpec& kernel, int N0) {
  QuadOrders o;
  o.n_gauss = (3 * N0 + 1) / 2 + 2;
  o.n_radial = (3 * N0 + 1) / 2 + 2;
  o.sphere_degree = 3 * N0 + 2;
  o.omega_degree = (kernel.angle_independent() ? 2 * N0 : 4 * N0) + 2;
  return o;
}

namespace {

QuadOrders resolve_orders(const KernelSpec& kernel, int N0, QuadOrders orders) {
  const QuadOrders def = default_orders(kernel, N0);
  if (orders.n_gauss == 0) orders.n_gauss = def.n_gauss;
  if (orders.n_radial == 0) orders.n_radial = def.n_radial;
  if (orders.sphere_degree == 0) orders.sphere_degree = def.sphere_degree;
  if (orders.omega_degree == 0) orders.omega_degree = def.omega_degree;
  // Exactness minima; below these the Gauss rules no longer integrate the
  // full polynomial content and conservation degrades.
  if (2 * orders.n_gauss - 1 < 3 * N0 || 2 * orders.n_radial - 1 < 3 * N0 ||
      orders.sphere_degree < 3 * N0 ||
      orders.omega_degree < (kernel.angle_independent() ? 2 * N0 : 4 * N0))
    throw ConfigError("assemble_tensor: quadrature orders below documented minima");
  return orders;
}

}  // namespace

CollisionTensor assemble_tensor(const KernelSpec& kernel, int N0, QuadOrders orders, int threads) {
  if (N0 < 0 || N0 > 8) throw ConfigError("assemble_tensor: N0 must be in [0,8]");
  orders = resolve_orders(kernel, N0, orders);

  CollisionTensor tensor;
  tensor.kernel = kernel;
  tensor.N0 = N0;
  tensor.orders = orders;
  const std::int64_t T = term_count(N0);
  const std::int64_t TT = T * T;
  tensor.A.assign(static_cast<std::size_t>(T) * TT, 0.0);

  const AssemblyGrid grid = make_grid(kernel, N0, orders, 1.0);
  const std::size_t nG = grid.gh.size();
  const std::size_t nodes = nG * nG * nG * grid.radial.size();
  const std::size_t ns = grid.sigma_n(), no = grid.omega_n();
  const bool iso = kernel.angle_independent();

#ifdef _OPENMP
  const int nthreads = std::max(1, threads);
#else
  const int nthreads = 1;
#endif
  std::vector<std::vector<double>> partial(nthreads);

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    std::vector<double>& Aloc = partial[tid];
    Aloc.assign(static_cast<std::size_t>(T) * TT, 0.0);
    MapMat Amap(Aloc.data(), T, TT);

    PolyEvaluator peval(N0, 1.0);
    RowMat PV(ns, T), PVS(ns, T), HK(ns, T), IJ(ns, TT);
    RowMat GainA(no, T), GainB(no, T), U(iso ? 0 : no, iso ? 0 : TT);
    Eigen::RowVectorXd gain_sum(TT), hk_sum(T);
    RowMat W(T, no);

    const std::size_t chunk = (nodes + nthreads - 1) / nthreads;
    const std::size_t lo = tid * chunk, hi = std::min(nodes, lo + chunk);
    for (std::size_t node = lo; node < hi; ++node) {
      std::size_t rest = node;
      const std::size_t ia = rest % nG;
      rest /= nG;
      const std::size_t ib = rest % nG;
      rest /= nG;
      const std::size_t ic = rest % nG;
      rest /= nG;
      const std::size_t ir = rest;

      const std::array<double, 3> G = {grid.gh.nodes[ia], grid.gh.nodes[ib], grid.gh.nodes[ic]};
      const double r = grid.radial.nodes[ir];
      const double wnode = grid.gh.weights[ia] * grid.gh.weights[ib] * grid.gh.weights[ic] *
                           grid.radial.weights[ir];

      for (std::size_t m = 0; m < ns; ++m) {
        const auto& sg = grid.sigma.points[m];
        const std::array<double, 3> v = {G[0] + 0.5 * r * sg[0], G[1] + 0.5 * r * sg[1],
                                         G[2] + 0.5 * r * sg[2]};
        const std::array<double, 3> vs = {G[0] - 0.5 * r * sg[0], G[1] - 0.5 * r * sg[1],
                                          G[2] - 0.5 * r * sg[2]};
        peval(v, PV.row(m).data());
        peval(vs, PVS.row(m).data());
        HK.row(m) = (wnode * grid.sigma.weights[m]) * PV.row(m);
      }

      // Post-collision pair values on the omega grid.
      for (std::size_t b = 0; b < no; ++b) {
        const auto& om = grid.omega.points[b];
        const std::array<double, 3> vp = {G[0] + 0.5 * r * om[0], G[1] + 0.5 * r * om[1],
                                          G[2] + 0.5 * r * om[2]};
        const std::array<double, 3> vsp = {G[0] - 0.5 * r * om[0], G[1] - 0.5 * r * om[1],
                                           G[2] - 0.5 * r * om[2]};
        peval(vsp, GainA.row(b).data());  // i-slot
        peval(vp, GainB.row(b).data());   // j-slot
      }

      if (iso) {
        gain_sum.setZero();
        for (std::size_t b = 0; b < no; ++b) {
          const double* ai = GainA.row(b).data();
          const double* bj = GainB.row(b).data();
          const double w = grid.omega.weights[b];
          for (std::int64_t i = 0; i < T; ++i) {
            const double aw = w * ai[i];
            double* dst = gain_sum.data() + i * T;
            for (std::int64_t j = 0; j < T; ++j) dst[j] += aw * bj[j];
          }
        }
        for (std::size_t m = 0; m < ns; ++m) {
          const double* pi = PVS.row(m).data();
          const double* pj = PV.row(m).data();
          double* dst = IJ.row(m).data();
          for (std::int64_t i = 0; i < T; ++i)
            for (std::int64_t j = 0; j < T; ++j) dst[i * T + j] = pi[i] * pj[j];
        }
        hk_sum = HK.colwise().sum();
        const double cg = kernel.strength * kInv4Pi;
        Amap.noalias() += cg * (hk_sum.transpose() * gain_sum);
        Amap.noalias() -= kernel.strength * (HK.transpose() * IJ);
      } else {
        for (std::size_t b = 0; b < no; ++b) {
          const double* ai = GainA.row(b).data();
          const double* bj = GainB.row(b).data();
          double* dst = U.row(b).data();
          for (std::int64_t i = 0; i < T; ++i)
            for (std::int64_t j = 0; j < T; ++j) dst[i * T + j] = ai[i] * bj[j];
        }
        CMapMat KW(grid.ktilde.data(), ns, no);
        W.noalias() = HK.transpose() * KW;
        Amap.noalias() += W * U;
      }
    }
  }

  for (int t = 0; t < nthreads; ++t) {
    const std::vector<double>& Aloc = partial[t];
    for (std::size_t idx = 0; idx < tensor.A.size(); ++idx) tensor.A[idx] += Aloc[idx];
  }

  // The operator is symmetric in its two arguments; averaging removes the
  // antisymmetric quadrature noise.
  for (std::int64_t k = 0; k < T; ++k) {
    double* base = tensor.A.data() + k * TT;
    for (std::int64_t i = 0; i < T; ++i)
      for (std::int64_t j = i + 1; j < T; ++j) {
        const double a = base[i * T + j], b = base[j * T + i];
        const double avg = 0.5 * (a + b);
        base[i * T + j] = base[j * T + i] = avg;
      }
  }

  tensor.conservation_residual = conservation_residual(tensor);
  tensor.nu = spectral_radius_nu(tensor, 1.0, {0.0, 0.0, 0.0}, 1.0);
  return tensor;
}

double tensor_entry_quadrature(const KernelSpec& kernel, const MultiIndex& i, const MultiIndex& j,
                               const MultiIndex& k, double beta, QuadOrders orders) {
  const int N0 = std::max({i.degree(), j.degree(), k.degree()});
  orders = resolve_orders(kernel, N0, orders);
  const AssemblyGrid grid = make_grid(kernel, N0, orders, beta);
  const bool iso = kernel.angle_independent();
  const std::size_t nG = grid.gh.size(), ns = grid.sigma_n(), no = grid.omega_n();

  // 1D dual-polynomial values only along the needed degrees.
  auto poly_at = [&](const MultiIndex& m, const std::array<double, 3>& v) {
    double t[3][9];
    eval_poly_1d(m.k1, beta, v[0], t[0]);
    eval_poly_1d(m.k2, beta, v[1], t[1]);
    eval_poly_1d(m.k3, beta, v[2], t[2]);
    return t[0][m.k1] * t[1][m.k2] * t[2][m.k3];
  };

  double acc = 0.0;
  for (std::size_t ia = 0; ia < nG; ++ia)
    for (std::size_t ib = 0; ib < nG; ++ib)
      for (std::size_t ic = 0; ic < nG; ++ic)
        for (std::size_t ir = 0; ir < grid.radial.size(); ++ir) {
          const std::array<double, 3> G = {grid.gh.nodes[ia] / beta, grid.gh.nodes[ib] / beta,
                                           grid.gh.nodes[ic] / beta};
          const double r = grid.radial.nodes[ir];
          const double wnode = grid.gh.weights[ia] * grid.gh.weights[ib] * grid.gh.weights[ic] *
                               grid.radial.weights[ir];
          for (std::size_t m = 0; m < ns; ++m) {
            const auto& sg = grid.sigma.points[m];
            const std::array<double, 3> v = {G[0] + 0.5 * r * sg[0], G[1] + 0.5 * r * sg[1],
                                             G[2] + 0.5 * r * sg[2]};
            const std::array<double, 3> vs = {G[0] - 0.5 * r * sg[0], G[1] - 0.5 * r * sg[1],
                                              G[2] - 0.5 * r * sg[2]};
            const double hk = poly_at(k, v);
            const double loss = poly_at(i, vs) * poly_at(j, v);
            double inner = 0.0;
            for (std::size_t b = 0; b < no; ++b) {
              const auto& om = grid.omega.points[b];
              const std::array<double, 3> vp = {G[0] + 0.5 * r * om[0], G[1] + 0.5 * r * om[1],
                                                G[2] + 0.5 * r * om[2]};
              const std::array<double, 3> vsp = {G[0] - 0.5 * r * om[0], G[1] - 0.5 * r * om[1],
                                                 G[2] - 0.5 * r * om[2]};
              const double pair = poly_at(i, vsp) * poly_at(j, vp);
              if (iso) {
                inner += grid.omega.weights[b] * kInv4Pi * kernel.strength * (pair - loss);
              } else {
                inner += grid.ktilde[m * no + b] * pair;
              }
            }
            acc += wnode * grid.sigma.weights[m] * hk * inner;
          }
        }
  return acc / (beta * beta * beta);
}

double scale_tensor_factor(const KernelSpec& kernel, double beta) {
  if (!(beta > 0.0)) throw NumericError("scale_tensor_factor: beta must be positive");
  return std::pow(beta, -1.5 - kernel.homogeneity_exponent());
}

double conservation_residual(const CollisionTensor& tensor) {
  const std::int64_t T = tensor.terms();
  if (tensor.N0 < 2) return 0.0;
  const std::int64_t r0 = 0;
  const std::int64_t re[3] = {rank({1, 0, 0}, tensor.N0), rank({0, 1, 0}, tensor.N0),
                              rank({0, 0, 1}, tensor.N0)};
  const std::int64_t r2e[3] = {rank({2, 0, 0}, tensor.N0), rank({0, 2, 0}, tensor.N0),
                               rank({0, 0, 2}, tensor.N0)};
  double scale = 0.0;
  for (double a : tensor.A) scale = std::max(scale, std::abs(a));
  if (scale == 0.0) return 0.0;

  double worst = 0.0;
  for (std::int64_t i = 0; i < T; ++i)
    for (std::int64_t j = 0; j < T; ++j) {
      worst = std::max(worst, std::abs(tensor.entry(r0, i, j)));
      for (int d = 0; d < 3; ++d) worst = std::max(worst, std::abs(tensor.entry(re[d], i, j)));
      double energy = 3.0 * tensor.entry(r0, i, j);
      for (int d = 0; d < 3; ++d) energy += std::numbers::sqrt2 * tensor.entry(r2e[d], i, j);
      worst = std::max(worst, std::abs(energy));
    }
  return worst / scale;
}

namespace {

double power_iteration(const RowMat& L) {
  const std::int64_t T = L.rows();
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd x(T);
  for (std::int64_t idx = 0; idx < T; ++idx) x(idx) = unif(rng);
  x.normalize();

  double est = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd y = L * x;
    const double ny = y.norm();
    if (!(ny > 0.0)) return 0.0;
    const double prev = est;
    est = ny;
    x = y / ny;
    if (it > 2 && std::abs(est - prev) <= 1e-8 * std::max(est, 1e-300)) return est;
  }
  throw NumericError("spectral_radius_nu: power iteration did not converge");
}

RowMat linearized_matrix(const CollisionTensor& tensor, const Eigen::VectorXd& Mhat, double scale) {
  const std::int64_t T = tensor.terms();
  RowMat L(T, T);
  for (std::int64_t k = 0; k < T; ++k) {
    CMapMat Ak(tensor.A.data() + k * T * T, T, T);
    L.row(k) = scale * (Ak * Mhat + Ak.transpose() * Mhat).transpose();
  }
  return L;
}

}  // namespace

double spectral_radius_nu(const CollisionTensor& tensor, double rho, const std::array<double, 3>& u,
                          double theta) {
  const BasisSpec spec(tensor.N0, 1.0);
  const CoeffVector M = maxwellian_coeffs(rho, u, theta, spec);
  Eigen::Map<const Eigen::VectorXd> Mhat(M.data.data(), M.data.size());
  return power_iteration(linearized_matrix(tensor, Mhat, 1.0));
}

double nu_for_basis(const CollisionTensor& tensor, double rho, const std::array<double, 3>& u,
                    double theta, const BasisSpec& spec) {
  const BasisSpec local(tensor.N0, spec.beta, spec.zeta);
  const CoeffVector M = maxwellian_coeffs(rho, u, theta, local);
  Eigen::Map<const Eigen::VectorXd> Mhat(M.data.data(), M.data.size());
  return power_iteration(linearized_matrix(tensor, Mhat, scale_tensor_factor(tensor.kernel, spec.beta)));
}

void collide(const BasisSpec& spec, std::span<const double> coeffs, const CollisionTensor& tensor,
             double nu, std::span<double> out) {
  const int N = spec.N, N0 = tensor.N0;
  const std::int64_t T0 = term_count(N0);
  const std::int64_t TN = term_count(N);
  const std::int64_t Tq = std::min(T0, TN);
  const double scale = scale_tensor_factor(tensor.kernel, spec.beta);

  Eigen::Map<const Eigen::VectorXd> f(coeffs.data(), Tq);
  for (std::int64_t k = 0; k < Tq; ++k) {
    CMapMat Ak(tensor.A.data() + k * T0 * T0, T0, T0);
    out[k] = scale * f.dot(Ak.topLeftCorner(Tq, Tq) * f);
  }

  if (N > N0) {
    const MacroState macro = macro_from_coeffs(spec, coeffs);
    if (std::isnan(nu)) nu = nu_for_basis(tensor, macro.rho, macro.u, macro.theta, spec);
    std::vector<double> Mhat(TN);
    maxwellian_coeffs(macro.rho, macro.u, macro.theta, spec, Mhat);
    for (std::int64_t r = T0; r < TN; ++r) out[r] = nu * (Mhat[r] - coeffs[r]);
  }
}

CoeffVector collide(const CoeffVector& coeffs, const CollisionTensor& tensor, double nu) {
  CoeffVector out(coeffs.spec);
  collide(coeffs.spec, coeffs.data, tensor, nu, out.data);
  return out;
}

// ---------------------------------------------------------------------------
// Cache file: magic "HBCT", version u32, kernel tag u8 + 3 f64 parameters,
// N0 u32, quadrature orders u32 x 3, nu f64, then T^3 entries f64 in
// [k][i][j] rank-major order.  Little-endian throughout.
// ---------------------------------------------------------------------------

static_assert(std::endian::native == std::endian::little, "cache format is little-endian");

namespace {
constexpr char kMagic[4] = {'H', 'B', 'C', 'T'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void save_tensor(const CollisionTensor& tensor, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("save_tensor: cannot open " + path.string());
  os.write(kMagic, 4);
  put(os, kVersion);
  const std::uint8_t tag = static_cast<std::uint8_t>(tensor.kernel.variant);
  put(os, tag);
  put(os, tensor.kernel.strength);
  put(os, tensor.kernel.exponent);
  put(os, tensor.kernel.eta);
  put(os, static_cast<std::uint32_t>(tensor.N0));
  put(os, static_cast<std::uint32_t>(tensor.orders.n_gauss));
  put(os, static_cast<std::uint32_t>(tensor.orders.n_radial));
  put(os, static_cast<std::uint32_t>(tensor.orders.sphere_degree));
  put(os, tensor.nu);
  os.write(reinterpret_cast<const char*>(tensor.A.data()),
           static_cast<std::streamsize>(tensor.A.size() * sizeof(double)));
  if (!os) throw IoError("save_tensor: write failed for " + path.string());
}

CollisionTensor load_tensor(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("load_tensor: cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("load_tensor: bad magic in " + path.string());
  std::uint32_t version = 0;
  get(is, version);
  if (version != kVersion) throw IoError("load_tensor: unsupported format version");

  CollisionTensor tensor;
  std::uint8_t tag = 0;
  get(is, tag);
  if (tag > 2) throw IoError("load_tensor: unknown kernel tag");
  tensor.kernel.variant = static_cast<KernelSpec::Variant>(tag);
  get(is, tensor.kernel.strength);
  get(is, tensor.kernel.exponent);
  get(is, tensor.kernel.eta);
  std::uint32_t n0 = 0, ng = 0, nr = 0, sd = 0;
  get(is, n0);
  get(is, ng);
  get(is, nr);
  get(is, sd);
  if (n0 > 8) throw IoError("load_tensor: N0 out of range");
  tensor.N0 = static_cast<int>(n0);
  tensor.orders.n_gauss = static_cast<int>(ng);
  tensor.orders.n_radial = static_cast<int>(nr);
  tensor.orders.sphere_degree = static_cast<int>(sd);
  tensor.orders.omega_degree = default_orders(tensor.kernel, tensor.N0).omega_degree;
  get(is, tensor.nu);

  const std::int64_t T = tensor.terms();
  tensor.A.resize(static_cast<std::size_t>(T) * T * T);
  is.read(reinterpret_cast<char*>(tensor.A.data()),
          static_cast<std::streamsize>(tensor.A.size() * sizeof(double)));
  if (!is) throw IoError("load_tensor: truncated file " + path.string());

  // Integrity: one randomly chosen pair of conservation columns must
  // contract to zero within assembly tolerance.
  if (tensor.N0 >= 2) {
    std::mt19937_64 rng(0xC0115EEDull + static_cast<std::uint64_t>(T));
    std::uniform_int_distribution<std::int64_t> pick(0, T - 1);
    const std::int64_t i = pick(rng), j = pick(rng);
    double scale = 0.0;
    for (double a : tensor.A) scale = std::max(scale, std::abs(a));
    double worst = std::abs(tensor.entry(0, i, j));
    for (int d = 0; d < 3; ++d) {
      MultiIndex e{d == 0, d == 1, d == 2};
      worst = std::max(worst, std::abs(tensor.entry(rank(e, tensor.N0), i, j)));
    }
    double energy = 3.0 * tensor.entry(0, i, j);
    energy += std::numbers::sqrt2 * tensor.entry(rank({2, 0, 0}, tensor.N0), i, j);
    energy += std::numbers::sqrt2 * tensor.entry(rank({0, 2, 0}, tensor.N0), i, j);
    energy += std::numbers::sqrt2 * tensor.entry(rank({0, 0, 2}, tensor.N0), i, j);
    worst = std::max(worst, std::abs(energy));
    if (scale > 0.0 && worst > 1e-6 * scale)
      throw IoError("load_tensor: conservation check failed, cache corrupt?");
  }
  tensor.conservation_residual = conservation_residual(tensor);
  return tensor;
}

std::string tensor_cache_name(const KernelSpec& kernel, int N0, QuadOrders orders) {
  orders = resolve_orders(kernel, N0, orders);
  std::ostringstream key;
  key << kernel.describe() << "|N0=" << N0 << "|g" << orders.n_gauss << "|r" << orders.n_radial
      << "|s" << orders.sphere_degree << "|o" << orders.omega_degree;
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (char c : key.str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream name;
  const char* variant = kernel.variant == KernelSpec::Variant::IsotropicMaxwell ? "iso"
                        : kernel.variant == KernelSpec::Variant::VHS            ? "vhs"
                                                                                : "ipl";
  name << "tensor_" << variant << "_N0" << N0 << "_" << std::hex << h << ".hbct";
  return name.str();
}

}  // namespace hermspec
