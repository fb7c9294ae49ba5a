#include "hermspec/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hermspec/errors.hpp"

namespace hermspec {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Plans are cached per transform length; execution on fresh arrays is
// thread-safe, creation is not.
struct FftPlans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

FftPlans& plans_for(int M) {
  static std::mutex mtx;
  static std::map<int, FftPlans> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  FftPlans p;
  std::vector<std::complex<double>> a(M), b(M);
  p.fwd = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(M, p).first->second;
}

void run_plan(fftw_plan plan, std::complex<double>* in, std::complex<double>* out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in), reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

SpatialField::SpatialField(const BasisSpec& s, int D_, int M_, const std::array<double, 3>& L_)
    : spec(s), D(D_), M(M_), L(L_) {
  if (D < 0 || D > 3) throw ConfigError("SpatialField: D must be in [0,3]");
  if (D == 0) M = 1;
  if (D >= 1 && (M < 2 || M % 2 != 0)) throw ConfigError("SpatialField: M must be even");
  data.assign(static_cast<std::size_t>(points()) * spec.size(), 0.0);
}

std::int64_t SpatialField::points() const { return D == 0 ? 1 : ipow(M, D); }

std::array<double, 3> SpatialField::point(std::int64_t p) const {
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  for (int d = 0; d < D; ++d) {
    x[d] = static_cast<double>(p % M) * L[d] / M;
    p /= M;
  }
  return x;
}

void SpatialField::resize_order(int new_N) {
  if (new_N == spec.N) return;
  const BasisSpec ns(new_N, spec.beta, spec.zeta);
  const std::int64_t P = points();
  const std::int64_t told = spec.size(), tnew = ns.size();
  std::vector<double> nd(static_cast<std::size_t>(P) * tnew, 0.0);
  const std::int64_t copy = std::min(told, tnew);
  for (std::int64_t p = 0; p < P; ++p)
    std::copy_n(data.data() + p * told, copy, nd.data() + p * tnew);
  spec = ns;
  data = std::move(nd);
}

std::vector<std::complex<double>> fourier_forward(const SpatialField& field) {
  const std::int64_t P = field.points(), T = field.spec.size();
  std::vector<std::complex<double>> ghat(static_cast<std::size_t>(P) * T);
  for (std::size_t i = 0; i < ghat.size(); ++i) ghat[i] = field.data[i];
  if (field.D == 0) return ghat;

  const int M = field.M;
  FftPlans& plans = plans_for(M);
  std::vector<std::complex<double>> line(M), out(M);
  std::int64_t stride = 1;
  for (int d = 0; d < field.D; ++d) {
    const std::int64_t nlines = P / M;
    for (std::int64_t ln = 0; ln < nlines; ++ln) {
      // Base point index of this line: insert a zero digit at axis d.
      const std::int64_t low = ln % stride, high = ln / stride;
      const std::int64_t base = low + high * stride * M;
      for (std::int64_t r = 0; r < T; ++r) {
        for (int j = 0; j < M; ++j) line[j] = ghat[(base + j * stride) * T + r];
        run_plan(plans.fwd, line.data(), out.data());
        for (int j = 0; j < M; ++j) ghat[(base + j * stride) * T + r] = out[j] / double(M);
      }
    }
    stride *= M;
  }
  return ghat;
}

void fourier_inverse(std::span<const std::complex<double>> ghat, SpatialField& field) {
  const std::int64_t P = field.points(), T = field.spec.size();
  if (static_cast<std::int64_t>(ghat.size()) != P * T)
    throw NumericError("fourier_inverse: size mismatch");
  std::vector<std::complex<double>> work(ghat.begin(), ghat.end());
  if (field.D > 0) {
    const int M = field.M;
    FftPlans& plans = plans_for(M);
    std::vector<std::complex<double>> line(M), out(M);
    std::int64_t stride = 1;
    for (int d = 0; d < field.D; ++d) {
      const std::int64_t nlines = P / M;
      for (std::int64_t ln = 0; ln < nlines; ++ln) {
        const std::int64_t low = ln % stride, high = ln / stride;
        const std::int64_t base = low + high * stride * M;
        for (std::int64_t r = 0; r < T; ++r) {
          for (int j = 0; j < M; ++j) line[j] = work[(base + j * stride) * T + r];
          run_plan(plans.bwd, line.data(), out.data());
          for (int j = 0; j < M; ++j) work[(base + j * stride) * T + r] = out[j];
        }
      }
      stride *= M;
    }
  }
  for (std::size_t i = 0; i < work.size(); ++i) field.data[i] = work[i].real();
}

void advection_rhs(const SpatialField& field, SpatialField& out) {
  const std::int64_t P = field.points(), T = field.spec.size();
  if (out.spec.size() != T || out.points() != P) out = SpatialField(field.spec, field.D, field.M, field.L);
  out.spec = field.spec;
  std::fill(out.data.begin(), out.data.end(), 0.0);
  if (field.D == 0) return;

  const int N = field.spec.N, M = field.M;
  const double beta = field.spec.beta;
  FftPlans& plans = plans_for(M);

  // Degree-coupling tables per axis: rank of k -/+ e_d and the factors
  // sqrt(k_d)/beta, sqrt(k_d+1)/beta (out-of-range coefficients are zero).
  std::vector<std::int64_t> down(T), up(T);
  std::vector<double> cdown(T), cup(T);
  std::vector<double> W(static_cast<std::size_t>(P) * T);
  std::vector<std::complex<double>> line(M), freq(M);

  std::int64_t stride = 1;
  for (int d = 0; d < field.D; ++d) {
    for_each_index(N, [&](std::int64_t r, int k1, int k2, int k3) {
      MultiIndex k{k1, k2, k3};
      int* kd = (d == 0 ? &k.k1 : d == 1 ? &k.k2 : &k.k3);
      const int kv = *kd;
      if (kv > 0) {
        *kd = kv - 1;
        down[r] = rank(k, N);
        cdown[r] = std::sqrt(double(kv)) / beta;
        *kd = kv;
      } else {
        down[r] = -1;
        cdown[r] = 0.0;
      }
      if (k.degree() + 1 <= N) {
        *kd = kv + 1;
        up[r] = rank(k, N);
        cup[r] = std::sqrt(double(kv + 1)) / beta;
        *kd = kv;
      } else {
        up[r] = -1;
        cup[r] = 0.0;
      }
    });

    const double zd = field.spec.zeta[d];
    for (std::int64_t p = 0; p < P; ++p) {
      const double* f = field.data.data() + p * T;
      double* w = W.data() + p * T;
      for (std::int64_t r = 0; r < T; ++r) {
        double v = zd * f[r];
        if (down[r] >= 0) v += cdown[r] * f[down[r]];
        if (up[r] >= 0) v += cup[r] * f[up[r]];
        w[r] = v;
      }
    }

    // d/dx_d in frequency space: multiply mode l by 2*pi*i*l / L_d.
    const double two_pi_over_L = 2.0 * std::numbers::pi / field.L[d];
    const std::int64_t nlines = P / M;
    for (std::int64_t ln = 0; ln < nlines; ++ln) {
      const std::int64_t low = ln % stride, high = ln / stride;
      const std::int64_t base = low + high * stride * M;
      for (std::int64_t r = 0; r < T; ++r) {
        for (int j = 0; j < M; ++j) line[j] = W[(base + j * stride) * T + r];
        run_plan(plans.fwd, line.data(), freq.data());
        for (int j = 0; j < M; ++j) {
          const int l = (j <= M / 2 ? j : j - M);
          const double fac = (j == M / 2 ? 0.0 : two_pi_over_L * l / M);
          freq[j] *= std::complex<double>(0.0, fac);
        }
        run_plan(plans.bwd, freq.data(), line.data());
        for (int j = 0; j < M; ++j) out.data[(base + j * stride) * T + r] += line[j].real();
      }
    }
    stride *= M;
  }
}

DomainTotals domain_totals(const SpatialField& field) {
  const std::int64_t P = field.points();
  double cell = 1.0;
  for (int d = 0; d < field.D; ++d) cell *= field.L[d] / field.M;
  DomainTotals t;
  for (std::int64_t p = 0; p < P; ++p) {
    const auto f = field.at(p);
    t.mass += cell * raw_moment(field.spec, f, {0, 0, 0});
    t.momentum[0] += cell * raw_moment(field.spec, f, {1, 0, 0});
    t.momentum[1] += cell * raw_moment(field.spec, f, {0, 1, 0});
    t.momentum[2] += cell * raw_moment(field.spec, f, {0, 0, 1});
    t.energy += cell * (raw_moment(field.spec, f, {2, 0, 0}) + raw_moment(field.spec, f, {0, 2, 0}) +
                        raw_moment(field.spec, f, {0, 0, 2}));
  }
  return t;
}

MacroState mean_state(const SpatialField& field) {
  const DomainTotals t = domain_totals(field);
  double vol = 1.0;
  for (int d = 0; d < field.D; ++d) vol *= field.L[d];
  MacroState m;
  m.rho = t.mass / vol;
  if (!(m.rho > 0.0)) throw NumericError("mean_state: nonpositive mean density");
  for (int d = 0; d < 3; ++d) m.u[d] = t.momentum[d] / t.mass;
  double u2 = 0.0;
  for (int d = 0; d < 3; ++d) u2 += m.u[d] * m.u[d];
  m.theta = (t.energy / t.mass - u2) / 3.0;
  return m;
}

}  // namespace hermspec
