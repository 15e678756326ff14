#include "dkg/spacetime.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace dkg {

namespace {

double bracket(double x) { return 1 + std::abs(x); }

double taper_weight(Taper t, int n, int Nt) {
  if (t == Taper::None) return 1.0;
  return 0.5 * (1 - std::cos(2 * M_PI * (n + 0.5) / Nt));
}

int signed_mode(int c, int n) { return c <= n / 2 - 1 ? c : c - n; }

CVec fft4(const SpacetimeArray& u, Taper taper) {
  CVec in(u.size()), out(u.size());
  const size_t slab = size_t(u.N) * u.N * u.N;
  for (int t = 0; t < u.Nt; ++t) {
    const double w = taper_weight(taper, t, u.Nt);
    for (size_t x = 0; x < slab; ++x) in[t * slab + x] = w * u.data[t * slab + x];
  }
  const int dims[4] = {u.Nt, u.N, u.N, u.N};
  fftw_plan p = fftw_plan_dft(4, dims, reinterpret_cast<fftw_complex*>(in.data()),
                              reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  return out;
}

double cell(const SpacetimeArray& u) { return (u.T / u.Nt) * std::pow(u.box / u.N, 3); }

SpacetimeArray inverse4(const SpacetimeArray& shape, CVec hat) {
  SpacetimeArray u(shape.Nt, shape.N, shape.T, shape.box);
  const int dims[4] = {u.Nt, u.N, u.N, u.N};
  fftw_plan p = fftw_plan_dft(4, dims, reinterpret_cast<fftw_complex*>(hat.data()),
                              reinterpret_cast<fftw_complex*>(u.data.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  for (cplx& z : u.data) z /= double(u.size());
  return u;
}

}  // namespace

SpacetimeArray::SpacetimeArray(int Nt_, int N_, double T_, double box_)
    : Nt(Nt_), N(N_), T(T_), box(box_), data(size_t(Nt_) * N_ * N_ * N_) {
  if (Nt < 1 || N < 1 || !(T > 0) || !(box > 0)) throw std::invalid_argument("spacetime array: bad shape");
}

const char* to_string(NormVariant v) {
  switch (v) {
    case NormVariant::H: return "H";
    case NormVariant::Xplus: return "X+";
    case NormVariant::Xminus: return "X-";
  }
  return "?";
}

std::string taper_description(Taper t) {
  return t == Taper::None ? "none" : "raised cosine w(t_n) = (1 - cos(2 pi (n + 1/2) / Nt)) / 2";
}

double spacetime_norm(const SpacetimeArray& u, double a, double b, NormVariant v, Taper taper) {
  const CVec hat = fft4(u, taper);
  const int N = u.N;
  const size_t slab = size_t(N) * N * N;
  const double kt = 2 * M_PI / u.T, kx = 2 * M_PI / u.box;
  double acc = 0;
  for (int t = 0; t < u.Nt; ++t) {
    const double tau = kt * signed_mode(t, u.Nt);
    for (size_t x = 0; x < slab; ++x) {
      const int i = int(x / (size_t(N) * N)), j = int((x / N) % N), k = int(x % N);
      const double xi = kx * std::sqrt(double(signed_mode(i, N)) * signed_mode(i, N) +
                                       double(signed_mode(j, N)) * signed_mode(j, N) +
                                       double(signed_mode(k, N)) * signed_mode(k, N));
      double mod = 0;
      switch (v) {
        case NormVariant::H: mod = std::abs(tau) - xi; break;
        case NormVariant::Xplus: mod = tau + xi; break;
        case NormVariant::Xminus: mod = tau - xi; break;
      }
      const double w = (a == 0 ? 1.0 : std::pow(bracket(xi), 2 * a)) * (b == 0 ? 1.0 : std::pow(bracket(mod), 2 * b));
      acc += w * std::norm(hat[t * slab + x]);
    }
  }
  return std::sqrt(acc * cell(u) / double(u.size()));
}

double direct_l2(const SpacetimeArray& u, Taper taper) {
  const size_t slab = size_t(u.N) * u.N * u.N;
  double acc = 0;
  for (int t = 0; t < u.Nt; ++t) {
    const double w = taper_weight(taper, t, u.Nt);
    for (size_t x = 0; x < slab; ++x) acc += w * w * std::norm(u.data[t * slab + x]);
  }
  return std::sqrt(acc * cell(u));
}

SpacetimeArray random_band_limited(int Nt, int N, uint64_t seed) {
  SpacetimeArray shape(Nt, N, 1.0, 2 * M_PI);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVec hat(shape.size(), 0);
  const size_t slab = size_t(N) * N * N;
  for (int t = 0; t < Nt; ++t) {
    if (std::abs(signed_mode(t, Nt)) * 4 >= Nt) continue;
    for (size_t x = 0; x < slab; ++x) {
      const int m[3] = {signed_mode(int(x / (size_t(N) * N)), N), signed_mode(int((x / N) % N), N),
                        signed_mode(int(x % N), N)};
      if (std::abs(m[0]) * 4 >= N || std::abs(m[1]) * 4 >= N || std::abs(m[2]) * 4 >= N) continue;
      hat[t * slab + x] = cplx(g(rng), g(rng)) * double(shape.size());
    }
  }
  return inverse4(shape, std::move(hat));
}

SpacetimeArray free_wave_sample(const Vec3& m, int Nt, int N, double T, Sign sign) {
  SpacetimeArray u(Nt, N, T, 2 * M_PI);
  const double h = u.box / N, k = m.norm();
  const size_t slab = size_t(N) * N * N;
  for (int t = 0; t < Nt; ++t)
    for (size_t x = 0; x < slab; ++x) {
      const Vec3 p(h * double(x / (size_t(N) * N)), h * double((x / N) % N), h * double(x % N));
      const double tt = T * t / Nt;
      u.data[t * slab + x] = std::exp(cplx(0, m.dot(p) - sgn(sign) * tt * k));
    }
  return u;
}

void write_spacetime(const std::string& path, const SpacetimeArray& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const uint32_t hdr[3] = {1, uint32_t(u.Nt), uint32_t(u.N)};
  out.write("DKGS", 4);
  out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  out.write(reinterpret_cast<const char*>(&u.T), 8);
  out.write(reinterpret_cast<const char*>(&u.box), 8);
  out.write(reinterpret_cast<const char*>(u.data.data()), std::streamsize(u.size() * sizeof(cplx)));
}

SpacetimeArray read_spacetime(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  char magic[4];
  uint32_t hdr[3];
  double T, box;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
  in.read(reinterpret_cast<char*>(&T), 8);
  in.read(reinterpret_cast<char*>(&box), 8);
  if (!in || std::memcmp(magic, "DKGS", 4) != 0 || hdr[0] != 1)
    throw std::runtime_error(path + ": not a spacetime array (bad header)");
  SpacetimeArray u{static_cast<int>(hdr[1]), static_cast<int>(hdr[2]), T, box};
  in.read(reinterpret_cast<char*>(u.data.data()), std::streamsize(u.size() * sizeof(cplx)));
  if (!in) throw std::runtime_error(path + ": truncated data");
  return u;
}

EmbeddingCheck empirical_embedding_check(const Fact& f, int N, int Nt, size_t trials, uint64_t seed,
                                         double eps_value) {
  if (N > 16 || Nt > 32) throw std::invalid_argument("empirical_embedding_check: grid too large (N <= 16, Nt <= 32)");
  auto ev = [&](const ExtFrac& x) { return x.evaluate(eps_value, eps_value, eps_value); };
  auto variant = [](Variant v) {
    return v == Variant::Xplus ? NormVariant::Xplus : v == Variant::Xminus ? NormVariant::Xminus : NormVariant::H;
  };
  auto norm = [&](const SpacetimeArray& u, const SpaceSpec& s) {
    return spacetime_norm(u, ev(s.a), ev(s.b), variant(s.variant), Taper::None);
  };
  EmbeddingCheck out;
  out.N = N;
  out.Nt = Nt;
  out.trials = trials;
  for (size_t i = 0; i < trials; ++i) {
    const SpacetimeArray u = random_band_limited(Nt, N, seed + 2 * i);
    const SpacetimeArray v = random_band_limited(Nt, N, seed + 2 * i + 1);
    SpacetimeArray uv = u;
    for (size_t k = 0; k < uv.size(); ++k) uv.data[k] = u.data[k] * v.data[k];
    const double q = norm(uv, f.target) / (norm(u, f.left) * norm(v, f.right));
    out.worst_quotient = std::max(out.worst_quotient, q);
  }
  return out;
}

}  // namespace dkg
