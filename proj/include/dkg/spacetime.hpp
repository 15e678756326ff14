#pragma once

#include "dkg/embedding.hpp"
#include "dkg/solver.hpp"

#include <cstdint>
#include <string>

namespace dkg {

// Samples of a function on [0, T) × [0, box)³, time-major.
struct SpacetimeArray {
  int Nt = 0, N = 0;
  double T = 1, box = 2 * M_PI;
  CVec data;

  SpacetimeArray() = default;
  SpacetimeArray(int Nt, int N, double T, double box);
  size_t size() const { return size_t(Nt) * N * N * N; }
  cplx& at(int t, size_t x) { return data[size_t(t) * N * N * N + x]; }
};

enum class NormVariant { H, Xplus, Xminus };
const char* to_string(NormVariant v);

enum class Taper { None, RaisedCosine };
// w(t_n) = ½(1 − cos(2π(n + ½)/Nt)).
std::string taper_description(Taper t);

// ‖⟨ξ⟩^a ⟨τ ± |ξ|⟩^b û‖ (X±) or ‖⟨ξ⟩^a ⟨|τ| − |ξ|⟩^b û‖ (H), ⟨x⟩ = 1 + |x|, after
// the time taper; normalized so that a = b = 0 gives the discrete L² norm of
// the tapered samples.
double spacetime_norm(const SpacetimeArray& u, double a, double b, NormVariant v,
                      Taper taper = Taper::RaisedCosine);
double direct_l2(const SpacetimeArray& u, Taper taper = Taper::RaisedCosine);

// Random spacetime array with Fourier support |m| < N/4, |m_t| < Nt/4.
SpacetimeArray random_band_limited(int Nt, int N, uint64_t seed);

// Samples a solver state evolution on a time window (taper applied later).
SpacetimeArray free_wave_sample(const Vec3& xi0_modes, int Nt, int N, double T, Sign sign);

// Binary layout: "DKGS", uint32 version = 1, uint32 Nt, uint32 N, float64 T,
// float64 box, then Nt·N³ little-endian complex128 samples, time-major.
void write_spacetime(const std::string& path, const SpacetimeArray& u);
SpacetimeArray read_spacetime(const std::string& path);

struct EmbeddingCheck {
  double worst_quotient = 0;
  int N = 0, Nt = 0;
  size_t trials = 0;
  std::string caveat =
      "heuristic: discrete periodic band-limited samples; quotients indicate growth under refinement only";
};

// max over random band-limited u, v of ‖uv‖_target / (‖u‖_left ‖v‖_right), with
// infinitesimals in the exponents replaced by `eps_value`.
EmbeddingCheck empirical_embedding_check(const Fact& f, int N, int Nt, size_t trials, uint64_t seed,
                                         double eps_value = 1e-3);

}  // namespace dkg
