#pragma once

#include "dkg/dirac.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dkg {

using CVec = std::vector<cplx>;

// Periodic N³ grid on [0, box)³ with FFTW transforms. Fourier coefficients are
// stored unnormalized (FFTW convention); physical values are ifft/N³.
class Grid {
 public:
  Grid(int N, double box);
  int N() const { return N_; }
  size_t size() const { return size_t(N_) * N_ * N_; }
  double box() const { return box_; }
  double cell_volume() const;
  Vec3 k(size_t idx) const;
  double knorm(size_t idx) const { return knorm_[idx]; }
  // ξ/|ξ| per mode (zero at ξ = 0).
  const Vec3& unit_k(size_t idx) const { return unit_[idx]; }
  std::array<int, 3> mode(size_t idx) const;  // signed integer wavenumbers
  bool in_band(size_t idx) const { return band_[idx]; }  // 2/3 rule

  void forward(const CVec& in, CVec& out) const;
  void inverse(const CVec& in, CVec& out) const;  // normalized: returns physical values
  void dealias(CVec& hat) const;

 private:
  struct Plans;
  int N_;
  double box_;
  std::vector<double> knorm_;
  std::vector<Vec3> unit_;
  std::vector<bool> band_;
  std::shared_ptr<Plans> plans_;
};

struct SpinorField {
  std::array<CVec, 4> hat;
};

struct State {
  double t = 0;
  SpinorField psi;
  CVec phi, phit;  // Fourier side; φ, ∂ₜφ are real in physical space
};

struct SolverConfig {
  int N = 32;
  double box = 2 * M_PI;
  double dt = 1.0 / 256;
  double T = 1;
  double s = 0, r = 0.5;  // diagnostic exponents
  bool dealias = true;
  bool coupled = true;
  std::string integrator = "ifrk4";  // or "ifrk2"
  std::string preset = "gaussian";   // gaussian | plane-wave | random-band-limited
  uint64_t seed = 0;
  double amplitude = 1;
  size_t record_every = 1;
};

// Raised on NaN/overflow; carries the time and the offending diagnostic.
struct SolverAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Diagnostics {
  std::vector<double> t, charge, psi_hs, phi_hr, phit_hr1;
  double max_imag_phi = 0;     // max |Im φ| relative to max |φ|
  double max_imag_source = 0;  // max |Im ψ†βψ| relative to its max
  double charge_drift() const;  // max |Q(t) − Q(0)| / Q(0)
  std::string csv() const;
};

class Solver {
 public:
  explicit Solver(SolverConfig cfg);
  const SolverConfig& config() const { return cfg_; }
  const Grid& grid() const { return grid_; }

  State initial() const;
  State zero() const;

  // ψ± = P±(D)ψ modewise, P±(0) = ½I.
  std::pair<SpinorField, SpinorField> split(const SpinorField& psi) const;
  State free_propagate(const State& s, double t) const;
  // One IFRK step; optionally reports max |Im ψ†βψ|/max|ψ†βψ| at the start.
  void step(State& s, double h, double* imag_residue = nullptr) const;
  Diagnostics run(State& s) const;

  double charge(const State& s) const;  // ‖ψ‖_{L²}
  double sobolev_norm(const CVec& hat, double s) const;  // ⟨ξ⟩ = 1 + |ξ|
  double sobolev_norm(const SpinorField& psi, double s) const;
  // Physical-space values of a Fourier field.
  CVec physical(const CVec& hat) const;

 private:
  // Sources (iφβψ, 0, ψ†βψ) for (ψ, φ, ∂ₜφ), dealiased when enabled.
  State nonlinear(const State& s, double* imag_residue = nullptr) const;
  void record(const State& s, Diagnostics& d) const;

  struct Phases {
    double t;
    std::vector<double> cos, sin;  // of t|ξ| per mode
  };
  const Phases& phases(double t) const;

  SolverConfig cfg_;
  Grid grid_;
  struct PhaseCache {
    std::mutex mutex;
    std::vector<std::unique_ptr<Phases>> entries;
  };
  std::shared_ptr<PhaseCache> cache_ = std::make_shared<PhaseCache>();
};

// L² distance between terminal states on two grids, comparing Fourier-series
// coefficients mode by mode (modes missing on one grid count fully).
double state_difference(const Solver& a, const State& sa, const Solver& b, const State& sb);

// Flat binary snapshot: "DKGF" magic, uint32 version, uint32 N, uint32 ncomp,
// char[8] dtype "c128le", then little-endian complex doubles, component-major.
void write_snapshot(const std::string& path, const Solver& solver, const State& s);

}  // namespace dkg
