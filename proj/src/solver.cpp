#include "dkg/solver.hpp"

#include <fftw3.h>

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace dkg {

namespace {

void axpy(CVec& y, double a, const CVec& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

bool finite(const CVec& v) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e150) return false;
  return true;
}

}  // namespace

struct Grid::Plans {
  fftw_plan fwd = nullptr, inv = nullptr;
  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
  }
};

Grid::Grid(int N, double box) : N_(N), box_(box), plans_(std::make_shared<Plans>()) {
  if (N < 2 || (N & (N - 1)) != 0) throw std::invalid_argument("grid: N must be a power of two >= 2");
  if (!(box > 0)) throw std::invalid_argument("grid: box length must be positive");
  knorm_.resize(size());
  unit_.resize(size());
  band_.resize(size());
  for (size_t i = 0; i < size(); ++i) {
    const Vec3 ki = k(i);
    knorm_[i] = ki.norm();
    unit_[i] = knorm_[i] > 0 ? Vec3(ki / knorm_[i]) : Vec3::Zero();
    const auto m = mode(i);
    band_[i] = std::abs(m[0]) < N / 3.0 && std::abs(m[1]) < N / 3.0 && std::abs(m[2]) < N / 3.0;
  }
  CVec a(size()), b(size());
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  plans_->fwd = fftw_plan_dft_3d(N, N, N, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->inv = fftw_plan_dft_3d(N, N, N, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

double Grid::cell_volume() const { return std::pow(box_ / N_, 3); }

std::array<int, 3> Grid::mode(size_t idx) const {
  const int n = N_;
  int c[3] = {int(idx / (size_t(n) * n)), int((idx / n) % n), int(idx % n)};
  std::array<int, 3> m;
  for (int i = 0; i < 3; ++i) m[i] = c[i] <= n / 2 - 1 ? c[i] : c[i] - n;
  return m;
}

Vec3 Grid::k(size_t idx) const {
  const auto m = mode(idx);
  return (2 * M_PI / box_) * Vec3(m[0], m[1], m[2]);
}

void Grid::forward(const CVec& in, CVec& out) const {
  out.resize(size());
  fftw_execute_dft(plans_->fwd, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void Grid::inverse(const CVec& in, CVec& out) const {
  out.resize(size());
  fftw_execute_dft(plans_->inv, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / double(size());
  for (cplx& z : out) z *= scale;
}

void Grid::dealias(CVec& hat) const {
  for (size_t i = 0; i < size(); ++i)
    if (!band_[i]) hat[i] = 0;
}

// ---- diagnostics ----------------------------------------------------------------

double Diagnostics::charge_drift() const {
  double d = 0;
  for (double q : charge) d = std::max(d, std::abs(q - charge.front()));
  return charge.empty() || charge.front() == 0 ? d : d / charge.front();
}

std::string Diagnostics::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t,charge,psi_Hs,phi_Hr,phit_Hr-1\n";
  for (size_t i = 0; i < t.size(); ++i)
    out << t[i] << "," << charge[i] << "," << psi_hs[i] << "," << phi_hr[i] << "," << phit_hr1[i] << "\n";
  return out.str();
}

// ---- solver -----------------------------------------------------------------------

Solver::Solver(SolverConfig cfg) : cfg_(std::move(cfg)), grid_(cfg_.N, cfg_.box) {
  if (!(cfg_.dt > 0)) throw std::invalid_argument("solver: dt must be positive");
  if (!(cfg_.T >= 0)) throw std::invalid_argument("solver: T must be non-negative");
  if (cfg_.integrator != "ifrk4" && cfg_.integrator != "ifrk2")
    throw std::invalid_argument("solver: integrator must be ifrk4 or ifrk2");
}

CVec Solver::physical(const CVec& hat) const {
  CVec out;
  grid_.inverse(hat, out);
  return out;
}

State Solver::zero() const {
  State s;
  for (auto& c : s.psi.hat) c.assign(grid_.size(), 0);
  s.phi.assign(grid_.size(), 0);
  s.phit.assign(grid_.size(), 0);
  return s;
}

State Solver::initial() const {
  State s = zero();
  const int N = grid_.N();
  const double h = cfg_.box / N, A = cfg_.amplitude;
  std::array<CVec, 4> psi;
  for (auto& c : psi) c.assign(grid_.size(), 0);
  CVec phi(grid_.size(), 0), phit(grid_.size(), 0);
  auto pos = [&](size_t idx) {
    return Vec3(h * double(idx / (size_t(N) * N)), h * double((idx / N) % N), h * double(idx % N));
  };
  const Vec3 mid = Vec3::Constant(cfg_.box / 2);

  if (cfg_.preset == "gaussian") {
    // Periodic Gaussian-like bump exp(κ Σ (cos(x_i − c_i) − 1)): entire and
    // periodic, so its Fourier coefficients decay faster than exponentially.
    const double kappa = 2, kk = 2 * M_PI / cfg_.box;
    auto bump = [&](const Vec3& x, const Vec3& c) {
      double e = 0;
      for (int i = 0; i < 3; ++i) e += std::cos(kk * (x[i] - c[i])) - 1;
      return A * std::exp(kappa * e);
    };
    const Spinor4 chi(cplx(1, 0), cplx(0, 0), cplx(0, 0.5), cplx(0.3, 0));
    for (size_t i = 0; i < grid_.size(); ++i) {
      const Vec3 x = pos(i);
      const double g = bump(x, mid);
      for (int c = 0; c < 4; ++c) psi[c][i] = g * chi[c];
      phi[i] = bump(x, mid + Vec3(0.4, 0, 0));
      phit[i] = 0.5 * g * std::sin(kk * (x[1] - mid[1]));
    }
  } else if (cfg_.preset == "plane-wave") {
    const Vec3 xi0 = (2 * M_PI / cfg_.box) * Vec3(1, 0, 0);
    const Spinor4 v = eigenvector(xi0, Sign::Plus);
    for (size_t i = 0; i < grid_.size(); ++i) {
      const Vec3 x = pos(i);
      const cplx e = std::exp(cplx(0, xi0.dot(x)));
      for (int c = 0; c < 4; ++c) psi[c][i] = A * v[c] * e;
      phi[i] = 0.5 * A * std::cos(2 * M_PI / cfg_.box * x[1]);
    }
  } else if (cfg_.preset == "random-band-limited") {
    std::mt19937_64 rng(cfg_.seed);
    std::normal_distribution<double> g;
    std::array<CVec, 6> hat;
    for (auto& c : hat) c.assign(grid_.size(), 0);
    for (size_t i = 0; i < grid_.size(); ++i) {
      const auto m = grid_.mode(i);
      const int mx = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])});
      if (mx > N / 6) continue;
      const double amp = std::pow(1 + grid_.knorm(i), -3);
      for (auto& c : hat) c[i] = amp * cplx(g(rng), g(rng));
    }
    for (int c = 0; c < 4; ++c) psi[c] = physical(hat[c]);
    CVec p = physical(hat[4]), q = physical(hat[5]);
    double nrm = 0;
    for (int c = 0; c < 4; ++c)
      for (const cplx& z : psi[c]) nrm = std::max(nrm, std::abs(z));
    for (size_t i = 0; i < grid_.size(); ++i) {
      for (int c = 0; c < 4; ++c) psi[c][i] *= A / nrm;
      phi[i] = A * p[i].real() / nrm;
      phit[i] = A * q[i].real() / nrm;
    }
  } else {
    throw std::invalid_argument("solver: unknown preset '" + cfg_.preset + "'");
  }
  for (int c = 0; c < 4; ++c) grid_.forward(psi[c], s.psi.hat[c]);
  grid_.forward(phi, s.phi);
  grid_.forward(phit, s.phit);
  if (cfg_.dealias) {
    for (auto& c : s.psi.hat) grid_.dealias(c);
    grid_.dealias(s.phi);
    grid_.dealias(s.phit);
  }
  return s;
}

std::pair<SpinorField, SpinorField> Solver::split(const SpinorField& psi) const {
  SpinorField plus, minus;
  for (int c = 0; c < 4; ++c) {
    plus.hat[c].assign(grid_.size(), 0);
    minus.hat[c].assign(grid_.size(), 0);
  }
  for (size_t i = 0; i < grid_.size(); ++i) {
    Spinor4 v;
    for (int c = 0; c < 4; ++c) v[c] = psi.hat[c][i];
    Spinor4 p;
    if (grid_.knorm(i) == 0)
      p = 0.5 * v;
    else
      p = projection(grid_.k(i), Sign::Plus) * v;
    for (int c = 0; c < 4; ++c) {
      plus.hat[c][i] = p[c];
      minus.hat[c][i] = v[c] - p[c];
    }
  }
  return {plus, minus};
}

const Solver::Phases& Solver::phases(double t) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& entries = cache_->entries;
  for (const auto& p : entries)
    if (p->t == t) return *p;
  auto p = std::make_unique<Phases>();
  p->t = t;
  p->cos.resize(grid_.size());
  p->sin.resize(grid_.size());
  for (size_t i = 0; i < grid_.size(); ++i) {
    p->cos[i] = std::cos(t * grid_.knorm(i));
    p->sin[i] = std::sin(t * grid_.knorm(i));
  }
  if (entries.size() > 8) entries.erase(entries.begin());
  entries.push_back(std::move(p));
  return *entries.back();
}

State Solver::free_propagate(const State& s, double t) const {
  State out;
  out.t = s.t + t;
  const size_t n = grid_.size();
  for (auto& c : out.psi.hat) c.resize(n);
  out.phi.resize(n);
  out.phit.resize(n);
  const Phases& ph = phases(t);
  for (size_t i = 0; i < grid_.size(); ++i) {
    const double k = grid_.knorm(i), c = ph.cos[i], sn = ph.sin[i];
    {
      // e^{−it α·ξ} = e^{−it|ξ|}P₊ + e^{it|ξ|}P₋ = cos(t|ξ|) − i sin(t|ξ|) α·n, with
      // α·n = [[0, σ·n], [σ·n, 0]] in the Dirac representation.
      const Vec3& u = grid_.unit_k(i);  // zero at ξ = 0, where the flow is the identity
      const cplx a = u[2], b(u[0], -u[1]), bc(u[0], u[1]);
      const cplx v0 = s.psi.hat[0][i], v1 = s.psi.hat[1][i], v2 = s.psi.hat[2][i], v3 = s.psi.hat[3][i];
      const cplx w0 = a * v2 + b * v3, w1 = bc * v2 - a * v3;
      const cplx w2 = a * v0 + b * v1, w3 = bc * v0 - a * v1;
      const cplx m(0, -sn);
      out.psi.hat[0][i] = c * v0 + m * w0;
      out.psi.hat[1][i] = c * v1 + m * w1;
      out.psi.hat[2][i] = c * v2 + m * w2;
      out.psi.hat[3][i] = c * v3 + m * w3;
    }
    out.phi[i] = c * s.phi[i] + (k > 0 ? sn / k : t) * s.phit[i];  // t·sinc(t|ξ|)
    out.phit[i] = -k * sn * s.phi[i] + c * s.phit[i];
  }
  return out;
}

State Solver::nonlinear(const State& s, double* imag_residue) const {
  State r = zero();
  const size_t n = grid_.size();
  if (!cfg_.coupled) return r;
  std::array<CVec, 4> psi;
  for (int c = 0; c < 4; ++c) grid_.inverse(s.psi.hat[c], psi[c]);
  CVec phi;
  grid_.inverse(s.phi, phi);
  // β = diag(1, 1, −1, −1) in the Dirac representation.
  const Eigen::Vector4d bd = dirac_matrices().beta.diagonal().real();
  std::array<CVec, 4> f;
  for (auto& c : f) c.resize(n);
  CVec q(n);
  double im = 0, mag = 0;
  for (size_t i = 0; i < n; ++i) {
    const double ph = phi[i].real();
    cplx dens = 0;
    for (int c = 0; c < 4; ++c) {
      const cplx bv = bd[c] * psi[c][i];
      f[c][i] = cplx(-ph * bv.imag(), ph * bv.real());  // iφβψ
      dens += std::conj(psi[c][i]) * bv;                 // ψ†βψ
    }
    im = std::max(im, std::abs(dens.imag()));
    mag = std::max(mag, std::abs(dens));
    q[i] = dens.real();
  }
  if (imag_residue) *imag_residue = mag > 0 ? im / mag : 0;
  for (int c = 0; c < 4; ++c) {
    grid_.forward(f[c], r.psi.hat[c]);
    if (cfg_.dealias) grid_.dealias(r.psi.hat[c]);
  }
  grid_.forward(q, r.phit);
  if (cfg_.dealias) grid_.dealias(r.phit);
  return r;
}

void Solver::step(State& s, double h, double* imag_residue) const {
  if (!(h > 0)) throw std::invalid_argument("step: h must be positive");
  // Integrating-factor (Lawson) Runge–Kutta around the exact free flow E(t);
  // sources enter ψ and ∂ₜφ, propagation carries them into φ as well.
  auto acc = [](State& u, double a, const State& v) {
    for (int c = 0; c < 4; ++c) axpy(u.psi.hat[c], a, v.psi.hat[c]);
    axpy(u.phi, a, v.phi);
    axpy(u.phit, a, v.phit);
  };
  auto E = [&](const State& u, double t) { return free_propagate(u, t); };

  const double t0 = s.t;
  State next;
  if (!cfg_.coupled) {
    next = E(s, h);
  } else if (cfg_.integrator == "ifrk2") {
    const State A = nonlinear(s, imag_residue);
    State a = E(s, h / 2);
    acc(a, h / 2, E(A, h / 2));
    const State B = nonlinear(a);
    next = E(s, h);
    acc(next, h, E(B, h / 2));
  } else {
    const State A = nonlinear(s, imag_residue);
    const State Eh = E(s, h / 2);
    State a = Eh;
    acc(a, h / 2, E(A, h / 2));
    const State B = nonlinear(a);
    const State EB = E(B, h / 2);
    State b = Eh;
    acc(b, h / 2, B);
    const State C = nonlinear(b);
    const State EC = E(C, h / 2);
    const State Es = E(s, h);
    State c = Es;
    acc(c, h, EC);
    const State D = nonlinear(c);
    next = Es;
    acc(next, h / 6, E(A, h));
    acc(next, h / 3, EB);
    acc(next, h / 3, EC);
    acc(next, h / 6, D);
  }
  s = std::move(next);
  s.t = t0 + h;
  for (const auto& c : s.psi.hat)
    if (!finite(c)) throw SolverAbort("non-finite spinor at t = " + std::to_string(s.t));
  if (!finite(s.phi) || !finite(s.phit)) throw SolverAbort("non-finite scalar field at t = " + std::to_string(s.t));
}

double Solver::sobolev_norm(const CVec& hat, double s) const {
  double acc = 0;
  for (size_t i = 0; i < grid_.size(); ++i) acc += std::pow(1 + grid_.knorm(i), 2 * s) * std::norm(hat[i]);
  return std::sqrt(acc * grid_.cell_volume() / double(grid_.size()));
}

double Solver::sobolev_norm(const SpinorField& psi, double s) const {
  double acc = 0;
  for (size_t i = 0; i < grid_.size(); ++i) {
    double m = 0;
    for (const auto& c : psi.hat) m += std::norm(c[i]);
    acc += (s == 0 ? 1.0 : std::pow(1 + grid_.knorm(i), 2 * s)) * m;
  }
  return std::sqrt(acc * grid_.cell_volume() / double(grid_.size()));
}

double Solver::charge(const State& s) const { return sobolev_norm(s.psi, 0); }

void Solver::record(const State& s, Diagnostics& d) const {
  d.t.push_back(s.t);
  d.charge.push_back(charge(s));
  d.psi_hs.push_back(sobolev_norm(s.psi, cfg_.s));
  d.phi_hr.push_back(sobolev_norm(s.phi, cfg_.r));
  d.phit_hr1.push_back(sobolev_norm(s.phit, cfg_.r - 1));
  const CVec phi = physical(s.phi);
  double im = 0, mag = 0;
  for (const cplx& z : phi) {
    im = std::max(im, std::abs(z.imag()));
    mag = std::max(mag, std::abs(z));
  }
  d.max_imag_phi = std::max(d.max_imag_phi, mag > 0 ? im / mag : 0);
}

Diagnostics Solver::run(State& s) const {
  Diagnostics d;
  record(s, d);
  const long steps = std::lround(cfg_.T / cfg_.dt);
  const double h = steps > 0 ? cfg_.T / steps : cfg_.dt;
  for (long n = 0; n < steps; ++n) {
    double im = 0;
    step(s, h, &im);
    d.max_imag_source = std::max(d.max_imag_source, im);
    if ((n + 1) % long(std::max<size_t>(1, cfg_.record_every)) == 0 || n + 1 == steps) record(s, d);
  }
  return d;
}

double state_difference(const Solver& a, const State& sa, const Solver& b, const State& sb) {
  // Fourier-series coefficient of mode m on grid g: hat/N³.
  auto collect = [](const Solver& sv, const State& st) {
    std::map<std::array<int, 3>, std::array<cplx, 6>> m;
    const Grid& g = sv.grid();
    const double scale = 1.0 / double(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
      std::array<cplx, 6> v;
      for (int c = 0; c < 4; ++c) v[c] = st.psi.hat[c][i] * scale;
      v[4] = st.phi[i] * scale;
      v[5] = st.phit[i] * scale;
      m[g.mode(i)] = v;
    }
    return m;
  };
  auto ma = collect(a, sa), mb = collect(b, sb);
  double acc = 0;
  for (auto& [k, v] : ma) {
    auto it = mb.find(k);
    for (int c = 0; c < 6; ++c) acc += std::norm(v[c] - (it == mb.end() ? cplx(0) : it->second[c]));
  }
  for (auto& [k, v] : mb)
    if (!ma.count(k))
      for (int c = 0; c < 6; ++c) acc += std::norm(v[c]);
  return std::sqrt(acc * std::pow(a.grid().box(), 3));
}

void write_snapshot(const std::string& path, const Solver& solver, const State& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const uint32_t version = 1, N = uint32_t(solver.grid().N()), ncomp = 6;
  out.write("DKGF", 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&N), 4);
  out.write(reinterpret_cast<const char*>(&ncomp), 4);
  out.write("c128le\0\0", 8);
  auto dump = [&](const CVec& hat) {
    const CVec x = solver.physical(hat);
    out.write(reinterpret_cast<const char*>(x.data()), std::streamsize(x.size() * sizeof(cplx)));
  };
  for (const auto& c : s.psi.hat) dump(c);
  dump(s.phi);
  dump(s.phit);
}

}  // namespace dkg
