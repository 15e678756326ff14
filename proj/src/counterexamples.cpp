#include "dkg/counterexamples.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dkg {

namespace {

double jp(double x) { return std::sqrt(1 + x * x); }
double val(const ExtReal& x) { return x.evaluate(0, 0, 0); }

Box box(Vec3 c, Vec3 h) { return {c, h}; }

// Gauss–Legendre nodes/weights on [a, b] (Golub–Welsch).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) J(i, i - 1) = J(i - 1, i) = i / std::sqrt(4.0 * i * i - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = a + (b - a) * (es.eigenvalues()(i) + 1) / 2;
    w[i] = (b - a) * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  return {x, w};
}

// Midpoints of an n³ subdivision of the box.
std::vector<Vec3> midpoints(const Box& b, int n) {
  std::vector<Vec3> pts;
  pts.reserve(size_t(n) * n * n);
  const Vec3 lo = b.lo(), step = 2 * b.half / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        pts.push_back(lo + Vec3((i + 0.5) * step[0], (j + 0.5) * step[1], (k + 0.5) * step[2]));
  return pts;
}

double min_norm(const Box& b) {
  Vec3 d;
  for (int i = 0; i < 3; ++i) d[i] = std::max(0.0, std::abs(b.center[i]) - b.half[i]);
  return d.norm();
}
double max_norm(const Box& b) { return (b.center.cwiseAbs() + b.half).norm(); }

bool curved(FamilyId f) { return f == FamilyId::HHLowMinus; }

// θ₊ = ∠(η, η−ξ) for the plus families, θ₋ = ∠(η, ξ−η) for the minus one.
double theta(FamilyId f, const Vec3& eta, const Vec3& xi) {
  const Vec3 z = eta - xi;
  return curved(f) ? angle(eta, -z) : angle(eta, z);
}

struct Weights {
  double a1, a2, a3, al1, al2, al3;
  explicit Weights(const ExponentTuple& e)
      : a1(val(e.a1)), a2(val(e.a2)), a3(val(e.a3)), al1(val(e.alpha1)), al2(val(e.alpha2)),
        al3(val(e.alpha3)) {}
};

// Distance of the slab variable to the relevant cone: ψ uses λ + |η|, ψ′ uses
// μ + |ζ| (X₊) or μ − |ζ| (X₋); in slab coordinates u this is u + offset.
double psi_offset(FamilyId f, const Vec3& eta) {
  return curved(f) ? 0.0 : eta.norm() - slab_sign(f) * eta[0];
}

double norm_sq_quadrature(FamilyId f, const Box& b, double a, double alpha, int n) {
  auto [u, w] = gauss_legendre(8, -1, 1);
  double acc = 0;
  for (const Vec3& p : midpoints(b, n)) {
    const double off = psi_offset(f, p);
    for (size_t i = 0; i < u.size(); ++i) acc += w[i] * std::pow(jp(u[i] + off), 2 * alpha);
  }
  // ‖v₊‖² = 2; spatial weight at its RMS representative.
  return 2 * std::pow(jp(b.rms_norm()), 2 * a) * acc * b.volume() / std::pow(n, 3);
}

double K_flat(FamilyId f, const FamilySets& s, const Weights& w, const RatioOptions& opt) {
  const int k = slab_sign(f);
  const auto A = midpoints(s.A, opt.inner_points);
  const double dA = s.A.volume() / A.size();
  auto [u0, w0] = gauss_legendre(opt.tau_points, -2, 0);
  auto [u1, w1] = gauss_legendre(opt.tau_points, 0, 2);
  u0.insert(u0.end(), u1.begin(), u1.end());
  w0.insert(w0.end(), w1.begin(), w1.end());
  const auto C = midpoints(s.C, opt.xi_cells);
  double acc = 0;
  for (const Vec3& xi : C) {
    double G = 0;
    for (const Vec3& eta : A) G += theta(f, eta, xi);
    G *= dA;
    // The two λ-slabs overlap in an interval of length 2 − |τ + kξ₁|.
    const double nx = xi.norm();
    double t = 0;
    for (size_t i = 0; i < u0.size(); ++i) {
      const double tau = u0[i] - k * xi[0];
      const double tent = 2 - std::abs(u0[i]);
      t += w0[i] * tent * tent * std::pow(jp(std::abs(tau) - nx), -2 * w.al3);
    }
    acc += G * G * t;
  }
  acc *= s.C.volume() / C.size();
  return std::pow(jp(s.C.rms_norm()), -w.a3) * std::sqrt(acc);
}

double K_curved(FamilyId f, const FamilySets& s, const Weights& w, const RatioOptions& opt) {
  const int m = std::max(4, opt.inner_points * 3 / 4);
  const int T = opt.tau_points * 3 / 2;
  const auto A = midpoints(s.A, m);
  const double dA = s.A.volume() / A.size();
  const auto C = midpoints(s.C, opt.xi_cells);
  std::vector<double> sum(A.size()), th(A.size());
  double acc = 0;
  for (const Vec3& xi : C) {
    double smin = 1e300, smax = -1e300;
    for (size_t i = 0; i < A.size(); ++i) {
      sum[i] = A[i].norm() + (A[i] - xi).norm();
      th[i] = theta(f, A[i], xi);
      smin = std::min(smin, sum[i]);
      smax = std::max(smax, sum[i]);
    }
    // Overlap of λ + |η| = O(1) and λ − τ − |η−ξ| = O(1): 2 − |τ + |η| + |η−ξ||.
    const double t0 = -smax - 2, t1 = -smin + 2, dt = (t1 - t0) / T;
    const double nx = xi.norm();
    for (int j = 0; j < T; ++j) {
      const double tau = t0 + (j + 0.5) * dt;
      double I = 0;
      for (size_t i = 0; i < A.size(); ++i) I += th[i] * std::max(0.0, 2 - std::abs(tau + sum[i]));
      I *= dA;
      acc += I * I * std::pow(jp(std::abs(tau) - nx), -2 * w.al3) * dt;
    }
  }
  acc *= s.C.volume() / C.size();
  return std::pow(jp(s.C.rms_norm()), -w.a3) * std::sqrt(acc);
}

double ratio_at(FamilyId f, const Weights& w, const FamilySets& s, const RatioOptions& opt, RatioResult* out) {
  const double K = curved(f) ? K_curved(f, s, w, opt) : K_flat(f, s, w, opt);
  const double np = std::sqrt(norm_sq_quadrature(f, s.A, w.a1, w.al1, opt.xi_cells));
  const double npp = std::sqrt(norm_sq_quadrature(f, s.B, w.a2, w.al2, opt.xi_cells));
  if (out) {
    out->K = K;
    out->norm_psi = np;
    out->norm_psi_prime = npp;
  }
  return K / (np * npp);
}

}  // namespace

const char* to_string(FamilyId f) {
  switch (f) {
    case FamilyId::HHHigh: return "HH-high";
    case FamilyId::HLHigh: return "HL-high";
    case FamilyId::HLSwapped: return "HL-high-swapped";
    case FamilyId::UnitScale: return "unit-scale";
    case FamilyId::HHLowMinus: return "HH-low-minus";
  }
  return "?";
}

FamilyId parse_family(const std::string& name) {
  for (FamilyId f : all_families())
    if (name == to_string(f)) return f;
  if (name == "HL-swapped") return FamilyId::HLSwapped;
  throw std::invalid_argument("unknown family: " + name);
}

const std::vector<FamilyId>& all_families() {
  static const std::vector<FamilyId> v = {FamilyId::HHHigh, FamilyId::HLHigh, FamilyId::HLSwapped,
                                          FamilyId::UnitScale, FamilyId::HHLowMinus};
  return v;
}

bool Box::contains(const Box& o) const {
  // Faces may coincide exactly in exact arithmetic; allow rounding slack.
  const double tol = 1e-12 * (1 + center.cwiseAbs().maxCoeff() + half.maxCoeff());
  return ((o.lo() - lo()).array() >= -tol).all() && ((hi() - o.hi()).array() >= -tol).all();
}

double Box::rms_norm() const {
  return std::sqrt((center.array().square() + half.array().square() / 3).sum());
}

int slab_sign(FamilyId f) { return f == FamilyId::HLSwapped ? -1 : 1; }

FamilySets family_sets(FamilyId f, double L) {
  if (!(L >= 4)) throw std::invalid_argument("family_sets: L must be >= 4");
  const double q = std::sqrt(L);
  FamilySets s;
  switch (f) {
    case FamilyId::HHHigh:
      s.A = box({L, q, q}, {L / 4, q / 4, q / 4});
      s.B = box({2 * L, 0, 0}, {L / 2, q / 2, q / 2});
      s.C = box({-L, q, q}, {L / 4, q / 4, q / 4});
      break;
    case FamilyId::HLHigh:
      s.A = box({0, 1, 1}, {q / 2, q / 2, q / 2});
      s.B = box({L, 0, 0}, {q, q, q});
      s.C = box({-L, 1, 1}, {q / 2, q / 2, q / 2});
      break;
    case FamilyId::HLSwapped:
      s.A = box({-L, 1, 1}, {q / 2, q / 2, q / 2});
      s.B = box({0, 0, 0}, {q, q, q});
      s.C = box({-L, 1, 1}, {q / 2, q / 2, q / 2});
      break;
    case FamilyId::UnitScale:
      s.A = box({0, 1, 1}, {0.5, 0.5, 0.5});
      s.B = box({L, 0, 1}, {1, 1, 0.5});
      s.C = box({-L, 1, 1}, {0.5, 0.5, 0.5});
      break;
    case FamilyId::HHLowMinus:
      s.A = box({L, 1, 1}, {0.25, 0.25, 0.25});
      s.B = box({L, 0, 0}, {0.5, 0.5, 0.5});
      s.C = box({0, 1, 0}, {0.25, 0.25, 0.5});
      break;
  }
  // A ⊖ C = [A.lo − C.hi, A.hi − C.lo].
  const Vec3 lo = s.A.lo() - s.C.hi(), hi = s.A.hi() - s.C.lo();
  Vec3 blo = s.B.lo().cwiseMin(lo), bhi = s.B.hi().cwiseMax(hi);
  for (int i = 0; i < 3; ++i) {
    if (blo[i] == s.B.lo()[i] && bhi[i] == s.B.hi()[i]) continue;
    std::ostringstream o;
    o << "B axis " << i + 1 << " widened from [" << s.B.lo()[i] << ", " << s.B.hi()[i] << "] to [" << blo[i]
      << ", " << bhi[i] << "]; ";
    s.adjustment += o.str();
  }
  s.B = box((blo + bhi) / 2, (bhi - blo) / 2);
  return s;
}

bool abc_property(const FamilySets& s) {
  return s.B.contains(box((s.A.center - s.C.center), s.A.half + s.C.half));
}

Rational predicted_delta(FamilyId f, const ExponentTuple& e) {
  const Rational a1 = e.a1.q(), a2 = e.a2.q(), a3 = e.a3.q();
  const Rational h = frac(1, 2);
  switch (f) {
    case FamilyId::HHHigh: return a1 + a2 + a3 - h;
    case FamilyId::HLHigh: return Rational((a1 + e.alpha1.q()) / 2 + a2 + a3 - frac(3, 4));
    case FamilyId::HLSwapped: return Rational(a1 + (a2 + e.alpha2.q()) / 2 + a3 - frac(3, 4));
    case FamilyId::UnitScale: return a2 + a3;
    case FamilyId::HHLowMinus: return a1 + a2 + e.alpha3.q();
  }
  return 0;
}

RatioResult ratio_detailed(FamilyId f, const ExponentTuple& e, double L, const RatioOptions& opt) {
  if (opt.xi_cells < 4 || opt.inner_points < 4 || opt.tau_points < 4)
    throw std::invalid_argument("ratio: quadrature resolution too coarse (need >= 4 per axis)");
  const FamilySets s = family_sets(f, L);
  const Weights w(e);
  RatioResult r;
  r.ratio = ratio_at(f, w, s, opt, &r);
  RatioOptions half{opt.xi_cells / 2, opt.inner_points / 2, opt.tau_points / 2};
  r.coarse_ratio = ratio_at(f, w, s, half, nullptr);
  return r;
}

double ratio(FamilyId f, const ExponentTuple& e, double L) {
  if (!(L >= 4)) throw std::invalid_argument("ratio: L must be >= 4");
  return ratio_at(f, Weights(e), family_sets(f, L), RatioOptions{}, nullptr);
}

double ratio_monte_carlo(FamilyId f, const ExponentTuple& e, double L, size_t samples, uint64_t seed) {
  const FamilySets s = family_sets(f, L);
  const Weights w(e);
  const int k = slab_sign(f);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto in_box = [&](const Box& b) {
    return Vec3(b.center[0] + b.half[0] * U(rng), b.center[1] + b.half[1] * U(rng),
                b.center[2] + b.half[2] * U(rng));
  };
  auto inside = [](const Box& b, const Vec3& p) {
    return ((p - b.center).cwiseAbs() - b.half).maxCoeff() <= 0;
  };

  const size_t outer = std::max<size_t>(1, static_cast<size_t>(2 * std::sqrt(double(samples))));
  const size_t inner = std::max<size_t>(1, samples / outer);
  double tlo = 0, thi = 0;
  if (curved(f)) {
    tlo = -(max_norm(s.A) + max_norm(s.B)) - 2;
    thi = -(min_norm(s.A) + min_norm(s.B)) + 2;
  }
  double acc = 0;
  for (size_t o = 0; o < outer; ++o) {
    const Vec3 xi = in_box(s.C);
    const double tau = curved(f) ? tlo + (thi - tlo) * (U(rng) + 1) / 2 : 2 * U(rng) - k * xi[0];
    double I = 0;
    for (size_t i = 0; i < inner; ++i) {
      const Vec3 eta = in_box(s.A);
      const Vec3 z = eta - xi;
      const double lam = (curved(f) ? -eta.norm() : -k * eta[0]) + U(rng);
      const double mu = lam - tau;
      const double slab2 = curved(f) ? mu - z.norm() : mu + k * z[0];
      if (std::abs(slab2) <= 1 && inside(s.B, z)) I += theta(f, eta, xi);
    }
    I *= s.A.volume() * 2 / inner;
    acc += I * I * std::pow(jp(std::abs(tau) - xi.norm()), -2 * w.al3);
  }
  const double vol = s.C.volume() * (curved(f) ? thi - tlo : 4.0);
  const double K = std::pow(jp(s.C.rms_norm()), -w.a3) * std::sqrt(acc / outer * vol);

  auto norm_mc = [&](const Box& b, double a, double alpha) {
    double sum = 0;
    for (size_t i = 0; i < samples; ++i) sum += std::pow(jp(U(rng) + psi_offset(f, in_box(b))), 2 * alpha);
    return std::sqrt(2 * std::pow(jp(b.rms_norm()), 2 * a) * b.volume() * 2 * sum / samples);
  };
  return K / (norm_mc(s.A, w.a1, w.al1) * norm_mc(s.B, w.a2, w.al2));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 3 || x.size() != y.size()) throw std::invalid_argument("fit: need >= 3 points");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double fit_delta(FamilyId f, const ExponentTuple& e, const std::vector<double>& Ls) {
  if (Ls.size() < 3) throw std::invalid_argument("fit_delta: need >= 3 values of L");
  std::vector<double> x, y;
  for (double L : Ls) {
    x.push_back(std::log(L));
    y.push_back(std::log(ratio(f, e, L)));
  }
  return -fit_slope(x, y);
}

std::vector<ExponentTuple> standard_tuples(FamilyId f) {
  auto T = [](Rational a1, Rational a2, Rational a3, Rational b1, Rational b2, Rational b3) {
    return ExponentTuple{a1, a2, a3, b1, b2, b3};
  };
  const Rational z = 0, h = frac(1, 2), q = frac(1, 4), tq = frac(3, 4);
  switch (f) {
    case FamilyId::HHHigh: return {T(z, z, z, z, z, z), T(z, z, h, z, z, z), T(q, z, z, h, h, h)};
    case FamilyId::HLHigh: return {T(z, z, z, z, z, z), T(z, z, tq, z, z, z), T(z, z, z, 1, z, z)};
    case FamilyId::HLSwapped: return {T(z, z, z, z, z, z), T(z, z, tq, z, z, z), T(z, z, z, z, 1, z)};
    case FamilyId::UnitScale: return {T(z, z, z, z, z, z), T(z, h, z, z, z, z), T(z, z, h, 1, 1, 1)};
    case FamilyId::HHLowMinus: return {T(z, z, z, z, z, z), T(z, z, z, z, z, 1), T(h, -q, 3, z, z, z)};
  }
  return {};
}

std::string scan_csv(const std::vector<FamilyId>& fams, const std::vector<double>& Ls) {
  std::ostringstream out;
  out.precision(10);
  out << "family,a1,a2,a3,alpha1,alpha2,alpha3,L,ratio,fitted_delta,predicted_delta\n";
  for (FamilyId f : fams)
    for (const auto& e : standard_tuples(f)) {
      std::vector<double> x, y;
      std::vector<double> r;
      for (double L : Ls) r.push_back(ratio(f, e, L));
      for (size_t i = 0; i < Ls.size(); ++i) {
        x.push_back(std::log(Ls[i]));
        y.push_back(std::log(r[i]));
      }
      const double fitted = Ls.size() >= 3 ? -fit_slope(x, y) : NAN;
      for (size_t i = 0; i < Ls.size(); ++i)
        out << to_string(f) << "," << e.a1.str() << "," << e.a2.str() << "," << e.a3.str() << ","
            << e.alpha1.str() << "," << e.alpha2.str() << "," << e.alpha3.str() << "," << Ls[i] << "," << r[i]
            << "," << fitted << "," << to_double(predicted_delta(f, e)) << "\n";
    }
  return out.str();
}

}  // namespace dkg
