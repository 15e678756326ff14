#include "dkg/nullform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace dkg {

DerivedQuantities derived_quantities(const FrequencyPoint& p) {
  DerivedQuantities q{};
  const Vec3 emx = p.eta - p.xi;
  const double nx = p.xi.norm(), ne = p.eta.norm(), nemx = emx.norm();
  q.gamma = std::abs(p.tau) - nx;
  q.Theta = p.lambda + ne;
  q.sigma_plus = p.lambda - p.tau + nemx;
  q.sigma_minus = p.lambda - p.tau - nemx;
  q.kappa_plus = nx - std::abs(ne - nemx);
  q.kappa_minus = ne + nemx - nx;
  if (ne == 0 || nemx == 0) {
    q.degenerate = true;
    q.theta_plus = q.theta_minus = std::numeric_limits<double>::quiet_NaN();
  } else {
    q.theta_plus = angle(p.eta, emx);
    q.theta_minus = angle(p.eta, -emx);
  }
  return q;
}

struct FrequencySampler::Impl {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> u{0.0, 1.0};
  std::normal_distribution<double> n{0.0, 1.0};

  Vec3 direction() {
    Vec3 v;
    do v = Vec3(n(rng), n(rng), n(rng));
    while (v.norm() < 1e-12);
    return v.normalized();
  }
  double log_uniform() { return std::pow(10.0, 3.0 * u(rng)); }
};

FrequencySampler::FrequencySampler(uint64_t seed) : impl_(std::make_shared<Impl>()) {
  impl_->rng.seed(seed);
}

FrequencyPoint FrequencySampler::next() {
  Impl& s = *impl_;
  FrequencyPoint p;
  p.eta = s.log_uniform() * s.direction();
  const Vec3 emx = s.log_uniform() * s.direction();
  p.xi = p.eta - emx;
  const double scale = p.eta.norm() + emx.norm();
  if (s.u(s.rng) < 0.5) {
    p.tau = (2 * s.u(s.rng) - 1) * 2 * scale;
    p.lambda = (2 * s.u(s.rng) - 1) * 2 * scale;
  } else {
    // Γ, Θ = O(1): τ on either sheet of the ξ-cone, λ near −|η|.
    const double sheet = s.u(s.rng) < 0.5 ? 1.0 : -1.0;
    p.tau = sheet * (p.xi.norm() + s.n(s.rng));
    p.lambda = -p.eta.norm() + s.n(s.rng);
  }
  return p;
}

FrequencyPoint FrequencySampler::next_low_output() {
  Impl& s = *impl_;
  FrequencyPoint p;
  const double ne = 10 * std::pow(10.0, 2.0 * s.u(s.rng));
  p.eta = ne * s.direction();
  p.xi = ne * std::pow(10.0, -1 - 2 * s.u(s.rng)) * s.direction();
  p.tau = p.xi.norm();
  p.lambda = -ne;
  return p;
}

namespace {

// Hand-placed near-cone and collinear points.
std::vector<FrequencyPoint> adversarial_points() {
  std::vector<FrequencyPoint> pts;
  const Vec3 e1(1, 0, 0), e2(0, 1, 0);
  for (int i = 0; i < 100; ++i) {
    const double a = 1 + i, b = 1 + (i * 7) % 13;
    const double ang = M_PI * i / 99.0;
    FrequencyPoint p;
    p.eta = a * e1;
    const Vec3 emx = b * (std::cos(ang) * e1 + std::sin(ang) * e2);
    p.xi = p.eta - emx;
    const int mode = i % 4;
    p.tau = (mode & 1 ? -1 : 1) * p.xi.norm();
    p.lambda = -p.eta.norm();
    if (mode & 2) p.lambda = p.tau - emx.norm();  // Σ₊ = 0
    pts.push_back(p);
  }
  return pts;
}

void check_point(const FrequencyPoint& p, BoundReport& rep) {
  const auto q = derived_quantities(p);
  const double ne = p.eta.norm(), nemx = (p.eta - p.xi).norm();
  const double scale = ne + nemx + std::abs(p.tau) + std::abs(p.lambda);
  const double tol = 1e-12 * scale;
  const double m2 = 2 * std::min(ne, nemx);
  const double slacks[] = {
      q.kappa_plus + tol,
      q.kappa_minus + tol,
      m2 - q.kappa_plus + tol,
      m2 - q.kappa_minus + tol,
      std::abs(q.gamma) + std::abs(q.Theta) + std::abs(q.sigma_plus) - q.kappa_plus + tol,
      std::abs(q.gamma) + std::abs(q.Theta) + std::abs(q.sigma_minus) - q.kappa_minus + tol,
  };
  bool bad = false;
  for (double s : slacks) {
    bad |= s < 0;
    rep.worst_slack = std::min(rep.worst_slack, (s - tol) / scale);
  }
  rep.violations += bad;
  ++rep.samples;
}

void update(RatioStats& st, double v) {
  if (!std::isfinite(v)) {
    ++st.excluded;
    return;
  }
  if (st.used == 0) st.min = st.max = v;
  st.min = std::min(st.min, v);
  st.max = std::max(st.max, v);
  ++st.used;
}

}  // namespace

BoundReport check_exact_bounds(size_t n, uint64_t seed) {
  BoundReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  if (n == 0) {
    rep.worst_slack = 0;
    return rep;
  }
  for (const auto& p : adversarial_points()) {
    check_point(p, rep);
    ++rep.adversarial;
  }
  FrequencySampler sampler(seed);
  for (size_t i = 0; i < n; ++i) check_point(sampler.next(), rep);
  return rep;
}

std::vector<RatioStats> check_comparability(size_t n, uint64_t seed) {
  RatioStats plus{"theta+^2 ~ |xi| kappa+ / (|eta||eta-xi|)"};
  RatioStats minus{"theta-^2 ~ kappa- / min(|eta|,|eta-xi|)"};
  RatioStats inter{"theta-^2 ~ (|eta|+|eta-xi|) kappa- / (|eta||eta-xi|), |xi| << |eta|"};
  FrequencySampler sampler(seed);
  for (size_t i = 0; i < n; ++i) {
    // Every fourth sample is drawn in the low-output regime |ξ| ≪ |η| ~ |η−ξ|.
    const bool low = i % 4 == 3;
    FrequencyPoint p = low ? sampler.next_low_output() : sampler.next();
    const auto q = derived_quantities(p);
    const double ne = p.eta.norm(), nemx = (p.eta - p.xi).norm(), nx = p.xi.norm();
    if (nemx < 1) continue;
    if (q.theta_plus > kAngleCutoff && q.kappa_plus > 0)
      update(plus, q.theta_plus * q.theta_plus * ne * nemx / (nx * q.kappa_plus));
    else
      ++plus.excluded;
    if (q.theta_minus > kAngleCutoff && q.kappa_minus > 0) {
      update(minus, q.theta_minus * q.theta_minus * std::min(ne, nemx) / q.kappa_minus);
      if (low) update(inter, q.theta_minus * q.theta_minus * ne * nemx / ((ne + nemx) * q.kappa_minus));
    } else {
      ++minus.excluded;
    }
  }
  return {plus, minus, inter};
}

SymbolReport check_null_symbol_bound(size_t n, uint64_t seed) {
  SymbolReport rep;
  FrequencySampler sampler(seed);
  const Sign signs[2] = {Sign::Plus, Sign::Minus};
  for (size_t i = 0; i < n; ++i) {
    const FrequencyPoint p = sampler.next();
    const Vec3 emx = p.eta - p.xi;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double th = null_angle(p.eta, emx, signs[a], signs[b]);
        const double nrm = operator_norm(null_symbol(p.eta, emx, signs[a], signs[b]));
        if (th < kAngleCutoff) {
          rep.aligned_max = std::max(rep.aligned_max, nrm);
          continue;
        }
        rep.per_pair[a][b] = std::max(rep.per_pair[a][b], nrm / th);
      }
    ++rep.samples;
  }
  // Aligned configurations: s1·η ∥ s2·(η−ξ).
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    Vec3 d(g(rng), g(rng), g(rng));
    d.normalize();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Vec3 eta = sgn(signs[a]) * (1 + i) * d;
        const Vec3 emx = sgn(signs[b]) * (2.5 + i % 7) * d;
        rep.aligned_max = std::max(rep.aligned_max, operator_norm(null_symbol(eta, emx, signs[a], signs[b])));
      }
  }
  for (auto& row : rep.per_pair)
    for (double v : row) rep.constant = std::max(rep.constant, v);
  return rep;
}

std::string to_csv(const BoundReport& b, const std::vector<RatioStats>& r, const SymbolReport& s,
                   uint64_t seed) {
  std::ostringstream out;
  out.precision(10);
  out << "relation,min_ratio,max_ratio,violations,samples,seed\n";
  out << "kappa bounds,," << b.worst_slack << "," << b.violations << "," << b.samples << "," << seed << "\n";
  for (const auto& st : r)
    out << '"' << st.relation << "\"," << st.min << "," << st.max << "," << (st.in_bracket() ? 0 : 1) << ","
        << st.used << "," << seed << "\n";
  out << "null symbol / angle,0," << s.constant << "," << (s.constant <= 4 ? 0 : 1) << "," << s.samples
      << "," << seed << "\n";
  return out.str();
}

}  // namespace dkg
