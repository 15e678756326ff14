#include "dkg/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dkg {

const std::array<Eigen::Matrix2cd, 3>& pauli_matrices() {
  static const std::array<Eigen::Matrix2cd, 3> sigma = [] {
    const cplx i(0, 1);
    std::array<Eigen::Matrix2cd, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -i, i, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return sigma;
}

const DiracMatrices& dirac_matrices() {
  static const DiracMatrices m = [] {
    DiracMatrices d;
    d.beta = Matrix4::Zero();
    d.beta.topLeftCorner<2, 2>().setIdentity();
    d.beta.bottomRightCorner<2, 2>() = -Eigen::Matrix2cd::Identity();
    for (int j = 0; j < 3; ++j) {
      d.alpha[j] = Matrix4::Zero();
      d.alpha[j].topRightCorner<2, 2>() = pauli_matrices()[j];
      d.alpha[j].bottomLeftCorner<2, 2>() = pauli_matrices()[j];
    }
    return d;
  }();
  return m;
}

Vec3 unit(const Vec3& xi) {
  double n = xi.norm();
  if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("zero or non-finite direction");
  return xi / n;
}

Matrix4 alpha_dot(const Vec3& v) {
  const auto& d = dirac_matrices();
  return v[0] * d.alpha[0] + v[1] * d.alpha[1] + v[2] * d.alpha[2];
}

Matrix4 projection(const Vec3& xi, Sign sign) {
  return 0.5 * (Matrix4::Identity() + sgn(sign) * alpha_dot(unit(xi)));
}

Spinor4 eigenvector(const Vec3& xi, Sign sign) {
  Vec3 u = unit(xi) * sgn(sign);  // v₋(ξ) = v₊(−ξ)
  Spinor4 v;
  v << 1, 0, u[2], cplx(u[0], u[1]);
  return v;
}

cplx beta_pairing(const Vec3& eta, const Vec3& zeta) {
  Spinor4 a = eigenvector(eta, Sign::Plus), b = eigenvector(zeta, Sign::Plus);
  return b.dot(dirac_matrices().beta * a);  // Eigen's dot conjugates the left side
}

cplx beta_pairing_formula(const Vec3& eta, const Vec3& zeta) {
  Vec3 e = unit(eta), z = unit(zeta);
  return {1.0 - e.dot(z), e[0] * z[1] - e[1] * z[0]};
}

double angle(const Vec3& eta, const Vec3& zeta) {
  // atan2 keeps full relative precision for nearly parallel vectors.
  const Vec3 a = unit(eta), b = unit(zeta);
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Matrix4 null_symbol(const Vec3& eta, const Vec3& eta_minus_xi, Sign s1, Sign s2) {
  return dirac_matrices().beta * projection(eta_minus_xi, flip(s2)) * projection(eta, s1);
}

double null_angle(const Vec3& eta, const Vec3& eta_minus_xi, Sign s1, Sign s2) {
  return angle(sgn(s1) * eta, sgn(s2) * eta_minus_xi);
}

double operator_norm(const Matrix4& m) {
  Eigen::JacobiSVD<Matrix4> svd(m);
  return svd.singularValues()[0];
}

double max_entry(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<IdentityResult> identity_battery(size_t n, uint64_t seed) {
  const auto& d = dirac_matrices();
  const Matrix4 I = Matrix4::Identity();
  std::vector<IdentityResult> out;
  auto fixed = [&](std::string name, double r) { out.push_back({std::move(name), r}); };
  double sq = max_entry(d.beta * d.beta - I), anti = 0, herm = max_entry(d.beta - d.beta.adjoint()), cross = 0;
  for (int j = 0; j < 3; ++j) {
    sq = std::max(sq, max_entry(d.alpha[j] * d.alpha[j] - I));
    anti = std::max(anti, max_entry(d.alpha[j] * d.beta + d.beta * d.alpha[j]));
    herm = std::max(herm, max_entry(d.alpha[j] - d.alpha[j].adjoint()));
    for (int k = 0; k < 3; ++k)
      if (k != j) cross = std::max(cross, max_entry(d.alpha[j] * d.alpha[k] + d.alpha[k] * d.alpha[j]));
  }
  fixed("beta^2 = (alpha^j)^2 = I", sq);
  fixed("alpha^j beta + beta alpha^j = 0", anti);
  fixed("alpha^j alpha^k + alpha^k alpha^j = 0 (j != k)", cross);
  fixed("beta, alpha^j Hermitian", herm);

  double idem = 0, orth = 0, compl_ = 0, split = 0, hermP = 0, eig = 0, pair = 0, commute = 0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (size_t i = 0; i < n; ++i) {
    Vec3 xi;
    do xi = Vec3(g(rng), g(rng), g(rng));
    while (xi.norm() < 1e-6);
    Vec3 zeta(g(rng), g(rng), g(rng));
    if (zeta.norm() < 1e-6) zeta = Vec3(1, 0, 0);
    const Matrix4 P = projection(xi, Sign::Plus), M = projection(xi, Sign::Minus);
    idem = std::max({idem, max_entry(P * P - P), max_entry(M * M - M)});
    orth = std::max({orth, max_entry(P * M), max_entry(M * P)});
    compl_ = std::max(compl_, max_entry(P + M - I));
    split = std::max(split, max_entry(alpha_dot(unit(xi)) - (P - M)));
    hermP = std::max({hermP, max_entry(P - P.adjoint()), max_entry(M - M.adjoint())});
    // βP±(ξ) = P∓(ξ)β.
    commute = std::max({commute, max_entry(d.beta * P - M * d.beta), max_entry(d.beta * M - P * d.beta)});
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const Spinor4 v = eigenvector(xi, s);
      eig = std::max(eig, (projection(xi, s) * v - v).cwiseAbs().maxCoeff());
    }
    pair = std::max(pair, std::abs(beta_pairing(xi, zeta) - beta_pairing_formula(xi, zeta)));
  }
  fixed("P+- idempotent", idem);
  fixed("P+- P-+ = 0", orth);
  fixed("P+ + P- = I", compl_);
  fixed("xi.alpha / |xi| = P+ - P-", split);
  fixed("P+- Hermitian", hermP);
  fixed("beta P+-(xi) = P-+(xi) beta", commute);
  fixed("P+-(xi) v+-(xi) = v+-(xi)", eig);
  fixed("<beta v+(eta), v+(zeta)> = 1 - eta.zeta + i eta' ^ zeta'", pair);
  return out;
}

}  // namespace dkg
