#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace dkg {

using cplx = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Spinor4 = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;

enum class Sign { Plus = 1, Minus = -1 };
inline double sgn(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

struct DiracMatrices {
  Matrix4 beta;
  std::array<Matrix4, 3> alpha;
};

const DiracMatrices& dirac_matrices();
const std::array<Eigen::Matrix2cd, 3>& pauli_matrices();

// ξ/|ξ|; throws std::invalid_argument on the zero vector.
Vec3 unit(const Vec3& xi);

Matrix4 alpha_dot(const Vec3& v);  // v·α
Matrix4 projection(const Vec3& xi, Sign sign);
Spinor4 eigenvector(const Vec3& xi, Sign sign);

// ⟨βv₊(η), v₊(ζ)⟩ = v₊(ζ)†βv₊(η).
cplx beta_pairing(const Vec3& eta, const Vec3& zeta);
cplx beta_pairing_formula(const Vec3& eta, const Vec3& zeta);

double angle(const Vec3& eta, const Vec3& zeta);

// β P_{∓s2}(η−ξ) P_{s1}(η): the first argument is η, the second η−ξ, and
// s1 = [±], s2 = ±. Small when s1·η and s2·(η−ξ) point the same way.
Matrix4 null_symbol(const Vec3& eta, const Vec3& eta_minus_xi, Sign s1, Sign s2);
double null_angle(const Vec3& eta, const Vec3& eta_minus_xi, Sign s1, Sign s2);

double operator_norm(const Matrix4& m);

// Max entrywise residual of each Dirac/projection identity over n seeded
// random directions (fixed identities are checked once).
struct IdentityResult {
  std::string relation;
  double max_residual = 0;
};
std::vector<IdentityResult> identity_battery(size_t n, uint64_t seed);

double max_entry(const Matrix4& m);

}  // namespace dkg
