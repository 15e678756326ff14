#pragma once

#include "dkg/dirac.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dkg {

struct FrequencyPoint {
  double tau = 0;
  Vec3 xi = Vec3::Zero();
  double lambda = 0;
  Vec3 eta = Vec3::Zero();
};

struct DerivedQuantities {
  double gamma, Theta, sigma_plus, sigma_minus, kappa_plus, kappa_minus;
  double theta_plus, theta_minus;  // NaN when η or η−ξ vanishes
  bool degenerate = false;
};

DerivedQuantities derived_quantities(const FrequencyPoint& p);

// Samples with |η|, |η−ξ| log-uniform in [1, 10³], uniform directions, and a
// 50/50 mixture of free and near-cone (τ, λ).
class FrequencySampler {
 public:
  explicit FrequencySampler(uint64_t seed);
  FrequencyPoint next();
  // |η| ∈ [10, 10³], |ξ| ∈ [10⁻³, 10⁻¹]·|η|, (τ, λ) on the cones.
  FrequencyPoint next_low_output();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct BoundReport {
  size_t samples = 0;
  size_t violations = 0;      // κ± < 0, κ± > 2min, κ± > |Γ|+|Θ|+|Σ±|
  size_t adversarial = 0;     // hand-placed near-cone points included
  double worst_slack = 0;     // min over samples of (rhs − lhs)/scale
};
BoundReport check_exact_bounds(size_t n, uint64_t seed);

struct RatioStats {
  std::string relation;
  double min = 0, max = 0;
  size_t used = 0, excluded = 0;
  bool in_bracket(double lo = 1.0 / 16, double hi = 16) const { return used > 0 && min >= lo && max <= hi; }
};
// θ₊²·|η||η−ξ|/(|ξ|κ₊), θ₋²·min/κ₋ and, in the regime |ξ| ≪ |η|, the
// intermediate θ₋²·|η||η−ξ|/((|η|+|η−ξ|)κ₋).
std::vector<RatioStats> check_comparability(size_t n, uint64_t seed);

struct SymbolReport {
  double constant = 0;          // sup ‖symbol‖/θ over all four sign pairs
  double per_pair[2][2] = {};   // [s1][s2], index 0 = +
  double aligned_max = 0;       // max ‖symbol‖ in aligned configurations
  size_t samples = 0;
};
SymbolReport check_null_symbol_bound(size_t n, uint64_t seed);

// Ratios below this angle are replaced by both-sides-vanish tests.
constexpr double kAngleCutoff = 1e-8;

std::string to_csv(const BoundReport& b, const std::vector<RatioStats>& r, const SymbolReport& s,
                   uint64_t seed);

}  // namespace dkg
