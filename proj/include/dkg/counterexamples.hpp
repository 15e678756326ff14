#pragma once

#include "dkg/dirac.hpp"
#include "dkg/region.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dkg {

enum class FamilyId { HHHigh, HLHigh, HLSwapped, UnitScale, HHLowMinus };
const char* to_string(FamilyId f);
FamilyId parse_family(const std::string& name);
const std::vector<FamilyId>& all_families();

struct Box {
  Vec3 center = Vec3::Zero(), half = Vec3::Zero();
  double volume() const { return 8 * half.prod(); }
  Vec3 lo() const { return center - half; }
  Vec3 hi() const { return center + half; }
  bool contains(const Box& o) const;
  // sqrt of the mean of |x|² over the box.
  double rms_norm() const;
};

struct FamilySets {
  Box A, B, C;
  std::string adjustment;  // non-empty if B had to be widened
};

// Boxes as displayed, with B widened minimally to the hull of B and A ⊖ C when
// the displayed B misses part of A ⊖ C. Throws std::invalid_argument for L < 4.
FamilySets family_sets(FamilyId f, double L);
// η ∈ A, ξ ∈ C ⇒ η − ξ ∈ B, axiswise.
bool abc_property(const FamilySets& s);

// Slab orientation k of the flat families: ψ lives on |λ + kη₁| ≤ 1 and ψ′ on
// |μ + kζ₁| ≤ 1. HH-low-minus uses the curved slabs λ + |η|, μ − |ζ| instead.
int slab_sign(FamilyId f);

Rational predicted_delta(FamilyId f, const ExponentTuple& e);

struct RatioOptions {
  int xi_cells = 16;     // per axis over C
  int inner_points = 8;  // per axis over A (6 for the curved family)
  int tau_points = 16;   // per unit of slab thickness
};

struct RatioResult {
  double ratio = 0, K = 0, norm_psi = 0, norm_psi_prime = 0;
  double coarse_ratio = 0;  // same computation at half resolution
  double rel_change() const { return std::abs(ratio - coarse_ratio) / ratio; }
};

// K/(‖ψ‖·‖ψ′‖). Throws std::invalid_argument if the resolution is below
// 4 cells per axis.
RatioResult ratio_detailed(FamilyId f, const ExponentTuple& e, double L, const RatioOptions& opt = {});
double ratio(FamilyId f, const ExponentTuple& e, double L);

// Independent Monte Carlo evaluation of the same quantity.
double ratio_monte_carlo(FamilyId f, const ExponentTuple& e, double L, size_t samples, uint64_t seed);

// Negated least-squares slope of log ratio against log L. Throws for < 3 points.
double fit_delta(FamilyId f, const ExponentTuple& e, const std::vector<double>& Ls);
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Three exponent tuples per family: the zero tuple, a threshold tuple and one
// exercising a modulation exponent.
std::vector<ExponentTuple> standard_tuples(FamilyId f);

std::string scan_csv(const std::vector<FamilyId>& fams, const std::vector<double>& Ls);

}  // namespace dkg
