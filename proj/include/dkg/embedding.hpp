#pragma once

#include "dkg/exact.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dkg {

enum class Variant { H, Xplus, Xminus, L2 };

// H^{a,b}; the engine reasons at the H level (X± ⊂ H).
struct SpaceSpec {
  ExtFrac a, b;
  Variant variant = Variant::H;

  static SpaceSpec L2() { return {0, 0, Variant::L2}; }
  bool is_l2() const { return a.is_zero() && b.is_zero(); }
  std::string str() const;
};

bool operator==(const SpaceSpec& x, const SpaceSpec& y);

// left · right ↪ target.
struct Fact {
  SpaceSpec left, right, target;
  std::string str() const;
};

bool operator==(const Fact& x, const Fact& y);
inline bool operator!=(const Fact& x, const Fact& y) { return !(x == y); }

Fact make_fact(ExtFrac a, ExtFrac alpha, ExtFrac b, ExtFrac beta, ExtFrac t, ExtFrac g);

// `weak` follows from `strong` by monotonicity of the weights: factor
// exponents may only grow, target exponents may only shrink.
bool implies(const Fact& strong, const Fact& weak);

Fact swap_factors(const Fact& f);
// factor ∈ {1, 2}: exchange that factor with the target, negating exponents.
Fact dualize(const Fact& f, int factor = 1);
// Slotwise (1−θ)·f0 + θ·f1. Throws std::invalid_argument for θ ∉ [0,1].
Fact interpolate(const Fact& f0, const Fact& f1, const ExtFrac& theta);

// Weight-transfer bookkeeping on the spatial triple (a, b, c) with c = −target.a.
ExtFrac spatial_slot(const Fact& f, int slot);
Fact shift_spatial(const Fact& f, int slot, const ExtFrac& w);

// Exact θ-window on which interpolate(f0, f1, θ) implies `goal`; with
// exact = true the interpolant must equal `goal` slotwise.
std::optional<ThetaInterval> interpolation_window(const Fact& f0, const Fact& f1, const Fact& goal,
                                                  bool exact = false);

// ---- base theorems ------------------------------------------------------------

// Sobolev product law. Throws for d ≤ 1/2.
bool check_sobolev_product(const ExtFrac& s1, const ExtFrac& s2, const ExtFrac& s3, const ExtFrac& d);
// Wave-Sobolev product law, including its boundary clause.
bool check_wave_product(const ExtFrac& t1, const ExtFrac& t2, const ExtFrac& t3, const ExtFrac& d1,
                        const ExtFrac& d2, const ExtFrac& d3);
// The axiom H^{1/2+e, 1/2+}·H^{e, 1/2+} ↪ H^{−1+e, 1/2}, e > 0.
bool check_special(const Fact& f);

enum class Theorem { Sobolev, Wave, Special };
const char* to_string(Theorem t);
bool theorem_applies(Theorem t, const Fact& f);

// ---- derivations ----------------------------------------------------------------

enum class Rule {
  Leaf,          // base theorem
  Interpolate,   // children: f0, f1
  Dualize,       // child; `slot` = dualized factor
  Swap,          // child
  Weaken,        // child implies fact (weight discard / monotonicity)
  Leibniz,       // two children: slot `slot` gains w, each other slot loses w
  LocalLeibniz,  // one child: slot `slot` gains w, slot `other` loses w (localized)
  Bie,           // child proves the bie instance `fact`
  Symmetry       // child proves the same fact under the η ↔ η−ξ symmetry
};
const char* to_string(Rule r);

struct Derivation {
  Rule rule = Rule::Leaf;
  Fact fact;
  std::string citation;
  Theorem theorem = Theorem::Sobolev;  // Leaf
  ExtFrac theta;                       // Interpolate
  ExtFrac weight;                      // Leibniz, LocalLeibniz
  int slot = 0;
  int other = 0;
  int bie = 0;
  std::vector<Derivation> children;

  nlohmann::json to_json() const;
  size_t size() const;
  // Number of leaves, and whether any leaf uses theorem t.
  size_t leaves() const;
  bool uses(Theorem t) const;
  bool uses_bie(int k) const;
};

// Re-checks every node and leaf; on failure `why` names the first bad node.
bool verify(const Derivation& d, std::string* why = nullptr);

Derivation leaf(Theorem t, const Fact& f);
Derivation weaken(const Fact& target, Derivation strong, std::string citation = "monotonicity");
Derivation dualized(int factor, Derivation child);
Derivation swapped(Derivation child);
Derivation interpolated(Derivation d0, Derivation d1, const ExtFrac& theta, std::string citation);

// Small deterministic prover: theorem t applied directly, to the swapped
// fact, or after dualizing either factor (optionally also swapped).
std::optional<Derivation> prove_by(Theorem t, const Fact& f);

}  // namespace dkg
