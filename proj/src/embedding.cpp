#include "dkg/embedding.hpp"

#include <array>
#include <stdexcept>

namespace dkg {

namespace {

const ExtFrac kHalf(frac(1, 2));
const ExtFrac kThreeHalves(frac(3, 2));

using Slots = std::array<ExtFrac, 6>;

Slots slots(const Fact& f) {
  return {f.left.a, f.left.b, f.right.a, f.right.b, f.target.a, f.target.b};
}

Fact from_slots(const Slots& s) { return make_fact(s[0], s[1], s[2], s[3], s[4], s[5]); }

}  // namespace

std::string SpaceSpec::str() const {
  if (is_l2()) return "L2";
  const char* name = variant == Variant::Xplus ? "X+" : variant == Variant::Xminus ? "X-" : "H";
  return std::string(name) + "^{" + a.str() + ", " + b.str() + "}";
}

bool operator==(const SpaceSpec& x, const SpaceSpec& y) { return x.a == y.a && x.b == y.b; }

std::string Fact::str() const { return left.str() + " · " + right.str() + " -> " + target.str(); }

bool operator==(const Fact& x, const Fact& y) {
  return x.left == y.left && x.right == y.right && x.target == y.target;
}

Fact make_fact(ExtFrac a, ExtFrac alpha, ExtFrac b, ExtFrac beta, ExtFrac t, ExtFrac g) {
  return {{std::move(a), std::move(alpha)}, {std::move(b), std::move(beta)}, {std::move(t), std::move(g)}};
}

bool implies(const Fact& strong, const Fact& weak) {
  return weak.left.a >= strong.left.a && weak.left.b >= strong.left.b &&
         weak.right.a >= strong.right.a && weak.right.b >= strong.right.b &&
         weak.target.a <= strong.target.a && weak.target.b <= strong.target.b;
}

Fact swap_factors(const Fact& f) { return {f.right, f.left, f.target}; }

Fact dualize(const Fact& f, int factor) {
  SpaceSpec neg_target{-f.target.a, -f.target.b};
  if (factor == 1) return {neg_target, f.right, {-f.left.a, -f.left.b}};
  if (factor == 2) return {f.left, neg_target, {-f.right.a, -f.right.b}};
  throw std::invalid_argument("dualize: factor must be 1 or 2");
}

Fact interpolate(const Fact& f0, const Fact& f1, const ExtFrac& theta) {
  if (theta < ExtFrac(0) || theta > ExtFrac(1))
    throw std::invalid_argument("interpolation parameter outside [0,1]: " + theta.str());
  Slots a = slots(f0), b = slots(f1), out;
  for (size_t k = 0; k < 6; ++k) out[k] = a[k] + theta * (b[k] - a[k]);
  return from_slots(out);
}

ExtFrac spatial_slot(const Fact& f, int slot) {
  switch (slot) {
    case 1: return f.left.a;
    case 2: return f.right.a;
    case 3: return -f.target.a;
  }
  throw std::invalid_argument("spatial slot must be 1..3");
}

Fact shift_spatial(const Fact& f, int slot, const ExtFrac& w) {
  Fact g = f;
  switch (slot) {
    case 1: g.left.a += w; break;
    case 2: g.right.a += w; break;
    case 3: g.target.a -= w; break;
    default: throw std::invalid_argument("spatial slot must be 1..3");
  }
  return g;
}

std::optional<ThetaInterval> interpolation_window(const Fact& f0, const Fact& f1, const Fact& goal,
                                                  bool exact) {
  Slots a = slots(f0), b = slots(f1), g = slots(goal);
  std::vector<ThetaConstraint> cs;
  for (size_t k = 0; k < 6; ++k) {
    Rel rel = exact ? Rel::EQ : (k < 4 ? Rel::LE : Rel::GE);
    cs.push_back({b[k] - a[k], rel, g[k] - a[k]});
  }
  return solve_interval(cs);
}

// ---- base theorems ------------------------------------------------------------

bool check_sobolev_product(const ExtFrac& s1, const ExtFrac& s2, const ExtFrac& s3, const ExtFrac& d) {
  if (d <= kHalf) throw std::invalid_argument("Sobolev product law needs d > 1/2, got " + d.str());
  ExtFrac sum = s1 + s2 + s3;
  bool common = s1 + s2 > kHalf && s1 + s3 >= ExtFrac(0) && s2 + s3 >= ExtFrac(0);
  if (!common) return false;
  if (sum > ExtFrac(1)) return true;                            // strict case
  return sum == ExtFrac(1) && s1 < ExtFrac(1) && s2 < ExtFrac(1);  // endpoint case
}

bool check_wave_product(const ExtFrac& t1, const ExtFrac& t2, const ExtFrac& t3, const ExtFrac& d1,
                        const ExtFrac& d2, const ExtFrac& d3) {
  const ExtFrac zero(0);
  if (t1 + t2 < zero || t1 + t3 < zero || t2 + t3 < zero) return false;
  if (d1 < zero || d2 < zero || d3 < zero) return false;
  ExtFrac ts = t1 + t2 + t3, ds = d1 + d2 + d3;
  bool t_ok = ts > kThreeHalves ||
              (ts == kThreeHalves && t1 != kThreeHalves && t2 != kThreeHalves && t3 != kThreeHalves);
  bool d_ok = ds > kHalf || (ds == kHalf && d1 != kHalf && d2 != kHalf && d3 != kHalf);
  return t_ok && d_ok;
}

bool check_special(const Fact& f) {
  const ExtFrac& e = f.right.a;
  return e > ExtFrac(0) && f.left.a == kHalf + e && f.target.a == e - ExtFrac(1) &&
         f.target.b == kHalf && f.left.b > kHalf && f.right.b > kHalf;
}

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::Sobolev: return "Sobolev product law";
    case Theorem::Wave: return "wave-Sobolev product law";
    case Theorem::Special: return "special embedding";
  }
  return "?";
}

bool theorem_applies(Theorem t, const Fact& f) {
  switch (t) {
    case Theorem::Sobolev: {
      ExtFrac d = min(f.left.b, f.right.b);
      if (d <= kHalf || f.target.b > ExtFrac(0)) return false;
      return check_sobolev_product(f.left.a, f.right.a, -f.target.a, d);
    }
    case Theorem::Wave:
      return check_wave_product(f.left.a, f.right.a, -f.target.a, f.left.b, f.right.b, -f.target.b);
    case Theorem::Special: return check_special(f);
  }
  return false;
}

// ---- derivations ----------------------------------------------------------------

const char* to_string(Rule r) {
  switch (r) {
    case Rule::Leaf: return "theorem";
    case Rule::Interpolate: return "interpolate";
    case Rule::Dualize: return "dualize";
    case Rule::Swap: return "swap";
    case Rule::Weaken: return "weight-discard";
    case Rule::Leibniz: return "leibniz-split";
    case Rule::LocalLeibniz: return "localized-leibniz";
    case Rule::Bie: return "bie";
    case Rule::Symmetry: return "symmetry";
  }
  return "?";
}

nlohmann::json Derivation::to_json() const {
  nlohmann::json j;
  j["rule"] = to_string(rule);
  j["fact"] = fact.str();
  if (!citation.empty()) j["citation"] = citation;
  if (rule == Rule::Interpolate) j["theta"] = theta.str();
  if (rule == Rule::Dualize) j["factor"] = slot;
  if (rule == Rule::Leibniz || rule == Rule::LocalLeibniz) {
    j["slot"] = slot;
    if (rule == Rule::LocalLeibniz) j["from_slot"] = other;
    j["weight"] = weight.str();
  }
  if (rule == Rule::Bie) j["estimate"] = bie == 10 ? "bie1e" : "bie" + std::to_string(bie);
  if (!children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& c : children) j["children"].push_back(c.to_json());
  }
  return j;
}

size_t Derivation::size() const {
  size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

size_t Derivation::leaves() const {
  if (rule == Rule::Leaf) return 1;
  size_t n = 0;
  for (const auto& c : children) n += c.leaves();
  return n;
}

bool Derivation::uses(Theorem t) const {
  if (rule == Rule::Leaf) return theorem == t;
  for (const auto& c : children)
    if (c.uses(t)) return true;
  return false;
}

bool Derivation::uses_bie(int k) const {
  if (rule == Rule::Bie && bie == k) return true;
  for (const auto& c : children)
    if (c.uses_bie(k)) return true;
  return false;
}

// Implemented with the estimate tables in bie.cpp.
bool bie_instance_holds(int k, const Fact& f);

namespace {

bool fail(std::string* why, const Derivation& d, const std::string& msg) {
  if (why) *why = std::string(to_string(d.rule)) + " at " + d.fact.str() + ": " + msg;
  return false;
}

}  // namespace

bool verify(const Derivation& d, std::string* why) {
  auto arity = [&](size_t n) { return d.children.size() == n; };
  for (const auto& c : d.children)
    if (!verify(c, why)) return false;
  switch (d.rule) {
    case Rule::Leaf: {
      bool ok = false;
      try {
        ok = arity(0) && theorem_applies(d.theorem, d.fact);
      } catch (const std::exception& e) {
        return fail(why, d, e.what());
      }
      return ok || fail(why, d, std::string(to_string(d.theorem)) + " does not apply");
    }
    case Rule::Interpolate: {
      if (!arity(2)) return fail(why, d, "needs two children");
      if (d.theta < ExtFrac(0) || d.theta > ExtFrac(1)) return fail(why, d, "theta outside [0,1]");
      return interpolate(d.children[0].fact, d.children[1].fact, d.theta) == d.fact ||
             fail(why, d, "exponents are not the affine combination");
    }
    case Rule::Dualize:
      if (!arity(1) || (d.slot != 1 && d.slot != 2)) return fail(why, d, "malformed");
      return dualize(d.children[0].fact, d.slot) == d.fact || fail(why, d, "not the dual fact");
    case Rule::Swap:
      if (!arity(1)) return fail(why, d, "malformed");
      return swap_factors(d.children[0].fact) == d.fact || fail(why, d, "not the swapped fact");
    case Rule::Weaken:
      if (!arity(1)) return fail(why, d, "malformed");
      return implies(d.children[0].fact, d.fact) || fail(why, d, "child does not imply fact");
    case Rule::Leibniz: {
      if (!arity(2) || d.slot < 1 || d.slot > 3) return fail(why, d, "malformed");
      if (d.weight < ExtFrac(0)) return fail(why, d, "negative weight");
      Fact up = shift_spatial(d.fact, d.slot, d.weight);
      int k = 0;
      for (int other = 1; other <= 3; ++other) {
        if (other == d.slot) continue;
        if (shift_spatial(up, other, -d.weight) != d.children[k++].fact)
          return fail(why, d, "pieces do not match the triangle split");
      }
      return true;
    }
    case Rule::LocalLeibniz: {
      if (!arity(1)) return fail(why, d, "malformed");
      bool regime = (d.slot == 3 && (d.other == 1 || d.other == 2)) ||
                    (d.slot != d.other && (d.slot == 1 || d.slot == 2) && (d.other == 1 || d.other == 2));
      if (!regime) return fail(why, d, "weight transfer not available in this frequency regime");
      if (d.weight < ExtFrac(0)) return fail(why, d, "negative weight");
      return shift_spatial(shift_spatial(d.fact, d.slot, d.weight), d.other, -d.weight) ==
                 d.children[0].fact ||
             fail(why, d, "child is not the transferred fact");
    }
    case Rule::Bie:
      if (!arity(1)) return fail(why, d, "malformed");
      if (!bie_instance_holds(d.bie, d.fact)) return fail(why, d, "condition table fails");
      return implies(d.children[0].fact, d.fact) || fail(why, d, "derivation does not reach the estimate");
    case Rule::Symmetry:
      if (!arity(1)) return fail(why, d, "malformed");
      return d.children[0].fact == d.fact || fail(why, d, "symmetric case proves a different fact");
  }
  return false;
}

Derivation leaf(Theorem t, const Fact& f) {
  Derivation d;
  d.rule = Rule::Leaf;
  d.theorem = t;
  d.fact = f;
  d.citation = to_string(t);
  return d;
}

Derivation weaken(const Fact& target, Derivation strong, std::string citation) {
  if (strong.fact == target) return strong;
  Derivation d;
  d.rule = Rule::Weaken;
  d.fact = target;
  d.citation = std::move(citation);
  d.children.push_back(std::move(strong));
  return d;
}

Derivation dualized(int factor, Derivation child) {
  Derivation d;
  d.rule = Rule::Dualize;
  d.slot = factor;
  d.citation = "duality";
  d.fact = dualize(child.fact, factor);
  d.children.push_back(std::move(child));
  return d;
}

Derivation swapped(Derivation child) {
  Derivation d;
  d.rule = Rule::Swap;
  d.citation = "commutativity of the product";
  d.fact = swap_factors(child.fact);
  d.children.push_back(std::move(child));
  return d;
}

Derivation interpolated(Derivation d0, Derivation d1, const ExtFrac& theta, std::string citation) {
  Derivation d;
  d.rule = Rule::Interpolate;
  d.theta = theta;
  d.citation = std::move(citation);
  d.fact = interpolate(d0.fact, d1.fact, theta);
  d.children.push_back(std::move(d0));
  d.children.push_back(std::move(d1));
  return d;
}

std::optional<Derivation> prove_by(Theorem t, const Fact& f) {
  auto applies = [&](const Fact& g) {
    try {
      return theorem_applies(t, g);
    } catch (const std::invalid_argument&) {
      return false;
    }
  };
  if (applies(f)) return leaf(t, f);
  if (Fact g = swap_factors(f); applies(g)) return swapped(leaf(t, g));
  for (int k : {1, 2}) {
    // f = dualize(g, k) ⟺ g = dualize(f, k).
    Fact g = dualize(f, k);
    if (applies(g)) return dualized(k, leaf(t, g));
    if (Fact h = swap_factors(g); applies(h)) return dualized(k, swapped(leaf(t, h)));
  }
  return std::nullopt;
}

}  // namespace dkg
