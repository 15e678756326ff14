#include "dkg/bie.hpp"

#include <stdexcept>

namespace dkg {

namespace {

const ExtFrac kZero(0), kOne(1), kHalf(frac(1, 2)), kQuarter(frac(1, 4)),
    kThreeQuarters(frac(3, 4)), kThreeHalves(frac(3, 2));

void check_index(int k) {
  if (!(k >= 1 && k <= 9) && k != kBie1e) throw std::invalid_argument("unknown estimate index " + std::to_string(k));
}

const ExtFrac& get(const BieParams& p, const char* name) {
  auto it = p.find(name);
  if (it == p.end()) throw std::invalid_argument(std::string("missing parameter ") + name);
  return it->second;
}

bool uses_d(int k) { return k != 2; }

void fill_defaults(int k, BieParams& p) {
  if (uses_d(k) && !p.count("d")) p["d"] = ExtFrac(ExtReal(frac(1, 2)) + ExtReal::eps());
  if (k == 8 && !p.count("e")) p["e"] = ExtFrac(ExtReal::eps());
}

// Parameters of the k-th estimate read off a query, provided the query's
// fixed slots are weaker than (or equal to) the estimate's.
std::optional<BieParams> extract(int k, const Fact& q) {
  const ExtFrac &qa = q.left.a, &qal = q.left.b, &qb = q.right.a, &qbe = q.right.b;
  const ExtFrac &qt = q.target.a, &qg = q.target.b;
  BieParams p;
  switch (k) {
    case 1:
    case kBie1e:
      if (qb < kZero || qg > kZero) return std::nullopt;
      p = {{"a", qa}, {"alpha", qal}, {"c", -qt}, {"d", qbe}};
      break;
    case 2:
      if (qb < kZero || qt > kZero) return std::nullopt;
      p = {{"a", qa}, {"alpha", qal}, {"beta", qbe}, {"gamma", -qg}};
      break;
    case 3:
      if (qg > kZero) return std::nullopt;
      p = {{"a", qa}, {"d", qal}, {"b", qb}, {"beta", qbe}, {"c", -qt}};
      break;
    case 4:
      if (qa < kOne || qb < kZero || qg > kZero) return std::nullopt;
      p = {{"d", qal}, {"beta", qbe}, {"c", -qt}};
      break;
    case 5:
      if (qg > kZero) return std::nullopt;
      p = {{"a", qa}, {"alpha", qal}, {"b", qb}, {"d", qbe}, {"c", -qt}};
      break;
    case 6:
      if (qt > kZero || qg > kZero) return std::nullopt;
      p = {{"a", qa}, {"d", qal}, {"b", qb}, {"beta", qbe}};
      break;
    case 7:
      if (qb < kHalf || qt > kZero || qg > kZero) return std::nullopt;
      p = {{"a", qa}, {"d", qal}, {"beta", qbe}};
      break;
    case 8:
      if (qt > qb - kOne) return std::nullopt;
      p = {{"a", qa}, {"d", qal}, {"e", qb}, {"beta", qbe}, {"gamma", -qg}};
      break;
    case 9:
      if (qa < kHalf || qb < kZero || qg > kZero) return std::nullopt;
      p = {{"d", qal}, {"beta", qbe}, {"c", -qt}};
      break;
    default: check_index(k);
  }
  return p;
}

ExtFrac eps_frac() { return ExtFrac(ExtReal::eps()); }

Derivation prove_or_throw(Theorem t, const Fact& f) {
  auto d = prove_by(t, f);
  if (!d) throw std::logic_error(std::string(to_string(t)) + " does not give " + f.str());
  return *d;
}

Derivation bie9_inner(const ExtFrac& sl, const ExtFrac& d) {
  Derivation g0 = prove_or_throw(Theorem::Sobolev, make_fact(kHalf + sl, d, 0, kHalf + sl, sl - kHalf, 0));
  Derivation g1 = prove_or_throw(Theorem::Wave, make_fact(0, d, 0, kHalf + sl, -(kThreeHalves + sl), 0));
  Fact goal = make_fact(kHalf, d, 0, kHalf + sl, -(kHalf + sl), 0);
  auto w = interpolation_window(g0.fact, g1.fact, goal, true);
  if (!w) throw std::logic_error("bie9 inner interpolation has no exact parameter");
  return interpolated(std::move(g0), std::move(g1), w->lo, "bilinear interpolation, theta = 2e'/(1+2e')");
}

}  // namespace

std::string bie_name(int k) {
  check_index(k);
  return k == kBie1e ? "bie1e" : "bie" + std::to_string(k);
}

std::vector<std::string> bie_parameters(int k) {
  switch (k) {
    case 1:
    case kBie1e: return {"a", "alpha", "c", "d"};
    case 2: return {"a", "alpha", "beta", "gamma"};
    case 3: return {"a", "b", "beta", "c", "d"};
    case 4: return {"beta", "c", "d"};
    case 5: return {"a", "alpha", "b", "c", "d"};
    case 6: return {"a", "b", "beta", "d"};
    case 7: return {"a", "beta", "d"};
    case 8: return {"a", "beta", "gamma", "e", "d"};
    case 9: return {"beta", "c", "d"};
  }
  check_index(k);
  return {};
}

Fact bie_conclusion(int k, const BieParams& p) {
  switch (k) {
    case 1:
    case kBie1e: return make_fact(get(p, "a"), get(p, "alpha"), 0, get(p, "d"), -get(p, "c"), 0);
    case 2: return make_fact(get(p, "a"), get(p, "alpha"), 0, get(p, "beta"), 0, -get(p, "gamma"));
    case 3: return make_fact(get(p, "a"), get(p, "d"), get(p, "b"), get(p, "beta"), -get(p, "c"), 0);
    case 4: return make_fact(1, get(p, "d"), 0, get(p, "beta"), -get(p, "c"), 0);
    case 5: return make_fact(get(p, "a"), get(p, "alpha"), get(p, "b"), get(p, "d"), -get(p, "c"), 0);
    case 6: return make_fact(get(p, "a"), get(p, "d"), get(p, "b"), get(p, "beta"), 0, 0);
    case 7: return make_fact(get(p, "a"), get(p, "d"), kHalf, get(p, "beta"), 0, 0);
    case 8:
      return make_fact(get(p, "a"), get(p, "d"), get(p, "e"), get(p, "beta"), get(p, "e") - kOne,
                       -get(p, "gamma"));
    case 9: return make_fact(kHalf, get(p, "d"), 0, get(p, "beta"), -get(p, "c"), 0);
  }
  check_index(k);
  return {};
}

bool bie_table(int k, const BieParams& p) {
  check_index(k);
  if (uses_d(k) && !(get(p, "d") > kHalf)) return false;
  auto nonneg = [&](std::initializer_list<const char*> names) {
    for (const char* n : names)
      if (get(p, n) < kZero) return false;
    return true;
  };
  switch (k) {
    case 1: {
      const auto &a = get(p, "a"), &al = get(p, "alpha"), &c = get(p, "c");
      return nonneg({"a", "c", "alpha"}) && ExtFrac(3) * min(a * kHalf, al) + c > kThreeHalves;
    }
    case kBie1e: {
      const auto &a = get(p, "a"), &al = get(p, "alpha"), &c = get(p, "c");
      return nonneg({"a", "alpha"}) && c >= kHalf && min(a, al) + c * kHalf > kThreeQuarters;
    }
    case 2: {
      const auto &a = get(p, "a"), &al = get(p, "alpha"), &be = get(p, "beta"), &ga = get(p, "gamma");
      ExtFrac m = min(al, be);
      return a > kOne && al > kZero && nonneg({"beta", "gamma"}) && a + m > kThreeHalves && ga + m > kHalf;
    }
    case 3: {
      const auto &a = get(p, "a"), &b = get(p, "b"), &be = get(p, "beta"), &c = get(p, "c");
      return nonneg({"c", "beta"}) && a > kZero && b > kZero && a + b == kOne && c + be > kHalf;
    }
    case 4: {
      const auto &be = get(p, "beta"), &c = get(p, "c");
      return be >= kZero && c > kZero && c + be > kHalf;
    }
    case 5: {
      const auto &a = get(p, "a"), &al = get(p, "alpha"), &b = get(p, "b"), &c = get(p, "c");
      ExtFrac m = min(a, al);
      return nonneg({"a", "b", "alpha"}) && c >= kHalf && m + ExtFrac(frac(2, 3)) * b > kHalf &&
             m + ExtFrac(2) * c > kThreeHalves;
    }
    case 6: {
      const auto &a = get(p, "a"), &b = get(p, "b"), &be = get(p, "beta");
      return nonneg({"b", "beta"}) && a >= kHalf && a + ExtFrac(2) * min(b, be) > kThreeHalves;
    }
    case 7: {
      const auto &a = get(p, "a"), &be = get(p, "beta");
      return be >= kZero && a >= kHalf && a + be > kOne;
    }
    case 8: {
      const auto &a = get(p, "a"), &be = get(p, "beta"), &ga = get(p, "gamma");
      return get(p, "e") > kZero && nonneg({"a", "beta"}) && ga >= -kHalf &&
             min(a, be) + ga * kHalf > kQuarter;
    }
    case 9: {
      const auto &be = get(p, "beta"), &c = get(p, "c");
      return be >= kZero && c > kHalf && c + be > kOne;
    }
  }
  return false;
}

std::string bie_table_text(int k) {
  switch (k) {
    case 1: return "a, c, alpha >= 0; 3 min(a/2, alpha) + c > 3/2";
    case kBie1e: return "a, alpha >= 0, c >= 1/2; min(a, alpha) + c/2 > 3/4";
    case 2: return "a > 1, alpha > 0, beta, gamma >= 0; a + min(alpha, beta) > 3/2; gamma + min(alpha, beta) > 1/2";
    case 3: return "c, beta >= 0; a, b > 0; a + b = 1; c + beta > 1/2";
    case 4: return "beta >= 0, c > 0; c + beta > 1/2";
    case 5: return "a, b, alpha >= 0, c >= 1/2; min(a, alpha) + 2b/3 > 1/2; min(a, alpha) + 2c > 3/2";
    case 6: return "b, beta >= 0, a >= 1/2; a + 2 min(b, beta) > 3/2";
    case 7: return "beta >= 0, a >= 1/2; a + beta > 1";
    case 8: return "a, beta >= 0, gamma >= -1/2; min(a, beta) + gamma/2 > 1/4";
    case 9: return "beta >= 0, c > 1/2; c + beta > 1";
  }
  check_index(k);
  return {};
}

ExtFrac default_slack() { return eps_frac() * eps_frac(); }

std::pair<Derivation, Derivation> bie_pair(int k, const BieParams& p, const ExtFrac& sl) {
  const ExtFrac h = kHalf + sl;  // 1/2 + ε'
  auto S = [](const Fact& f) { return prove_or_throw(Theorem::Sobolev, f); };
  auto W = [](const Fact& f) { return prove_or_throw(Theorem::Wave, f); };
  switch (k) {
    case 1: {
      const auto& d = get(p, "d");
      return {S(make_fact(kOne + sl, h, 0, d, 0, 0)), W(make_fact(0, 0, 0, d, -(kThreeHalves + sl), 0))};
    }
    case kBie1e: {
      const auto& d = get(p, "d");
      return {S(make_fact(h, h, 0, d, -h, 0)), W(make_fact(0, 0, 0, d, -(kThreeHalves + sl), 0))};
    }
    case 2:
      return {S(make_fact(kOne + sl, h, 0, h, 0, 0)),
              W(make_fact(kThreeHalves + sl, sl, 0, 0, 0, -(kHalf - sl)))};
    case 3: {
      const auto &a = get(p, "a"), &b = get(p, "b"), &d = get(p, "d");
      return {S(make_fact(a, d, b, h, 0, 0)), W(make_fact(a, d, b, 0, -kHalf, 0))};
    }
    case 4: {
      const auto& d = get(p, "d");
      return {S(make_fact(1, d, 0, h, -sl, 0)), W(make_fact(1, d, 0, 0, -kHalf, 0))};
    }
    case 5: {
      const auto& d = get(p, "d");
      return {S(make_fact(h, h, 0, d, -(kHalf - sl), 0)),
              W(make_fact(0, 0, kThreeQuarters, d, -kThreeQuarters, 0))};
    }
    case 6: {
      const auto& d = get(p, "d");
      return {S(make_fact(kHalf, d, kHalf, h, 0, 0)), W(make_fact(kThreeHalves + sl, d, 0, 0, 0, 0))};
    }
    case 7: {
      const auto& d = get(p, "d");
      return {S(make_fact(kHalf, d, kHalf, h, 0, 0)), W(make_fact(1, d, kHalf, 0, 0, 0))};
    }
    case 8: {
      const auto &d = get(p, "d"), &e = get(p, "e");
      return {S(make_fact(0, d, e, 0, e - kOne, -h)),
              prove_or_throw(Theorem::Special, make_fact(kHalf + e, d, e, h, e - kOne, kHalf))};
    }
    case 9: {
      const auto& d = get(p, "d");
      return {bie9_inner(sl, d), W(make_fact(kHalf, d, 0, 0, -kOne, 0))};
    }
  }
  check_index(k);
  throw std::logic_error("unreachable");
}

BieResult derive_bie(int k, BieParams params, const ExtFrac& slack) {
  check_index(k);
  fill_defaults(k, params);
  BieResult r;
  r.holds = bie_table(k, params);
  if (!r.holds) {
    r.note = "condition table fails: " + bie_table_text(k);
    return r;
  }
  Fact goal = bie_conclusion(k, params);
  try {
    auto [d0, d1] = bie_pair(k, params, slack);
    r.window = interpolation_window(d0.fact, d1.fact, goal);
    if (!r.window) {
      r.note = "no interpolation parameter reaches the estimate";
      return r;
    }
    ExtFrac theta = r.window->pick();
    Derivation node;
    node.rule = Rule::Bie;
    node.bie = k;
    node.fact = goal;
    node.citation = bie_name(k) + ": " + bie_table_text(k);
    node.children.push_back(
        weaken(goal, interpolated(std::move(d0), std::move(d1), theta, "bilinear interpolation")));
    std::string why;
    r.derived = verify(node, &why);
    if (!r.derived) r.note = why;
    r.derivation = std::move(node);
  } catch (const std::logic_error& e) {
    r.note = e.what();
  }
  return r;
}

bool bie_instance_holds(int k, const Fact& f) {
  auto p = extract(k, f);
  return p && bie_conclusion(k, *p) == f && bie_table(k, *p);
}

std::optional<Derivation> apply_bie(int k, const Fact& query, const ExtFrac& slack) {
  check_index(k);
  for (bool swap : {false, true}) {
    Fact q = swap ? swap_factors(query) : query;
    auto p = extract(k, q);
    if (!p || !bie_table(k, *p)) continue;
    BieResult r = derive_bie(k, *p, slack);
    if (!r.derived) continue;
    Derivation d = weaken(q, std::move(*r.derivation));
    if (swap) d = swapped(std::move(d));
    if (verify(d)) return d;
  }
  return std::nullopt;
}

std::optional<ThetaInterval> bie9_inner_window(const ExtFrac& slack, const ExtFrac& d) {
  Fact g0 = make_fact(kHalf + slack, d, 0, kHalf + slack, slack - kHalf, 0);
  Fact g1 = make_fact(0, d, 0, kHalf + slack, -(kThreeHalves + slack), 0);
  Fact goal = make_fact(kHalf, d, 0, kHalf + slack, -(kHalf + slack), 0);
  return interpolation_window(g0, g1, goal, true);
}

std::optional<ThetaInterval> sobolev_case2_window(const ExtFrac& s3) {
  ExtFrac e = eps_frac(), d = kHalf + e;
  Fact f0 = make_fact(0, d, kOne + e, d, 0, 0);
  Fact f1 = make_fact(0, d, kHalf + e, d, -kHalf, 0);
  Fact goal = make_fact(0, d, kOne + e - s3, d, -s3, 0);
  return interpolation_window(f0, f1, goal, true);
}

}  // namespace dkg
