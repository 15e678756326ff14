#include "dkg/audit.hpp"

#include <functional>
#include <stdexcept>

namespace dkg {

namespace {

using Family = std::function<Fact(const ExtFrac&)>;
using MaybeProof = std::optional<Derivation>;

const ExtFrac kZero(0), kOne(1), kHalf(frac(1, 2)), kThird(frac(1, 3)), kSixth(frac(1, 6));

ExtFrac eps() { return ExtFrac(ExtReal::eps()); }
ExtFrac delta() { return ExtFrac(ExtReal::delta()); }

MaybeProof by(Theorem t, const Fact& f) { return prove_by(t, f); }

MaybeProof then_dualize(int factor, MaybeProof d) {
  if (!d) return std::nullopt;
  return dualized(factor, std::move(*d));
}

MaybeProof then_weaken(const Fact& target, MaybeProof d, const char* why) {
  if (!d || !implies(d->fact, target)) return std::nullopt;
  return weaken(target, std::move(*d), why);
}

// The standard "write r = … + ϱ, view the estimate as a family in s and
// interpolate between its values at t0 and t1" pattern.
MaybeProof family_route(const Family& F, const ExtFrac& s, const ExtFrac& t0, const ExtFrac& t1,
                        MaybeProof d0, MaybeProof d1, const std::string& citation) {
  if (!d0 || !d1) return std::nullopt;
  if (d0->fact != F(t0) || d1->fact != F(t1)) return std::nullopt;
  ExtFrac theta = (s - t0) / (t1 - t0);
  if (theta < kZero || theta > kOne) return std::nullopt;
  Derivation node = interpolated(std::move(*d0), std::move(*d1), theta, citation);
  Fact goal = F(s);
  if (!implies(node.fact, goal)) return std::nullopt;
  return weaken(goal, std::move(node));
}

MaybeProof leibniz_split(const Fact& f, int slot, const ExtFrac& w,
                         const std::function<MaybeProof(const Fact&)>& piece) {
  Fact up = shift_spatial(f, slot, w);
  Derivation node;
  node.rule = Rule::Leibniz;
  node.fact = f;
  node.slot = slot;
  node.weight = w;
  node.citation = "triangle inequality in Fourier space (Leibniz rule)";
  for (int other = 1; other <= 3; ++other) {
    if (other == slot) continue;
    auto d = piece(shift_spatial(up, other, -w));
    if (!d) return std::nullopt;
    node.children.push_back(std::move(*d));
  }
  return node;
}

MaybeProof local_transfer(const Fact& f, int slot, int from, const ExtFrac& w, MaybeProof child,
                          const char* regime) {
  if (!child) return std::nullopt;
  Derivation node;
  node.rule = Rule::LocalLeibniz;
  node.fact = f;
  node.slot = slot;
  node.other = from;
  node.weight = w;
  node.citation = regime;
  node.children.push_back(std::move(*child));
  return node;
}

bool in_r3_family(Region l) { return parameter_region(l) == Region::R3; }
bool in_r4_family(Region l) { return parameter_region(l) == Region::R4; }

struct Ctx {
  ExtFrac s, r, sigma, rho;
  Region label;
};

// ---- I+ ----------------------------------------------------------------------

MaybeProof route_ip3(const Ctx& c, const Fact& req) {
  Fact E = dualize(req, 2);  // H^{1+s−r,σ}·H^{0,ρ} ↪ H^{−1/2−s+3ε, 1/2−σ}
  MaybeProof d;
  switch (c.label) {
    case Region::Exterior: {
      Fact E0 = E;
      E0.left.a = kZero;
      d = then_weaken(E, by(Theorem::Wave, E0), "drop <eta>^{1+s-r} (r <= 1+s)");
      break;
    }
    case Region::DF:
    case Region::F: d = by(Theorem::Wave, E); break;
    case Region::R1:
    case Region::R3:
    case Region::CD:
    case Region::FE: d = by(Theorem::Sobolev, E); break;
    case Region::AD:
    case Region::D: d = apply_bie(kBie1e, E); break;
    case Region::BD: d = then_dualize(1, apply_bie(1, dualize(E, 1))); break;
    case Region::R2: {
      ExtFrac rho_ = kHalf + ExtFrac(2) * c.s - c.r;  // r = 1/2 + 2s − ϱ
      const ExtFrac e = eps();
      Family F = [=](const ExtFrac& t) {
        return make_fact(kHalf - t + rho_, kHalf + t, 0, kHalf + e, -kHalf - t + ExtFrac(3) * e, -t);
      };
      ExtFrac t0 = delta(), t1 = kHalf - delta();
      d = family_route(F, c.s, t0, t1, by(Theorem::Sobolev, F(t0)),
                       then_dualize(1, apply_bie(1, dualize(F(t1), 1))),
                       "bilinear interpolation in s between s = delta and s = 1/2 - delta");
      break;
    }
    default:
      if (in_r4_family(c.label)) {
        Fact E0 = E;
        E0.left.a = kZero;
        d = then_weaken(E, then_dualize(1, apply_bie(2, dualize(E0, 1))), "drop <eta>^{1+s-r} (r <= 1+s)");
      }
  }
  return then_dualize(2, std::move(d));
}

// ---- I− ----------------------------------------------------------------------

const char* kLowOutput = "localized Leibniz rule: |xi| << |eta| ~ |eta-xi|";

MaybeProof route_im1(const Ctx& c, const Fact& req) {
  if (c.r <= kOne) return by(Theorem::Sobolev, req);
  ExtFrac w = c.r - kOne;
  Fact moved = shift_spatial(shift_spatial(req, 3, w), 2, -w);
  return local_transfer(req, 3, 2, w, by(Theorem::Sobolev, moved), kLowOutput);
}

MaybeProof route_im2(const Ctx& c, const Fact& req) {
  Fact D = dualize(req, 1);  // H^{1−r,ρ}·H^{1/2+2s−3ε,σ} ↪ L²
  if (c.r < kOne) return then_dualize(1, by(Theorem::Sobolev, D));
  ExtFrac w = c.r - kOne;
  Fact moved = shift_spatial(shift_spatial(D, 1, w), 2, -w);
  return then_dualize(1, local_transfer(D, 1, 2, w, by(Theorem::Sobolev, moved), kLowOutput));
}

// ---- J+ ----------------------------------------------------------------------

MaybeProof route_jp1(const Ctx& c, const Fact& req) {
  switch (c.label) {
    case Region::Exterior: {
      Fact q = req;
      q.target.a = kHalf - c.s;  // r ≥ s
      return then_weaken(req, by(Theorem::Wave, q), "r >= s");
    }
    case Region::R1:
    case Region::AD:
    case Region::R2: return apply_bie(3, req);
    case Region::BD: return by(Theorem::Wave, req);
    default: break;
  }
  if (in_r3_family(c.label)) {
    ExtFrac rho_ = c.r - kThird - ExtFrac(frac(2, 3)) * c.s;  // r = 1/3 + 2s/3 + ϱ
    const ExtFrac e = eps();
    Family F = [=](const ExtFrac& t) {
      return make_fact(kHalf + t, ExtFrac(frac(5, 6)) - t * kThird + e, kHalf - t,
                       kSixth + t * kThird - ExtFrac(2) * e,
                       kSixth - ExtFrac(frac(2, 3)) * t - rho_, 0);
    };
    return family_route(F, c.s, kHalf, kOne, apply_bie(4, F(kHalf)), by(Theorem::Wave, F(kOne)),
                        "bilinear interpolation in s between s = 1/2 and s = 1, theta = 2s - 1");
  }
  if (in_r4_family(c.label)) return by(Theorem::Wave, req);
  return std::nullopt;
}

MaybeProof route_jp2(const Ctx& c, const Fact& req) {
  Fact E = dualize(req, 1);  // H^{r−1/2,ρ}·H^{1/2−s,1−σ−ε} ↪ H^{−1/2−s,1/2−σ}
  const ExtFrac e = eps();
  MaybeProof d;
  const ExtFrac lo = delta(), hi = kHalf - delta();
  const char* cite = "bilinear interpolation in s between s = delta and s = 1/2 - delta";
  if (c.label == Region::R1 || c.label == Region::AD) {
    ExtFrac rho_ = c.r - kHalf - c.s * kThird;
    Family F = [=](const ExtFrac& t) {
      return make_fact(t * kThird + rho_, kHalf + e, kHalf - t, kHalf - t * kThird - e, -kHalf - t,
                       -t * kThird);
    };
    d = family_route(F, c.s, lo, hi, apply_bie(5, F(lo)), apply_bie(8, F(hi)), cite);
  } else if (c.label == Region::R2) {
    ExtFrac rho_ = c.r - kHalf - c.s;
    Family F = [=](const ExtFrac& t) {
      return make_fact(t + rho_, kHalf + e, kHalf - t, kHalf - t - e, -kHalf - t, -t);
    };
    d = family_route(F, c.s, lo, hi, apply_bie(5, F(lo)), by(Theorem::Wave, F(hi)), cite);
  } else if (in_r3_family(c.label)) {
    ExtFrac rho_ = c.r - kThird - ExtFrac(frac(2, 3)) * c.s;
    Family F = [=](const ExtFrac& t) {
      return make_fact(-kSixth + ExtFrac(frac(2, 3)) * t + rho_, kHalf + e, kHalf - t,
                       kSixth + t * kThird - ExtFrac(2) * e, -kHalf - t, -kThird + t * kThird - e);
    };
    auto bie8 = [](const Fact& f) { return apply_bie(8, f); };
    d = family_route(F, c.s, kHalf, kOne, leibniz_split(F(kHalf), 2, delta(), bie8),
                     by(Theorem::Wave, F(kOne)),
                     "bilinear interpolation in s between s = 1/2 and s = 1, theta = 2s - 1");
  } else {
    d = by(Theorem::Wave, E);
  }
  return then_dualize(1, std::move(d));
}

MaybeProof route_jp3(const Ctx&, const Fact& req) {
  // H^{1/2+s,σ}·H^{r−1/2,ρ} ↪ H^{−1+s+σ+ε,0}. In the exterior strip (σ = 3/4)
  // the sum condition s2+s3 = r−s−1/4−ε ≥ 0 fails for r close to s.
  return then_dualize(2, by(Theorem::Sobolev, dualize(req, 2)));
}

// ---- J− ----------------------------------------------------------------------

MaybeProof route_jm1(const Ctx& c, const Fact& req) {
  Region p = parameter_region(c.label);
  if (p == Region::R1 || p == Region::R2 || p == Region::R3) return apply_bie(9, req);
  return by(Theorem::Wave, req);
}

MaybeProof route_jm2(const Ctx& c, const Fact& req) {
  Fact q = req;
  q.left.b = kZero;  // give up <Θ>^{σ−1/2}
  Fact E = dualize(q, 1);  // H^{r,ρ}·H^{1/2,1−σ−ε} ↪ L²
  const ExtFrac e = eps();
  const ExtFrac lo = delta(), hi = kHalf - delta();
  const char* cite = "bilinear interpolation in s between s = delta and s = 1/2 - delta";
  MaybeProof d;
  if (c.label == Region::R1 || c.label == Region::AD) {
    ExtFrac rho_ = c.r - kHalf - c.s * kThird;
    Family F = [=](const ExtFrac& t) {
      return make_fact(kHalf + t * kThird + rho_, kHalf + e, kHalf, kHalf - t * kThird - e, 0, 0);
    };
    d = family_route(F, c.s, lo, hi, apply_bie(6, F(lo)), apply_bie(7, F(hi)), cite);
  } else if (c.label == Region::R2) {
    ExtFrac rho_ = c.r - kHalf - c.s;
    Family F = [=](const ExtFrac& t) {
      return make_fact(kHalf + t + rho_, kHalf + e, kHalf, kHalf - t - e, 0, 0);
    };
    d = family_route(F, c.s, lo, hi, apply_bie(6, F(lo)), by(Theorem::Wave, F(hi)), cite);
  } else if (in_r3_family(c.label)) {
    d = apply_bie(7, E);
  } else {
    d = by(Theorem::Wave, E);
  }
  return then_weaken(req, then_dualize(1, std::move(d)), "give up <Theta>^{sigma-1/2}");
}

MaybeProof route_jm3(const Ctx&, const Fact& req) {
  return then_dualize(2, by(Theorem::Sobolev, dualize(req, 2)));
}

}  // namespace

const char* to_string(CaseId c) {
  switch (c) {
    case CaseId::Ip1: return "I+1";
    case CaseId::Ip2: return "I+2";
    case CaseId::Ip3: return "I+3";
    case CaseId::Im1: return "I-1";
    case CaseId::Im2: return "I-2";
    case CaseId::Im3: return "I-3";
    case CaseId::Jp1: return "J+1";
    case CaseId::Jp2: return "J+2";
    case CaseId::Jp3: return "J+3";
    case CaseId::Jm1: return "J-1";
    case CaseId::Jm2: return "J-2";
    case CaseId::Jm3: return "J-3";
  }
  return "?";
}

CaseId parse_case(const std::string& name) {
  std::string n = name;
  for (const std::string minus : {"−", "–"})
    for (size_t p; (p = n.find(minus)) != std::string::npos;) n.replace(p, minus.size(), "-");
  for (int k = 0; k <= static_cast<int>(CaseId::Jm3); ++k)
    if (n == to_string(static_cast<CaseId>(k))) return static_cast<CaseId>(k);
  throw std::invalid_argument("unknown case id: " + name);
}

const std::vector<CaseId>& audited_cases() {
  static const std::vector<CaseId> v = {CaseId::Ip1, CaseId::Ip2, CaseId::Ip3, CaseId::Im1,
                                        CaseId::Im2, CaseId::Jp1, CaseId::Jp2, CaseId::Jp3,
                                        CaseId::Jm1, CaseId::Jm2, CaseId::Jm3};
  return v;
}

Fact required_embedding(CaseId c, const ExtReal& s_, const ExtReal& r_, const ExtReal& sigma_,
                        const ExtReal& rho_) {
  const ExtFrac s(s_), r(r_), sg(sigma_), rho(rho_), e = eps();
  const ExtFrac two(2), three(3);
  switch (c) {
    case CaseId::Ip1: return make_fact(kOne + s - r, sg, s + kHalf - two * e, sg, 0, 0);
    case CaseId::Ip2: return make_fact(kOne + s - r, 0, kHalf + s - three * e, sg, 0, -rho);
    case CaseId::Ip3: return make_fact(kOne + s - r, sg, kHalf + s - three * e, sg - kHalf, 0, -rho);
    case CaseId::Im1: return make_fact(0, sg, kHalf + two * s - two * e, sg, r - kOne, 0);
    case CaseId::Im2:
    case CaseId::Im3: return make_fact(0, 0, kHalf + two * s - three * e, sg, r - kOne, -rho);
    case CaseId::Jp1: return make_fact(kHalf + s, sg, kHalf - s, kOne - sg - e, kHalf - r, 0);
    case CaseId::Jp2: return make_fact(kHalf + s, sg - kHalf, kHalf - s, kOne - sg - e, kHalf - r, -rho);
    case CaseId::Jp3: return make_fact(kHalf + s, sg, kOne - s - sg - e, 0, kHalf - r, -rho);
    case CaseId::Jm1: return make_fact(kHalf, sg, 0, kOne - sg - e, -r, 0);
    case CaseId::Jm2: return make_fact(0, sg - kHalf, kHalf, kOne - sg - e, -r, -rho);
    case CaseId::Jm3: return make_fact(kOne - sg - e, sg, 0, 0, -r, -rho);
  }
  throw std::invalid_argument("unknown case");
}

nlohmann::json AuditReport::to_json() const {
  nlohmann::json j;
  j["case"] = to_string(case_id);
  j["s"] = s.str();
  j["r"] = r.str();
  j["region"] = to_string(region);
  j["sigma"] = sigma.str();
  j["rho"] = rho.str();
  j["required"] = required.str();
  j["verdict"] = proven ? "proven" : "failed";
  if (!note.empty()) j["note"] = note;
  j["derivation"] = derivation ? derivation->to_json() : nlohmann::json(nullptr);
  return j;
}

AuditReport audit_case(CaseId id, const ExtReal& s, const ExtReal& r) {
  RegionVerdict v = evaluate_region(s, r);
  if (!v.admissible)
    throw std::invalid_argument("inadmissible (s, r) = (" + s.str() + ", " + r.str() + ")");
  AuditReport rep;
  rep.case_id = id;
  rep.s = s;
  rep.r = r;
  rep.sigma = v.sigma;
  rep.rho = v.rho;
  rep.region = v.label;
  rep.required = required_embedding(id, s, r, v.sigma, v.rho);
  Ctx c{s, r, v.sigma, v.rho, v.label};
  MaybeProof d;
  switch (id) {
    case CaseId::Ip1:
    case CaseId::Ip2: d = by(Theorem::Sobolev, rep.required); break;
    case CaseId::Ip3: d = route_ip3(c, rep.required); break;
    case CaseId::Im1: d = route_im1(c, rep.required); break;
    case CaseId::Im2: d = route_im2(c, rep.required); break;
    case CaseId::Im3: {
      MaybeProof inner = route_im2(c, rep.required);
      if (inner) {
        Derivation sym;
        sym.rule = Rule::Symmetry;
        sym.fact = rep.required;
        sym.citation = "I-3 is symmetric to I-2";
        sym.children.push_back(std::move(*inner));
        d = std::move(sym);
      }
      break;
    }
    case CaseId::Jp1: d = route_jp1(c, rep.required); break;
    case CaseId::Jp2: d = route_jp2(c, rep.required); break;
    case CaseId::Jp3: d = route_jp3(c, rep.required); break;
    case CaseId::Jm1: d = route_jm1(c, rep.required); break;
    case CaseId::Jm2: d = route_jm2(c, rep.required); break;
    case CaseId::Jm3: d = route_jm3(c, rep.required); break;
  }
  if (!d) {
    rep.note = "cited route does not close for region " + std::string(to_string(v.label));
  } else if (d->fact != rep.required) {
    rep.note = "route proves a different embedding: " + d->fact.str();
  } else {
    std::string why;
    rep.proven = verify(*d, &why);
    if (!rep.proven) rep.note = why;
  }
  rep.derivation = std::move(d);
  return rep;
}

std::vector<GridPoint> audit_grid(size_t min_points) {
  for (long m = 7;; m += 2) {
    std::vector<GridPoint> pts;
    const long n = m + 1;  // s-steps per band
    const long k = 4;      // interior r-samples per s
    auto band = [&](const Rational& s, const Rational& lo, const Rational& hi, bool with_ends) {
      for (long j = with_ends ? 0 : 1; j <= (with_ends ? k + 1 : k); ++j)
        pts.push_back({s, lo + (hi - lo) * frac(j, k + 1)});
    };
    for (long i = 1; i < n; ++i) {
      Rational s = frac(i, 2 * n);  // 0 < s < 1/2
      band(s, frac(1, 2) + s / 3, frac(1, 2) + s, false);      // R1
      pts.push_back({s, frac(1, 2) + s});                       // AD
      band(s, frac(1, 2) + s, frac(1, 2) + 2 * s, false);       // R2
      Rational t = frac(1, 2) + s;                              // 1/2 < t < 1
      band(t, frac(1, 3) + 2 * t / 3, frac(1, 2) + t, false);   // R3
      pts.push_back({t, frac(1, 2) + t});                       // DF
      band(t, frac(1, 2) + t, 1 + t, false);                    // R4
      pts.push_back({t, 1 + t});                                // BG
    }
    for (long j = 1; j <= k + 1; ++j) {
      pts.push_back({frac(1, 2), frac(2, 3) + frac(j, 3 * (k + 2))});  // CD
      pts.push_back({frac(1, 2), 1 + frac(j, 2 * (k + 2))});         // BD
      pts.push_back({1, 1 + frac(j, 2 * (k + 2))});                  // FE
      pts.push_back({1, frac(3, 2) + frac(j, 2 * (k + 2))});         // GF
    }
    pts.push_back({frac(1, 2), 1});     // D
    pts.push_back({1, frac(3, 2)});     // F
    pts.push_back({1, 2});              // G
    for (Rational s : {frac(9, 8), frac(5, 4), frac(3, 2), frac(2), frac(3)})
      for (long j = 0; j <= 8; ++j) pts.push_back({s, s + frac(j, 8)});  // exterior strip
    if (pts.size() >= min_points) return pts;
  }
}

}  // namespace dkg
