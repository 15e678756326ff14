#include "dkg/region.hpp"

#include <sstream>
#include <stdexcept>

namespace dkg {

namespace {

const Rational half = frac(1, 2);
const Rational third = frac(1, 3);

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    case Region::R4: return "R4";
    case Region::BD: return "BD";
    case Region::AD: return "AD";
    case Region::CD: return "CD";
    case Region::DF: return "DF";
    case Region::FE: return "FE";
    case Region::BG: return "BG";
    case Region::GF: return "GF";
    case Region::D: return "D";
    case Region::F: return "F";
    case Region::G: return "G";
    case Region::Exterior: return "Exterior";
    case Region::Inadmissible: return "Inadmissible";
  }
  return "?";
}

Region parse_region(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(Region::Inadmissible); ++k)
    if (name == to_string(static_cast<Region>(k))) return static_cast<Region>(k);
  throw std::invalid_argument("unknown region: " + name);
}

Region parameter_region(Region r) {
  switch (r) {
    case Region::AD: return Region::R1;
    case Region::CD:
    case Region::DF:
    case Region::FE:
    case Region::D:
    case Region::F: return Region::R3;
    case Region::BG:
    case Region::GF:
    case Region::G: return Region::R4;
    default: return r;
  }
}

const std::vector<Vertex>& vertex_table() {
  static const std::vector<Vertex> v = {
      {'A', 0, half},          {'B', half, frac(3, 2)}, {'C', half, frac(2, 3)},
      {'D', half, 1},          {'E', 1, 1},             {'F', 1, frac(3, 2)},
      {'G', 1, 2},
  };
  return v;
}

RegionVerdict admissible(const ExtReal& s, const ExtReal& r) {
  RegionVerdict v;
  const ExtReal one(1);
  bool edge_upper = r == s + one && s > ExtReal(half);
  bool edge_lower = r == s && s > one;
  auto need = [&](bool ok, const char* name) {
    if (!ok) v.failing_constraints.emplace_back(name);
  };
  need(s > ExtReal(0), "s > 0");
  need(r > ExtReal(half) + s * third, "r > 1/2 + s/3");
  need(r > ExtReal(third) + s * frac(2, 3), "r > 1/3 + 2s/3");
  need(r > s || edge_lower, "r > s");
  need(r < ExtReal(half) + s * Rational(2), "r < 1/2 + 2s");
  need(r < s + one || edge_upper, "r < 1 + s");
  v.admissible = v.failing_constraints.empty();
  // r = 1+s at s > 1/2 and r = s at s > 1 satisfy every other bound, so the
  // allowances only ever lift the edge constraint.
  return v;
}

Region classify(const ExtReal& s, const ExtReal& r) {
  if (!admissible(s, r).admissible) return Region::Inadmissible;
  const ExtReal h(half), one(1);
  const ExtReal scaling = h + s;  // r = 1/2 + s
  if (s > one) return Region::Exterior;
  if (s == one) {
    if (r < ExtReal(frac(3, 2))) return Region::FE;
    if (r == ExtReal(frac(3, 2))) return Region::F;
    if (r < ExtReal(2)) return Region::GF;
    return Region::G;
  }
  if (s > h) {
    if (r < scaling) return Region::R3;
    if (r == scaling) return Region::DF;
    if (r < s + one) return Region::R4;
    return Region::BG;
  }
  if (s == h) {
    if (r < one) return Region::CD;
    if (r == one) return Region::D;
    return Region::BD;
  }
  if (r < scaling) return Region::R1;
  if (r == scaling) return Region::AD;
  return Region::R2;
}

std::pair<ExtReal, ExtReal> choose_parameters(const ExtReal& s, const ExtReal& r) {
  Region label = classify(s, r);
  if (label == Region::Inadmissible)
    throw std::invalid_argument("inadmissible (s, r) = (" + s.str() + ", " + r.str() + ")");
  const ExtReal eps = ExtReal::eps();
  ExtReal rho = ExtReal(half) + eps;
  switch (parameter_region(label)) {
    case Region::R1: return {ExtReal(half) + s * third, rho};
    case Region::R2: return {ExtReal(half) + s, rho};
    case Region::R3: return {ExtReal(frac(5, 6)) - s * third + eps, rho};
    case Region::R4: return {ExtReal(frac(3, 2)) - s + eps * Rational(4), rho};
    case Region::BD: return {ExtReal(1) - eps, rho};
    default: return {ExtReal(frac(3, 4)), rho};
  }
}

RegionVerdict evaluate_region(const ExtReal& s, const ExtReal& r) {
  RegionVerdict v = admissible(s, r);
  v.label = classify(s, r);
  if (v.admissible) std::tie(v.sigma, v.rho) = choose_parameters(s, r);
  return v;
}

std::vector<int> necessary_conditions(const ExponentTuple& e) {
  const ExtReal h(half), tq(frac(3, 4)), zero(0);
  std::vector<int> bad;
  if (!(e.a1 + e.a2 + e.a3 >= h)) bad.push_back(1);
  if (!((e.a1 + e.alpha1) * half + e.a2 + e.a3 >= tq)) bad.push_back(2);
  if (!(e.a1 + (e.a2 + e.alpha2) * half + e.a3 >= tq)) bad.push_back(3);
  if (!(e.a1 + e.a3 >= zero)) bad.push_back(4);
  if (!(e.a2 + e.a3 >= zero)) bad.push_back(5);
  if (!(e.a1 + e.a2 + e.alpha3 >= zero)) bad.push_back(6);
  return bad;
}

std::string condition_text(int k) {
  switch (k) {
    case 1: return "a1+a2+a3 >= 1/2";
    case 2: return "(a1+alpha1)/2+a2+a3 >= 3/4";
    case 3: return "a1+(a2+alpha2)/2+a3 >= 3/4";
    case 4: return "a1+a3 >= 0";
    case 5: return "a2+a3 >= 0";
    case 6: return "a1+a2+alpha3 >= 0";
  }
  throw std::invalid_argument("condition index out of range");
}

ExponentTuple kg_instantiation(const ExtReal& s, const ExtReal& r, const ExtReal& sigma,
                               const ExtReal& rho) {
  return {s, s, ExtReal(1) - r, sigma, sigma, ExtReal(1) - rho - ExtReal::eps()};
}

ExponentTuple diracd_instantiation(const ExtReal& s, const ExtReal& r, const ExtReal& sigma,
                                   const ExtReal& rho) {
  return {s, -s, r, sigma, ExtReal(1) - sigma - ExtReal::eps(), rho};
}

std::string region_polygons_csv(const Rational& s_max) {
  std::ostringstream os;
  os << "region,index,s,r\n";
  auto poly = [&](const char* name, std::initializer_list<std::pair<Rational, Rational>> pts) {
    int k = 0;
    for (const auto& [s, r] : pts) os << name << ',' << k++ << ',' << s.get_d() << ',' << r.get_d() << '\n';
  };
  poly("R1", {{0, half}, {half, frac(2, 3)}, {half, 1}});
  poly("R2", {{0, half}, {half, frac(3, 2)}, {half, 1}});
  poly("R3", {{half, frac(2, 3)}, {1, 1}, {1, frac(3, 2)}, {half, 1}});
  poly("R4", {{half, 1}, {1, frac(3, 2)}, {1, 2}, {half, frac(3, 2)}});
  Rational top = s_max + 1;
  poly("Exterior", {{1, 1}, {s_max, s_max}, {s_max, top}, {1, 2}});
  return os.str();
}

}  // namespace dkg
