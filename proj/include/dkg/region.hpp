#pragma once

#include "dkg/exact.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dkg {

enum class Region {
  R1, R2, R3, R4, BD, AD, CD, DF, FE, BG, GF, D, F, G, Exterior, Inadmissible
};

const char* to_string(Region r);
Region parse_region(const std::string& name);

// Which row of the σ-table (and which audit route) a label belongs to:
// AD → R1; CD, DF, FE, D, F → R3; BG, GF, G → R4.
Region parameter_region(Region r);

struct Vertex {
  char name;
  Rational s, r;
};
const std::vector<Vertex>& vertex_table();

struct RegionVerdict {
  bool admissible = false;
  std::vector<std::string> failing_constraints;
  Region label = Region::Inadmissible;
  ExtReal sigma, rho;
};

// s and r may carry infinitesimal parts (e.g. r = 1/2 + s/3 + ϱ).
RegionVerdict admissible(const ExtReal& s, const ExtReal& r);
Region classify(const ExtReal& s, const ExtReal& r);
// Throws std::invalid_argument on inadmissible input.
std::pair<ExtReal, ExtReal> choose_parameters(const ExtReal& s, const ExtReal& r);
// Full verdict: admissibility, label and (σ, ρ) when admissible.
RegionVerdict evaluate_region(const ExtReal& s, const ExtReal& r);

struct ExponentTuple {
  ExtReal a1, a2, a3, alpha1, alpha2, alpha3;
};

// Indices (1..6) of the violated conditions among cond1–cond6.
std::vector<int> necessary_conditions(const ExponentTuple& e);
std::string condition_text(int k);

// Instantiations of the 4-spinor estimate used for the necessity argument.
ExponentTuple kg_instantiation(const ExtReal& s, const ExtReal& r, const ExtReal& sigma,
                               const ExtReal& rho);
ExponentTuple diracd_instantiation(const ExtReal& s, const ExtReal& r, const ExtReal& sigma,
                                   const ExtReal& rho);

// Region polygons as CSV rows "region,index,s,r"; the exterior is clipped at s_max.
std::string region_polygons_csv(const Rational& s_max = 2);

}  // namespace dkg
