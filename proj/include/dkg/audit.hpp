#pragma once

#include "dkg/bie.hpp"
#include "dkg/region.hpp"

#include <string>
#include <vector>

namespace dkg {

enum class CaseId { Ip1, Ip2, Ip3, Im1, Im2, Im3, Jp1, Jp2, Jp3, Jm1, Jm2, Jm3 };

const char* to_string(CaseId c);
// Accepts "I+1", "I-1" and the typographic minus "I−1".
CaseId parse_case(const std::string& name);
// The eleven independently audited cases (I−3 follows from I−2 by symmetry).
const std::vector<CaseId>& audited_cases();

// The embedding each case reduces to, with σ, ρ substituted.
Fact required_embedding(CaseId c, const ExtReal& s, const ExtReal& r, const ExtReal& sigma,
                        const ExtReal& rho);

struct AuditReport {
  CaseId case_id;
  ExtReal s, r, sigma, rho;
  Region region = Region::Inadmissible;
  Fact required;
  bool proven = false;
  std::optional<Derivation> derivation;
  std::string note;

  nlohmann::json to_json() const;
};

// Throws std::invalid_argument for inadmissible (s, r).
AuditReport audit_case(CaseId c, const ExtReal& s, const ExtReal& r);

struct GridPoint {
  Rational s, r;
};
// Deterministic rational points covering every label of the admissible set,
// at least `min_points` of them.
std::vector<GridPoint> audit_grid(size_t min_points = 200);

}  // namespace dkg
