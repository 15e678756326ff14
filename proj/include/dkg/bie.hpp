#pragma once

#include "dkg/embedding.hpp"

#include <map>
#include <optional>
#include <string>

namespace dkg {

// Estimates bie1..bie9; bie1e (the endpoint variant of bie1) has index 10.
constexpr int kBie1e = 10;
std::string bie_name(int k);

using BieParams = std::map<std::string, ExtFrac>;

// Free exponents of the k-th estimate; "d" is the 1/2+ slot (default 1/2+ε),
// "e" the schematic positive exponent of bie8 (default ε).
std::vector<std::string> bie_parameters(int k);
Fact bie_conclusion(int k, const BieParams& p);
bool bie_table(int k, const BieParams& p);
std::string bie_table_text(int k);

struct BieResult {
  bool holds = false;      // the condition table
  bool derived = false;    // a verified derivation was constructed
  std::optional<Derivation> derivation;
  std::optional<ThetaInterval> window;
  std::string note;
};

// Proof slack ε' used inside the interpolation pairs (default ε², which sits
// below every linear margin the audit produces).
ExtFrac default_slack();

BieResult derive_bie(int k, BieParams params, const ExtFrac& slack = default_slack());

// Endpoint pair used for the k-th estimate, each proven by a base theorem.
std::pair<Derivation, Derivation> bie_pair(int k, const BieParams& p, const ExtFrac& slack);

// Matches `query` against the k-th estimate (directly or with the factors
// swapped, weakening the fixed slots) and returns a verified derivation.
std::optional<Derivation> apply_bie(int k, const Fact& query, const ExtFrac& slack = default_slack());

// The bie9 chain's inner step: H^{1/2,d}·H^{0,1/2+ε'} ↪ H^{−(1/2+ε'),0} from
// its two theorem endpoints; returns the exact θ-window.
std::optional<ThetaInterval> bie9_inner_window(const ExtFrac& slack, const ExtFrac& d);

// Interpolation step in the Case-2 argument of the Sobolev product law:
// H^{0,d}·H^{1+ε,d}↪L² and H^{0,d}·H^{1/2+ε,d}↪H^{−1/2,0} give
// H^{0,d}·H^{1+ε−s3,d}↪H^{−s3,0}; returns the exact θ-window.
std::optional<ThetaInterval> sobolev_case2_window(const ExtFrac& s3);

}  // namespace dkg
