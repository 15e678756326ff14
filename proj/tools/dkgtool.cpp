// dkgtool — command-line front end for the dkg library.
//
// Every subcommand writes its outputs plus <subcommand>.manifest.json into
// --out-dir. Exit codes: 0 success, 1 validation failure (bad input, unproven
// case, violated check), 2 numerical abort.

#include "dkg/audit.hpp"
#include "dkg/config.hpp"
#include "dkg/counterexamples.hpp"
#include "dkg/nullform.hpp"
#include "dkg/region.hpp"
#include "dkg/solver.hpp"
#include "dkg/spacetime.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef DKG_VERSION
#define DKG_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dkg;

namespace {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "1/2+eps", "0.25", "1/3 - 2rho", "1/2+ε".
ExtReal parse_ext(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValidationError("empty exponent");
  std::vector<std::string> terms;
  size_t start = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    const bool sign = s[i] == '+' || s[i] == '-';
    const bool exponent = (s[i - 1] == 'e' || s[i - 1] == 'E') && i >= 2 && std::isdigit(static_cast<unsigned char>(s[i - 2]));
    if (sign && !exponent) {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));

  static const std::vector<std::pair<std::string, int>> symbols = {
      {"epsilon", 3}, {"eps", 3}, {"ε", 3}, {"delta", 2}, {"δ", 2}, {"rho", 1}, {"ϱ", 1}, {"ρ", 1}};
  ExtReal out;
  for (std::string t : terms) {
    Rational sign = 1;
    if (t[0] == '+' || t[0] == '-') {
      if (t[0] == '-') sign = -1;
      t = t.substr(1);
    }
    int which = 0;
    for (const auto& [name, idx] : symbols)
      if (t.size() >= name.size() && t.compare(t.size() - name.size(), name.size(), name) == 0) {
        which = idx;
        t = t.substr(0, t.size() - name.size());
        if (!t.empty() && t.back() == '*') t.pop_back();
        break;
      }
    Rational coef;
    try {
      coef = t.empty() && which ? Rational(1) : parse_rational(t);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse exponent '" + text + "'");
    }
    coef *= sign;
    switch (which) {
      case 0: out += ExtReal(coef); break;
      case 1: out += ExtReal(0, coef, 0, 0); break;
      case 2: out += ExtReal(0, 0, coef, 0); break;
      default: out += ExtReal(0, 0, 0, coef); break;
    }
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

FamilyId family_from_cli(const std::string& name) {
  for (FamilyId f : all_families())
    if (lower(to_string(f)) == lower(name)) return f;
  try {
    return parse_family(name);
  } catch (const std::exception&) {
    throw ValidationError("unknown family '" + name + "'");
  }
}

// "64..4096" (powers of two), "64,128,256" or a single value.
std::vector<double> parse_Ls(const std::string& text) {
  std::vector<double> Ls;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const double lo = std::stod(text.substr(0, dots)), hi = std::stod(text.substr(dots + 2));
      if (!(lo >= 4) || !(hi >= lo)) throw ValidationError("bad L range '" + text + "'");
      for (double L = lo; L <= hi * (1 + 1e-12); L *= 2) Ls.push_back(L);
    } else {
      std::stringstream in(text);
      std::string item;
      while (std::getline(in, item, ',')) Ls.push_back(std::stod(item));
    }
  } catch (const std::logic_error&) {
    throw ValidationError("bad L list '" + text + "'");
  }
  for (double L : Ls)
    if (!(L >= 4)) throw ValidationError("L must be >= 4");
  return Ls;
}

class Run {
 public:
  Run(std::string sub, fs::path dir) : sub_(std::move(sub)), dir_(std::move(dir)) {
    fs::create_directories(dir_);
    manifest_ = {{"subcommand", sub_}, {"version", DKG_VERSION}, {"config", json::object()},
                 {"seeds", json::array()}, {"outputs", json::array()}, {"anchors", json::array()}};
  }
  json& config() { return manifest_["config"]; }
  void seed(uint64_t s) { manifest_["seeds"].push_back(s); }
  void anchor(const std::string& a) {
    auto& arr = manifest_["anchors"];
    if (std::find(arr.begin(), arr.end(), a) == arr.end()) arr.push_back(a);
  }
  void note(const std::string& key, json v) { manifest_[key] = std::move(v); }
  fs::path write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + p.string());
    manifest_["outputs"].push_back(p.string());
    return p;
  }
  void output(const fs::path& p) { manifest_["outputs"].push_back(p.string()); }
  ~Run() {
    std::ofstream out(dir_ / (sub_ + ".manifest.json"));
    out << manifest_.dump(2) << "\n";
  }

 private:
  std::string sub_;
  fs::path dir_;
  json manifest_;
};

// ---- subcommands ---------------------------------------------------------------

struct RegionArgs {
  std::string s, r;
  bool polygons = false;
  std::string s_max = "2";
};

int cmd_region(const RegionArgs& a, const fs::path& dir) {
  Run run("region", dir);
  run.config() = {{"s", a.s}, {"r", a.r}, {"polygons", a.polygons}, {"s_max", a.s_max}};
  int code = 0;
  if (!a.s.empty() || !a.r.empty()) {
    if (a.s.empty() || a.r.empty()) throw ValidationError("--s and --r must be given together");
    const ExtReal s = parse_ext(a.s), r = parse_ext(a.r);
    const RegionVerdict v = evaluate_region(s, r);
    json out = {{"s", s.str()}, {"r", r.str()}, {"admissible", v.admissible},
                {"region", to_string(v.label)}, {"failing_constraints", v.failing_constraints}};
    if (v.admissible) {
      out["sigma"] = v.sigma.str();
      out["rho"] = v.rho.str();
      std::cout << "region " << to_string(v.label) << "  sigma = " << v.sigma.str() << "  rho = " << v.rho.str()
                << "\n";
    } else {
      std::cerr << "inadmissible (s, r):";
      for (const auto& c : v.failing_constraints) std::cerr << " [" << c << "]";
      std::cerr << "\n";
      code = 1;
    }
    run.anchor(to_string(v.label));
    run.write("region.json", out.dump(2) + "\n");
  }
  if (a.polygons) {
    const auto p = run.write("region_polygons.csv", region_polygons_csv(parse_ext(a.s_max).q()));
    std::cout << "polygons -> " << p.string() << "\n";
  }
  return code;
}

struct AuditArgs {
  std::string case_name, s, r;
  bool all = false;
  size_t grid = 200;
};

int cmd_audit(const AuditArgs& a, const fs::path& dir) {
  Run run("audit", dir);
  run.config() = {{"case", a.case_name}, {"s", a.s}, {"r", a.r}, {"all", a.all}, {"grid", a.grid}};
  json reports = json::array();
  size_t proven = 0, total = 0;
  auto one = [&](CaseId c, const ExtReal& s, const ExtReal& r) {
    AuditReport rep = audit_case(c, s, r);
    ++total;
    proven += rep.proven;
    run.anchor(to_string(c));
    if (!rep.proven)
      std::cerr << to_string(c) << " at (s, r) = (" << s.str() << ", " << r.str() << "): " << rep.note << "\n";
    reports.push_back(rep.to_json());
  };
  if (a.all) {
    const auto cases = a.case_name.empty() ? audited_cases() : std::vector<CaseId>{parse_case(a.case_name)};
    for (const GridPoint& p : audit_grid(a.grid))
      for (CaseId c : cases) one(c, p.s, p.r);
  } else {
    if (a.case_name.empty() || a.s.empty() || a.r.empty())
      throw ValidationError("audit needs --all or all of --case, --s, --r");
    const ExtReal s = parse_ext(a.s), r = parse_ext(a.r);
    if (!evaluate_region(s, r).admissible) throw ValidationError("(s, r) is not admissible");
    CaseId c;
    try {
      c = parse_case(a.case_name);
    } catch (const std::exception&) {
      throw ValidationError("unknown case '" + a.case_name + "'");
    }
    one(c, s, r);
  }
  run.write("audit.json", reports.dump(2) + "\n");
  std::cout << proven << "/" << total << " proven\n";
  return proven == total ? 0 : 1;
}

struct NullformArgs {
  size_t samples = 1000000, comparability = 100000, symbol = 100000;
  uint64_t seed = 1;
};

int cmd_nullform(const NullformArgs& a, const fs::path& dir) {
  Run run("nullform", dir);
  run.config() = {{"samples", a.samples}, {"comparability_samples", a.comparability},
                  {"symbol_samples", a.symbol}, {"seed", a.seed}};
  run.seed(a.seed);
  for (const char* an : {"kappa-bounds", "theta-comparability", "null-symbol"}) run.anchor(an);
  const BoundReport b = check_exact_bounds(a.samples, a.seed);
  const auto r = check_comparability(a.comparability, a.seed);
  const SymbolReport s = check_null_symbol_bound(a.symbol, a.seed);
  run.write("nullform.csv", to_csv(b, r, s, a.seed));
  bool ok = b.violations == 0 && s.constant <= 4;
  std::cout << "bounds: " << b.violations << " violations / " << b.samples << "\n";
  for (const auto& st : r) {
    std::cout << st.relation << ": [" << st.min << ", " << st.max << "]\n";
    ok = ok && st.in_bracket();
  }
  std::cout << "null symbol constant: " << s.constant << "\n";
  return ok ? 0 : 1;
}

struct CexArgs {
  std::vector<std::string> families;
  std::string Ls = "64..4096";
  std::map<std::string, std::string> exps;
  size_t mc = 0;
  uint64_t seed = 1;
};

int cmd_cex(const CexArgs& a, const fs::path& dir) {
  Run run("cex", dir);
  std::vector<FamilyId> fams;
  for (const auto& n : a.families) fams.push_back(family_from_cli(n));
  if (fams.empty()) fams = all_families();
  const auto Ls = parse_Ls(a.Ls);
  if (Ls.size() < 3) throw ValidationError("a fit needs at least 3 values of L");

  json exps = json::object();
  std::optional<ExponentTuple> custom;
  for (const auto& [k, v] : a.exps)
    if (!v.empty()) {
      if (!custom) custom = ExponentTuple{};
      exps[k] = v;
      const ExtReal x = parse_ext(v);
      if (k == "a1") custom->a1 = x;
      else if (k == "a2") custom->a2 = x;
      else if (k == "a3") custom->a3 = x;
      else if (k == "alpha1") custom->alpha1 = x;
      else if (k == "alpha2") custom->alpha2 = x;
      else custom->alpha3 = x;
    }
  json fam_names = json::array();
  for (FamilyId f : fams) fam_names.push_back(to_string(f));
  run.config() = {{"families", fam_names}, {"Ls", Ls}, {"exponents", exps}, {"mc_samples", a.mc}};
  if (a.mc) {
    run.config()["seed"] = a.seed;
    run.seed(a.seed);
  }

  std::ostringstream csv;
  csv.precision(10);
  csv << "family,a1,a2,a3,alpha1,alpha2,alpha3,L,ratio,fitted_delta,predicted_delta";
  if (a.mc) csv << ",mc_ratio,mc_rel_diff";
  csv << "\n";
  bool ok = true;
  for (FamilyId f : fams) {
    run.anchor(to_string(f));
    const auto tuples = custom ? std::vector<ExponentTuple>{*custom} : standard_tuples(f);
    for (const auto& e : tuples) {
      std::vector<double> x, y, r;
      for (double L : Ls) {
        r.push_back(ratio(f, e, L));
        x.push_back(std::log(L));
        y.push_back(std::log(r.back()));
      }
      const double fitted = -fit_slope(x, y), predicted = to_double(predicted_delta(f, e));
      ok = ok && std::abs(fitted - predicted) <= 0.05;
      std::cout << to_string(f) << " (" << e.a1.str() << ", " << e.a2.str() << ", " << e.a3.str() << ", "
                << e.alpha1.str() << ", " << e.alpha2.str() << ", " << e.alpha3.str() << "): fitted "
                << fitted << ", predicted " << predicted << "\n";
      for (size_t i = 0; i < Ls.size(); ++i) {
        csv << to_string(f) << "," << e.a1.str() << "," << e.a2.str() << "," << e.a3.str() << ","
            << e.alpha1.str() << "," << e.alpha2.str() << "," << e.alpha3.str() << "," << Ls[i] << "," << r[i]
            << "," << fitted << "," << predicted;
        if (a.mc) {
          const double m = ratio_monte_carlo(f, e, Ls[i], a.mc, a.seed);
          csv << "," << m << "," << std::abs(m - r[i]) / r[i];
        }
        csv << "\n";
      }
    }
  }
  run.write("cex.csv", csv.str());
  return ok ? 0 : 1;
}

struct SolveArgs {
  std::string config;
  bool snapshot = false;
};

int cmd_solve(const SolveArgs& a, const fs::path& dir) {
  Run run("solve", dir);
  SolverConfig cfg;
  try {
    cfg = load_solver_config(a.config);
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
  run.config() = to_json(cfg);
  run.seed(cfg.seed);
  run.anchor(cfg.coupled ? "coupled-DKG" : "free-flow");
  run.note("domain", "periodic torus [0, box)^3 (analysis is posed on R^3)");
  Solver solver(cfg);
  State st = solver.initial();
  const Diagnostics d = solver.run(st);  // SolverAbort propagates → exit 2
  run.write("solve.csv", d.csv());
  if (a.snapshot) {
    const fs::path p = dir / "solve_final.dkgf";
    write_snapshot(p.string(), solver, st);
    run.output(p);
  }
  run.note("charge_drift", d.charge_drift());
  std::cout << "t = " << st.t << "  charge drift = " << d.charge_drift() << "\n";
  return 0;
}

struct IdentityArgs {
  size_t directions = 1000;
  uint64_t seed = 1;
  double tol = 1e-12;
};

int cmd_identities(const IdentityArgs& a, const fs::path& dir) {
  Run run("identities", dir);
  run.config() = {{"directions", a.directions}, {"seed", a.seed}, {"tolerance", a.tol}};
  run.seed(a.seed);
  run.anchor("dirac-identities");
  std::ostringstream csv;
  csv.precision(6);
  csv << "relation,max_residual,pass\n";
  bool ok = true;
  for (const auto& r : identity_battery(a.directions, a.seed)) {
    const bool pass = r.max_residual < a.tol;
    ok = ok && pass;
    csv << '"' << r.relation << "\"," << r.max_residual << "," << (pass ? 1 : 0) << "\n";
    std::cout << (pass ? "ok   " : "FAIL ") << r.relation << "  " << r.max_residual << "\n";
  }
  run.write("identities.csv", csv.str());
  return ok ? 0 : 1;
}

struct NormsArgs {
  std::string input, make_random;
  int Nt = 16, N = 8;
  uint64_t seed = 1;
  std::string a = "0", b = "0", variant = "all", taper = "raised-cosine";
};

int cmd_norms(const NormsArgs& a, const fs::path& dir) {
  Run run("norms", dir);
  if (!a.make_random.empty()) {
    run.config() = {{"make_random", a.make_random}, {"Nt", a.Nt}, {"N", a.N}, {"seed", a.seed}};
    run.seed(a.seed);
    if (a.Nt < 4 || a.N < 4) throw ValidationError("--Nt and --N must be >= 4");
    write_spacetime(a.make_random, random_band_limited(a.Nt, a.N, a.seed));
    run.output(a.make_random);
    return 0;
  }
  if (a.input.empty()) throw ValidationError("norms needs --input (or --make-random)");
  Taper taper;
  if (a.taper == "none") taper = Taper::None;
  else if (a.taper == "raised-cosine") taper = Taper::RaisedCosine;
  else throw ValidationError("unknown taper '" + a.taper + "'");
  std::vector<NormVariant> vs;
  if (a.variant == "all") vs = {NormVariant::H, NormVariant::Xplus, NormVariant::Xminus};
  else if (a.variant == "H") vs = {NormVariant::H};
  else if (a.variant == "X+") vs = {NormVariant::Xplus};
  else if (a.variant == "X-") vs = {NormVariant::Xminus};
  else throw ValidationError("unknown variant '" + a.variant + "'");
  double av, bv;
  try {
    av = to_double(parse_rational(a.a));
    bv = to_double(parse_rational(a.b));
  } catch (const std::exception&) {
    throw ValidationError("--a and --b must be numbers");
  }
  run.config() = {{"input", a.input}, {"a", a.a}, {"b", a.b}, {"variant", a.variant}, {"taper", a.taper}};
  run.anchor("spacetime-norms");

  SpacetimeArray u;
  try {
    u = read_spacetime(a.input);
  } catch (const std::runtime_error& e) {
    throw ValidationError(e.what());
  }
  json out = {{"Nt", u.Nt}, {"N", u.N}, {"T", u.T}, {"box", u.box}, {"a", av}, {"b", bv},
              {"taper", taper_description(taper)}, {"direct_l2", direct_l2(u, taper)}, {"norms", json::object()}};
  for (NormVariant v : vs) {
    const double n = spacetime_norm(u, av, bv, v, taper);
    if (!std::isfinite(n)) throw SolverAbort("non-finite norm");
    out["norms"][to_string(v)] = n;
    std::cout << to_string(v) << "^{" << a.a << "," << a.b << "} = " << n << "\n";
  }
  run.write("norms.json", out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dkgtool: exact audits, frequency checks, counterexample scans and a spectral solver"};
  app.set_version_flag("--version", DKG_VERSION);
  app.require_subcommand(1);
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "directory for outputs and manifests");

  RegionArgs ra;
  auto* region = app.add_subcommand("region", "classify (s, r), choose sigma/rho, emit polygon CSV");
  region->add_option("--s", ra.s, "spinor regularity, e.g. 1/4 or 1/3+eps");
  region->add_option("--r", ra.r, "scalar regularity");
  region->add_flag("--polygons", ra.polygons, "write region_polygons.csv");
  region->add_option("--s-max", ra.s_max, "clip the exterior at this s");

  AuditArgs aa;
  auto* audit = app.add_subcommand("audit", "audit one case or the whole grid, JSON reports");
  audit->add_option("--case", aa.case_name, "I+1 ... J-3");
  audit->add_option("--s", aa.s);
  audit->add_option("--r", aa.r);
  audit->add_flag("--all", aa.all, "audit every case over the grid");
  audit->add_option("--grid", aa.grid, "minimum number of grid points")->check(CLI::PositiveNumber);

  NullformArgs na;
  auto* nullform = app.add_subcommand("nullform", "sampling checks of the frequency estimates, CSV");
  nullform->add_option("--samples", na.samples, "samples for the exact bounds");
  nullform->add_option("--comparability-samples", na.comparability);
  nullform->add_option("--symbol-samples", na.symbol);
  nullform->add_option("--seed", na.seed);

  CexArgs ca;
  auto* cex = app.add_subcommand("cex", "counterexample family scans and exponent fits, CSV");
  cex->add_option("--family", ca.families, "family name(s); default all")->delimiter(',');
  cex->add_option("--Ls", ca.Ls, "L values: 64..4096 (powers of two) or a comma list");
  for (const char* k : {"a1", "a2", "a3", "alpha1", "alpha2", "alpha3"})
    cex->add_option(std::string("--") + k, ca.exps[k], "exponent (replaces the standard tuples)");
  cex->add_option("--mc", ca.mc, "Monte Carlo cross-check with this many samples per L");
  cex->add_option("--seed", ca.seed, "Monte Carlo seed");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "run the spectral solver from a JSON config");
  solve->add_option("--config", sa.config, "JSON config file")->required();
  solve->add_flag("--snapshot", sa.snapshot, "write the final state as solve_final.dkgf");

  IdentityArgs ia;
  auto* ident = app.add_subcommand("identities", "Dirac algebra identity battery");
  ident->add_option("--directions", ia.directions);
  ident->add_option("--seed", ia.seed);
  ident->add_option("--tol", ia.tol);

  NormsArgs ma;
  auto* norms = app.add_subcommand("norms", "spacetime norms of a stored array");
  norms->add_option("--input", ma.input, "array written by --make-random or write_spacetime");
  norms->add_option("--a", ma.a);
  norms->add_option("--b", ma.b);
  norms->add_option("--variant", ma.variant, "H, X+, X- or all");
  norms->add_option("--taper", ma.taper, "raised-cosine or none");
  norms->add_option("--make-random", ma.make_random, "write a random band-limited array and exit");
  norms->add_option("--Nt", ma.Nt);
  norms->add_option("--N", ma.N);
  norms->add_option("--seed", ma.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const fs::path dir(out_dir);
  try {
    if (*region) return cmd_region(ra, dir);
    if (*audit) return cmd_audit(aa, dir);
    if (*nullform) return cmd_nullform(na, dir);
    if (*cex) return cmd_cex(ca, dir);
    if (*solve) return cmd_solve(sa, dir);
    if (*ident) return cmd_identities(ia, dir);
    if (*norms) return cmd_norms(ma, dir);
  } catch (const SolverAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
