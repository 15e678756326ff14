#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
};

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("dkgtool_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::string& args, const std::string& sub = "out") {
  const fs::path log = workdir() / "log.txt";
  const std::string cmd = std::string(DKGTOOL_PATH) + " --out-dir " + (workdir() / sub).string() + " " + args +
                          " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(Cli, RegionExample) {
  auto r = run("region --s 0.25 --r 0.8", "region");
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = read_json(workdir() / "region" / "region.json");
  EXPECT_EQ(j["region"], "R2");
  EXPECT_EQ(j["sigma"], "3/4");
  EXPECT_EQ(j["rho"], "1/2 + eps");
  auto m = read_json(workdir() / "region" / "region.manifest.json");
  EXPECT_EQ(m["subcommand"], "region");
  EXPECT_EQ(m["config"]["s"], "0.25");
  EXPECT_FALSE(m["version"].get<std::string>().empty());
}

TEST(Cli, RegionInadmissibleAndPolygons) {
  auto r = run("region --s 0.1 --r 0.5 --polygons", "region2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("1/2 + s/3"), std::string::npos);
  EXPECT_TRUE(fs::exists(workdir() / "region2" / "region_polygons.csv"));
}

TEST(Cli, AuditSingleCase) {
  auto r = run("audit --case I+1 --s 1/4 --r 4/5", "audit1");
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = read_json(workdir() / "audit1" / "audit.json");
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["verdict"], "proven");
  auto m = read_json(workdir() / "audit1" / "audit.manifest.json");
  EXPECT_EQ(m["anchors"][0], "I+1");
}

TEST(Cli, AuditGridReportsFailuresWithExitOne) {
  auto r = run("audit --all --grid 200", "auditall");
  auto j = read_json(workdir() / "auditall" / "audit.json");
  EXPECT_GE(j.size(), 200u * 11);
  size_t failed = 0;
  for (const auto& rep : j) failed += rep["verdict"] == "failed";
  EXPECT_EQ(r.code, failed ? 1 : 0);
}

TEST(Cli, AuditRejectsBadInput) {
  EXPECT_EQ(run("audit --case I+1 --s 0.1 --r 0.5").code, 1);
  EXPECT_EQ(run("audit --case X+9 --s 1/4 --r 4/5").code, 1);
  EXPECT_EQ(run("audit").code, 1);
}

TEST(Cli, CexExample) {
  auto r = run("cex --family hh-high --a3 0 --Ls 64..4096", "cex");
  EXPECT_EQ(r.code, 0) << r.out;
  const std::string csv = slurp(workdir() / "cex" / "cex.csv");
  std::stringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "family,a1,a2,a3,alpha1,alpha2,alpha3,L,ratio,fitted_delta,predicted_delta");
  int rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    const double fitted = std::stod(row.substr(0, row.rfind(',')).substr(row.substr(0, row.rfind(',')).rfind(',') + 1));
    EXPECT_NEAR(fitted, -0.5, 0.05);
  }
  EXPECT_EQ(rows, 7);
  EXPECT_EQ(read_json(workdir() / "cex" / "cex.manifest.json")["anchors"][0], "HH-high");
}

TEST(Cli, CexRejectsUnknownFamilyAndShortScan) {
  EXPECT_EQ(run("cex --family nope").code, 1);
  EXPECT_EQ(run("cex --family hh-high --Ls 64,128").code, 1);
}

TEST(Cli, SolveWritesDiagnosticsAndManifest) {
  write(workdir() / "ok.json", R"({"N": 8, "dt": 0.125, "T": 0.5, "seed": 4})");
  auto r = run("solve --config " + (workdir() / "ok.json").string() + " --snapshot", "solve");
  EXPECT_EQ(r.code, 0) << r.out;
  auto m = read_json(workdir() / "solve" / "solve.manifest.json");
  EXPECT_EQ(m["config"]["integrator"], "ifrk4");  // default echoed
  EXPECT_EQ(m["seeds"][0], 4);
  EXPECT_TRUE(fs::exists(workdir() / "solve" / "solve.csv"));
  EXPECT_TRUE(fs::exists(workdir() / "solve" / "solve_final.dkgf"));
}

TEST(Cli, SolveConfigErrorsNameTheKey) {
  write(workdir() / "neg.json", R"({"N": 8, "dt": -0.1})");
  auto r = run("solve --config " + (workdir() / "neg.json").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("'dt'"), std::string::npos) << r.out;
  write(workdir() / "mass.json", R"({"N": 8, "mass": 1})");
  r = run("solve --config " + (workdir() / "mass.json").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("'mass'"), std::string::npos) << r.out;
  write(workdir() / "broken.json", "{");
  EXPECT_EQ(run("solve --config " + (workdir() / "broken.json").string()).code, 1);
}

TEST(Cli, SolveAbortExitsTwo) {
  write(workdir() / "blow.json", R"({"N": 8, "dt": 0.5, "T": 40, "amplitude": 50})");
  EXPECT_EQ(run("solve --config " + (workdir() / "blow.json").string()).code, 2);
}

TEST(Cli, IdentitiesPass) {
  auto r = run("identities --directions 200", "ident");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(workdir() / "ident" / "identities.csv"));
}

TEST(Cli, NullformDeterministic) {
  const std::string args = "nullform --samples 20000 --comparability-samples 5000 --symbol-samples 2000 --seed 7";
  EXPECT_EQ(run(args, "nf1").code, 0);
  EXPECT_EQ(run(args, "nf2").code, 0);
  EXPECT_EQ(slurp(workdir() / "nf1" / "nullform.csv"), slurp(workdir() / "nf2" / "nullform.csv"));
  EXPECT_EQ(read_json(workdir() / "nf1" / "nullform.manifest.json")["seeds"][0], 7);
}

TEST(Cli, NormsOfStoredArray) {
  const std::string arr = (workdir() / "u.dkgs").string();
  EXPECT_EQ(run("norms --make-random " + arr + " --Nt 8 --N 8 --seed 2").code, 0);
  auto r = run("norms --input " + arr + " --a 0 --b 0 --taper none", "norms");
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = read_json(workdir() / "norms" / "norms.json");
  EXPECT_NEAR(j["norms"]["H"].get<double>() / j["direct_l2"].get<double>(), 1, 1e-10);
  EXPECT_EQ(run("norms --input /nonexistent.dkgs").code, 1);
  EXPECT_EQ(run("norms --input " + arr + " --variant Q").code, 1);
}

TEST(Cli, UnknownSubcommandFails) {
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("").code, 1);
}
