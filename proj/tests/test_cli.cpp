#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  json j() const { return json::parse(out); }
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(ABELCS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(ABELCS_DATA_DIR) + "/" + name; }

double entry(const json& m, std::size_t i, std::size_t j, std::size_t part) { return m[i][j][part].get<double>(); }

}  // namespace

TEST(CliMaslov, StandardTriple) {
  auto r = run("maslov " + data("maslov_standard.json"));
  ASSERT_EQ(r.code, 0);
  auto j = r.j();
  EXPECT_EQ(j["tau"], -1);
  EXPECT_EQ(j["gram"][0][1], "1/2");
}

TEST(CliMaslov, RepeatedTriple) {
  auto r = run("maslov " + data("maslov_repeated.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["tau"], 0);
}

TEST(CliMaslov, NotIsotropic) {
  std::string cmd = std::string(ABELCS_CLI_PATH) + " maslov " + data("maslov_not_isotropic.json") + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_TRUE(p);
  std::string out;
  char buf[512];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  EXPECT_EQ(WEXITSTATUS(status), 2);
  EXPECT_NE(out.find("not isotropic"), std::string::npos);
}

TEST(CliRep, TAndS) {
  auto t = run("rep -k 2 --word T");
  ASSERT_EQ(t.code, 0);
  auto m = t.j()["matrix"];
  EXPECT_EQ(entry(m, 0, 0, 0), 1.0);
  EXPECT_EQ(entry(m, 1, 1, 0), 0.0);
  EXPECT_EQ(entry(m, 1, 1, 1), 1.0);
  EXPECT_EQ(entry(m, 0, 1, 0), 0.0);

  auto s = run("rep -k 2 --word S");
  ASSERT_EQ(s.code, 0);
  auto u = s.j()["matrix"];
  const double h = 1 / std::sqrt(2.0);
  EXPECT_NEAR(entry(u, 0, 0, 0), h, 1e-15);
  EXPECT_NEAR(entry(u, 0, 1, 0), h, 1e-15);
  EXPECT_NEAR(entry(u, 1, 0, 0), h, 1e-15);
  EXPECT_NEAR(entry(u, 1, 1, 0), -h, 1e-15);
  EXPECT_LT(s.j()["unitarity_residual"].get<double>(), 1e-9);
}

TEST(CliRep, EmptyWordIsIdentity) {
  auto r = run("rep -k 4 --word \"\"");
  ASSERT_EQ(r.code, 0);
  auto m = r.j()["matrix"];
  ASSERT_EQ(m.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(entry(m, i, j, 0), i == j ? 1.0 : 0.0);
}

TEST(CliRep, WordFileAndBadToken) {
  auto r = run("rep -k 2 --word-file " + data("genus2_word.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["matrix"].size(), 4u);
  EXPECT_EQ(run("rep -k 2 --word \"S Q\"").code, 2);
  EXPECT_EQ(run("rep -k 3 --word S").code, 2);
}

TEST(CliInvariant, LensSphere) {
  auto r = run("invariant lens --p 1 -k 4");
  ASSERT_EQ(r.code, 0);
  auto j = r.j();
  EXPECT_NEAR(j["heegaard"]["abs"].get<double>(), 0.5, 1e-12);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_TRUE(j["heegaard"].contains("framing"));
}

TEST(CliInvariant, MappingTorusIdentity) {
  auto r = run("invariant mapping-torus -g 2 -k 2");
  ASSERT_EQ(r.code, 0);
  auto v = r.j()["trace"]["value"];
  EXPECT_NEAR(v[0].get<double>(), 4.0, 1e-12);
  EXPECT_NEAR(v[1].get<double>(), 0.0, 1e-12);
}

TEST(CliInvariant, HeegaardS) {
  auto r = run("invariant heegaard --word S -k 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.j()["heegaard"]["abs"].get<double>(), 1 / std::sqrt(2.0), 1e-12);
  auto f = run("invariant heegaard --word-file " + data("genus2_word.json") + " -k 2");
  ASSERT_EQ(f.code, 0);
  EXPECT_TRUE(f.j()["pass"].get<bool>());
}

TEST(CliInvariant, SimplicialSphere) {
  auto r = run("invariant simplicial --complex " + data("sphere3.json") + " -k 4");
  ASSERT_EQ(r.code, 0);
  auto d = r.j()["direct"];
  EXPECT_NEAR(d[0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(d[1].get<double>(), 0.0, 1e-12);
}

TEST(CliInvariant, BadInput) {
  EXPECT_EQ(run("invariant lens --p 0 -k 4").code, 2);
  EXPECT_EQ(run("invariant torus -k 4").code, 2);
  EXPECT_EQ(run("invariant mapping-torus --matrix \"[[2,0],[0,1]]\" -k 2").code, 2);
}

TEST(CliVerify, CocycleEvenAndOdd) {
  auto even = run("verify cocycle -k 2");
  EXPECT_EQ(even.code, 0);
  EXPECT_TRUE(even.j()["pass"].get<bool>());
  auto odd = run("verify cocycle -k 3");
  EXPECT_EQ(odd.code, 3);
  auto checks = odd.j()["suites"][0]["checks"];
  EXPECT_NE(checks[0]["detail"].get<std::string>().find("witness"), std::string::npos);
}

TEST(CliVerify, TorsionSuitePasses) { EXPECT_EQ(run("verify torsion --seed 3").code, 0); }

TEST(CliVerify, AxiomsDeterministic) {
  auto a = run("verify axioms --seed 0 -k 2");
  auto b = run("verify axioms --seed 0 -k 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliConfig, ToleranceRangeAndOutFile) {
  EXPECT_EQ(run("invariant lens --p 2 -k 2 --tolerance 0.5").code, 2);
  std::string path = ::testing::TempDir() + "abelcs_cli_out.json";
  auto r = run("invariant lens --p 2 -k 2 --out " + path);
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  json j = json::parse(in);
  EXPECT_EQ(j["p"], 2);
}
