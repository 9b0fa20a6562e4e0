#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>

#include "bilip/json.hpp"
#include "support.hpp"

using namespace bilip;
using namespace testing_support;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(BILIP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Json, ExactScalarsRoundTrip) {
  Gen g(81);
  for (int n = 0; n < 100; ++n) {
    const Scalar s = g.gaussian(1000, 1000);
    EXPECT_TRUE(identical(scalar_from_json(Json::parse(to_json(s).dump())), s));
    const Rational q = g.rational(1000, 1000);
    EXPECT_EQ(rational_from_json(Json::parse(to_json(q).dump())), q);
  }
}

TEST(Json, ApproximateScalarsRoundTrip) {
  Gen g(82);
  const Precision p;
  for (int n = 0; n < 50; ++n) {
    const Scalar s = nth_roots(g.nonzero_gaussian(), 3, 256)[1];
    ASSERT_FALSE(s.is_exact());
    const Scalar back = scalar_from_json(Json::parse(to_json(s).dump()));
    ASSERT_FALSE(back.is_exact());
    EXPECT_TRUE(approx_equal(back, s, p));
    EXPECT_EQ(back.radius(), s.radius());
    EXPECT_LT((back - s).abs_center(), 1e-70L);
  }
}

TEST(Json, InvariantSerialisesExactValues) {
  const Json j = to_json(inv2(parse_poly(kBc)));
  ASSERT_EQ(j["lines"].size(), 1u);
  std::multiset<std::string> nus;
  for (const auto& q : j["lines"][0]["pairs"]) nus.insert(q["nu"].get<std::string>());
  EXPECT_EQ(nus, (std::multiset<std::string>{"-18/31", "18/31"}));
}

TEST(Cli, AnalyzeGolden) {
  const CliRun r = run_cli("analyze \"x^3 - 3*t^2*x*y^10 + y^12\" --param t=1 --json");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.contains("input"));
  EXPECT_TRUE(j.contains("options"));
  const auto& pairs = j["analysis"]["inv2"]["lines"][0]["pairs"];
  std::multiset<std::string> got;
  for (const auto& q : pairs) got.insert(q["m"].get<std::string>() + ":" + q["nu"].get<std::string>());
  EXPECT_EQ(got, (std::multiset<std::string>{"15:-4", "15:4"}));
}

TEST(Cli, AnalyzeEmpty) {
  const CliRun r = run_cli("analyze \"x^2 + y^2\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Σ_f empty; Inv² = {}"), std::string::npos);
}

TEST(Cli, CompareExitCodes) {
  const std::string f = "\"x^3 - 3*t^2*x*y^10 + y^12\"";
  const CliRun ne = run_cli("compare " + f + " " + f + " --param1 t=1 --param2 t=2");
  EXPECT_EQ(ne.code, 1);
  EXPECT_NE(ne.out.find("c^12 = 1"), std::string::npos);
  EXPECT_NE(ne.out.find("c^3 in {8,-8}"), std::string::npos);
  EXPECT_EQ(run_cli("compare " + f + " " + f + " --param t=1").code, 0);
  const CliRun js = run_cli("compare \"x^3 + b*x^2*y^3 + y^9 + c*x*y^7\" \"x^3 + b*x^2*y^3 + y^9 + c*x*y^7\" "
                         "--param c=1 --param1 b=1 --param2 b=2 --json");
  EXPECT_EQ(js.code, 1);
  EXPECT_EQ(Json::parse(js.out)["comparison"]["decision"], "NotEquivalent");
}

TEST(Cli, ArcsAndErrors) {
  const CliRun arcs = run_cli("arcs \"x^2 - y^3\" --json");
  ASSERT_EQ(arcs.code, 0);
  const Json j = Json::parse(arcs.out);
  ASSERT_EQ(j["arcs"].size(), 2u);
  EXPECT_EQ(j["arcs"][0]["N"], 2);
  EXPECT_EQ(run_cli("analyze \"x^3 +* y\"").code, 2);
  EXPECT_EQ(run_cli("analyze \"x^3 - t*y^4\"").code, 2);
  EXPECT_EQ(run_cli("analyze \"y^2 + x^3\"").code, 2);
  EXPECT_EQ(run_cli("analyze \"(x - y^2)^2*(x+y)\"").code, 2);
  EXPECT_EQ(run_cli("analyze").code, 2);
  EXPECT_EQ(run_cli("analyze \"x^3 + x^2*y^3 + y^9 + x*y^7\" --max-terms 2").code, 4);
}

TEST(Cli, ShearDoesNotChangeTheInvariant) {
  const CliRun plain = run_cli("analyze \"x^3 - 3*x*y^10 + y^12\" --json");
  const CliRun sheared = run_cli("analyze \"x^3 - 3*x*y^10 + y^12\" --shear 1 --json");
  ASSERT_EQ(plain.code, 0);
  ASSERT_EQ(sheared.code, 0);
  const Json a = Json::parse(plain.out)["analysis"]["inv2"]["lines"][0];
  const Json b = Json::parse(sheared.out)["analysis"]["inv2"]["lines"][0];
  EXPECT_EQ(a["pairs"].dump(), b["pairs"].dump());
  EXPECT_EQ(b["lambda"], "-1");
}

TEST(Cli, OutputIsDeterministicAcrossThreadCounts) {
  for (const auto& s : {kTwoArc, kBc, kDegenerate}) {
    const CliRun one = run_cli("analyze \"" + s + "\" --json --threads 1");
    const CliRun four = run_cli("analyze \"" + s + "\" --json --threads 4");
    ASSERT_EQ(one.code, 0);
    Json a = Json::parse(one.out), b = Json::parse(four.out);
    a["options"].erase("threads");
    b["options"].erase("threads");
    EXPECT_EQ(a.dump(), b.dump()) << s;
  }
}

TEST(Cli, SelftestExitsZero) {
  const CliRun r = run_cli("selftest --json");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["pass"].get<bool>());
}
