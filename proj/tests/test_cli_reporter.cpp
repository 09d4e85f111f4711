#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "mmi/mmi.hpp"
#include "support/oracles.hpp"

using mmi::Rational;
using mmi::io::json;
using oracle::pt;

namespace {

const std::string example_path = std::string(MMI_DATA_DIR) + "/example.json";

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(mmi::cli::RunConfig c) {
  if (c.input.empty()) c.input = example_path;
  std::ostringstream out, err;
  const int code = mmi::cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

mmi::cli::RunConfig config(const std::string& command) {
  mmi::cli::RunConfig c;
  c.command = command;
  return c;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, Canonical) {
  const auto o = run(config("canonical"));
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "[1,2,3,6,9]\n");
}

TEST(Cli, JumpingNumbers) {
  auto c = config("jumping-numbers");
  c.ideal = "a2";
  c.upto = "2";
  EXPECT_EQ(run(c).out, "[\"3/2\",\"2\"]\n");
  c.ideal.reset();
  c.direction = "1,1";
  c.upto = "1/2";
  EXPECT_EQ(run(c).out, "[\"10/27\",\"13/27\"]\n");
}

TEST(Cli, EnumerateReportsNineRepresentativesAndFiveIdeals) {
  auto c = config("enumerate");
  c.box = "1,3";
  c.max_steps = 9;
  const auto o = run(c);
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j.at("D").size(), 9u);
  EXPECT_EQ(j.at("distinct_divisors"), 5);
  EXPECT_EQ(j.at("D")[5], json::parse(R"(["23/42","3/4"])"));
}

TEST(Cli, OutputIsDeterministic) {
  auto c = config("enumerate");
  c.box = "1,3";
  EXPECT_EQ(run(c).out, run(c).out);
  c.command = "walls";
  c.format = "svg";
  EXPECT_EQ(run(c).out, run(c).out);
}

TEST(Cli, SvgHasOnePolylinePerFacet) {
  auto c = config("enumerate");
  c.box = "1,3";
  const json j = json::parse(run(c).out);
  c.command = "walls";
  c.format = "svg";
  const auto svg = run(c).out;
  EXPECT_EQ(count(svg, "<polyline"), j.at("cfacet_count").get<std::size_t>());
  EXPECT_EQ(count(svg, "<polyline"), 60u);
  EXPECT_NE(svg.find("6z1+2z2=3"), std::string::npos);
  EXPECT_NE(svg.find("lct-region"), std::string::npos);
}

TEST(Cli, TextFormats) {
  auto c = config("mmi");
  c.lambda = "23/42,3/4";
  c.format = "text";
  const auto o = run(c);
  EXPECT_NE(o.out.find("D (1,2,3,5,7)"), std::string::npos);
  c.command = "min-jumping-divisor";
  c.lambda = "1/6,1";
  EXPECT_EQ(run(c).out, "G = E2\n");
}

TEST(Cli, OutputFile) {
  auto c = config("canonical");
  c.output = ::testing::TempDir() + "canonical.json";
  const auto o = run(c);
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(read_file(*c.output), "[1,2,3,6,9]\n");
}

TEST(Cli, ValidationFailuresExitTwo) {
  auto c = config("mmi");
  c.lambda = "1,2,3";
  EXPECT_EQ(run(c).code, 2);
  c.lambda = "1e3,1";
  EXPECT_EQ(run(c).code, 2);
  c.lambda.reset();
  EXPECT_EQ(run(c).code, 2);
  c = config("canonical");
  c.input = write_temp("bad_graph.json", R"({"exceptional":[{"id":"E1","self":-1},{"id":"E2","self":-1}],
    "edges":[["E1","E2"]],"ideals":[{"name":"a","mult":{"E1":1,"E2":1}}]})");
  const auto o = run(c);
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("NotNegativeDefinite"), std::string::npos);
  c.input = write_temp("float.json", R"({"exceptional":[{"id":"E1","self":-1.5}],"ideals":[]})");
  EXPECT_EQ(run(c).code, 2);
  c.input = ::testing::TempDir() + "does_not_exist.json";
  EXPECT_EQ(run(c).code, 2);
  c = config("canonical");
  c.format = "svg";
  EXPECT_EQ(run(c).code, 2);
}

TEST(Cli, ThreeIdealWallsExitThree) {
  auto c = config("enumerate");
  c.input = write_temp("three.json", R"({"exceptional":[{"id":"E1","self":-2},{"id":"E2","self":-4},{"id":"E3","self":-2},
    {"id":"E4","self":-2},{"id":"E5","self":-1}],"edges":[["E1","E2"],["E2","E5"],["E3","E4"],["E4","E5"]],
    "ideals":[{"name":"a1","mult":{"E1":3,"E2":6,"E3":7,"E4":14,"E5":21}},
              {"name":"a2","mult":{"E1":1,"E2":2,"E3":2,"E4":4,"E5":6}},
              {"name":"a3","mult":{"E1":1,"E2":1,"E3":1,"E4":2,"E5":3}}]})");
  c.box = "1,1,1";
  EXPECT_EQ(run(c).code, 3);
  c.command = "walls";
  EXPECT_EQ(run(c).code, 3);
  c.command = "region";
  c.lambda = "0,0,0";
  EXPECT_EQ(run(c).code, 0);
}

TEST(Cli, UnloadingCapExitsFour) {
  ::setenv("MMI_MAX_UNLOAD_ITERS", "1", 1);
  auto c = config("mmi");
  c.lambda = "1/6,1";
  const auto o = run(c);
  ::unsetenv("MMI_MAX_UNLOAD_ITERS");
  EXPECT_EQ(o.code, 4);
  EXPECT_NE(o.err.find("NonTermination"), std::string::npos);
}

TEST(Cli, VerifyPasses) {
  auto c = config("verify");
  c.lambda = "1/6,1";
  auto o = run(c);
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(json::parse(o.out).at("passed").get<bool>());
  c.lambda.reset();
  c.box = "1,3";
  o = run(c);
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(json::parse(o.out).at("reports").size(), 60u * 4);
}

TEST(Cli, NonMPrimaryInputIsNoted) {
  auto c = config("canonical");
  c.input = write_temp("affine.json", R"({"exceptional":[{"id":"E1","self":-1}],"affine":[{"id":"A1","meets":["E1"]}],
    "ideals":[{"name":"a","mult":{"E1":2,"A1":1}}]})");
  const auto o = run(c);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.err.find("m-primary"), std::string::npos);
  EXPECT_EQ(o.out, "[1,0]\n");
}

// ---- JSON round trips --------------------------------------------------

class RoundTrip : public ::testing::Test {
 protected:
  mmi::LogResolution res = oracle::example();
};

TEST_F(RoundTrip, Scalars) {
  for (const auto& q : {Rational(0), Rational(-7, 3), Rational(14, 3), Rational(123456789)})
    EXPECT_EQ(mmi::io::rational_from(json::parse(mmi::io::rational_entry(q).dump())), q);
  const auto d = mmi::Divisor(std::vector<Rational>{1, Rational(1, 2), -3});
  EXPECT_EQ(mmi::io::divisor_from(json::parse(mmi::io::divisor_json(d).dump())), d);
}

TEST_F(RoundTrip, EnumerationResult) {
  mmi::EnumerationOptions opts;
  opts.max_steps = 12;
  const auto e = mmi::enumerate_constancy_regions(res, pt(1, 1, 3, 1), opts);
  const json j = json::parse(mmi::io::to_json(res, e).dump());
  EXPECT_EQ(mmi::io::enumeration_from(res, j), e);
  for (const auto& r : e.records) {
    EXPECT_EQ(mmi::io::record_from(res, mmi::io::to_json(res, r)), r);
    EXPECT_EQ(mmi::io::region_from(res, mmi::io::to_json(res, r.region)), r.region);
  }
}

TEST_F(RoundTrip, Reports) {
  const auto m = mmi::minimal_jumping_divisor(res, pt(1, 3, 1, 2));
  EXPECT_EQ(mmi::io::minimal_jumping_divisor_from(res, json::parse(mmi::io::to_json(res, m).dump())), m);
  for (const auto& rep : {mmi::verify_jump_identity(res, pt(1, 6, 1, 1)), mmi::verify_numeric_conditions(res, pt(1, 6, 1, 1)),
                          mmi::verify_contribution_dichotomy(res, pt(1, 2, 1, 1))})
    EXPECT_EQ(mmi::io::verification_from(json::parse(mmi::io::to_json(rep).dump())), rep);
  for (const auto& p : {pt(0, 1, 0, 1), pt(23, 42, 3, 4)}) {
    const auto r = mmi::io::mmi_report(res, p);
    EXPECT_EQ(mmi::io::mmi_report_from(res, json::parse(mmi::io::to_json(r).dump())), r);
  }
}

// ---- the executable ----------------------------------------------------

TEST(Executable, ExitCodes) {
  const std::string cli = MMI_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("canonical --input " + example_path), 0);
  EXPECT_EQ(status("mmi --input " + example_path + " --lambda 1,2,3"), 2);
  EXPECT_EQ(status("nonsense --input " + example_path), 2);
  EXPECT_EQ(status("canonical"), 2);
  EXPECT_EQ(status("mmi --input " + example_path + " --lambda 1/6,1 --format text"), 0);
}
