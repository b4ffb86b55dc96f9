#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bimoment/cli.hpp"
#include "bimoment/io.hpp"
#include "test_support.hpp"

namespace bimoment {
namespace {

using testing::fixture;

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("bimoment_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

TEST(Io, ParsePmfAcceptsDecimalsExactly) {
  const JointPMF pmf = parse_pmf_json(R"({"m":1,"n":1,"p":[["0.1","0.2"],["0.3","0.4"]]})", "x");
  EXPECT_THROW(parse_pmf_json(R"({"m":1,"n":1,"p":[["0.1","0.2"],["0.3","0.3"]]})", "x"), InputError);
  EXPECT_EQ(pmf(1, 1), Rational(2, 5));
  EXPECT_EQ(pmf(0, 0), Rational(1, 10));
}

TEST(Io, DiagnosticsNameSourceAndProblem) {
  try {
    parse_pmf_json(R"({"m":1,"n":1,"p":[["1/2"],["1/2","0"]]})", "f.json");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("f.json: row 0", 0), 0U) << e.what();
  }
  try {
    parse_event_csv("weight,A1,B1\n1/2,1,0\n1/2,2,1\n", "e.csv");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("e.csv:3:", 0), 0U) << e.what();
  }
  EXPECT_THROW(parse_event_csv("weight,A1,C1\n1,1,0\n", "e.csv"), InputError);
  EXPECT_THROW(parse_pmf_json("{", "bad.json"), InputError);
  EXPECT_THROW(parse_pmf_json(R"({"m":1,"n":1,"p":[[0.5,0.5],["0","0"]]})", "float.json"), InputError);
  EXPECT_THROW(parse_moments_json(R"({"m":1,"n":1,"s":[["1","2"],["0","0"]]})", "s.json"), InputError);
}

TEST(Io, CanonicalJsonRoundTrip) {
  const JointPMF law = testing::three_point();
  EXPECT_EQ(parse_pmf_json(to_json(law), "three_point"), law);
  const MomentMatrix mm = moments_from_pmf(law);
  EXPECT_EQ(parse_moments_json(to_json(mm), "mm"), mm);
  std::ifstream in(fixture("three_point_moments.json"));
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(to_json(mm), text.str());
}

TEST(Cli, MomentsOfPmf) {
  const CliResult r = run({"moments", "--in", fixture("three_point.json")});
  EXPECT_EQ(r.status, cli::kExitOk);
  std::ifstream in(fixture("three_point_moments.json"));
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(r.out, expected.str());
}

TEST(Cli, MomentsOfEventCsvCarriesBonferroniSums) {
  const CliResult r = run({"moments", "--in", fixture("three_point_events.csv")});
  EXPECT_EQ(r.status, cli::kExitOk);
  EXPECT_NE(r.out.find("\"sums_match_moments\": true"), std::string::npos);
  EXPECT_NE(r.out.find("\"bonferroni_sums\""), std::string::npos);
  const CliResult limited = run({"moments", "--in", fixture("three_point_events.csv"), "--kmax", "1", "--lmax", "1"});
  EXPECT_EQ(limited.status, cli::kExitOk);
  EXPECT_NE(limited.out.find("\"kmax\": 1"), std::string::npos);
}

TEST(Cli, InvertThenMomentsIsByteIdentical) {
  const CliResult inv = run({"invert", "--in", fixture("three_point_moments.json"), "--to", "pmf"});
  ASSERT_EQ(inv.status, cli::kExitOk);
  const std::string pmf_path = temp_file("inverted.json", inv.out);
  const CliResult back = run({"moments", "--in", pmf_path});
  std::ifstream in(fixture("three_point_moments.json"));
  std::stringstream original;
  original << in.rdbuf();
  EXPECT_EQ(back.out, original.str());

  const CliResult tails = run({"invert", "--in", fixture("three_point_moments.json"), "--to", "tails"});
  EXPECT_EQ(tails.status, cli::kExitOk);
  EXPECT_NE(tails.out.find("[\"2/3\", \"2/3\", \"1/3\"]"), std::string::npos) << tails.out;
}

TEST(Cli, InvertRejectsOrderLimitedMoments) {
  const CliResult r = run({"invert", "--in", fixture("partial_moments.json"), "--to", "pmf"});
  EXPECT_EQ(r.status, cli::kExitUsage);
}

TEST(Cli, BoundGumbelOnThreePoint) {
  const CliResult r = run({"bound", "--in", fixture("three_point.json"), "--family", "gumbel", "--u", "1", "--v", "1", "--k", "1",
                     "--l", "1"});
  EXPECT_EQ(r.status, cli::kExitOk);
  EXPECT_EQ(r.out, "5/3 (≈1.6667) [upper]\n");
}

TEST(Cli, BoundClampAndJson) {
  const std::vector<std::string> base{"bound", "--in", fixture("three_point.json"), "--family", "frechet_type",
                                      "--u",   "2",    "--v",              "2",        "--k",
                                      "1",     "--l",  "1"};
  EXPECT_EQ(run(base).out, "-4/3 (≈-1.3333) [lower]\n");
  auto clamped = base;
  clamped.push_back("--clamp");
  EXPECT_EQ(run(clamped).out, "0 (≈0.0000) [lower] clamped from -4/3\n");
  auto as_json = base;
  as_json.push_back("--json");
  const CliResult j = run(as_json);
  EXPECT_NE(j.out.find("\"value\": \"-4/3\""), std::string::npos) << j.out;
  EXPECT_NE(j.out.find("\"family\": \"frechet_type\""), std::string::npos);
}

TEST(Cli, BoundComparisonAliasesAndConstraints) {
  const auto bound = [](std::vector<std::string> extra) {
    std::vector<std::string> args{"bound", "--in", fixture("three_point.json"), "--u", "1", "--v", "1"};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  EXPECT_EQ(bound({"--family", "c1"}).out, "2/3 (≈0.6667) [upper]\n");
  EXPECT_EQ(bound({"--family", "c6"}).out, "2/3 (≈0.6667) [upper]\n");
  EXPECT_EQ(bound({"--family", "c3"}).out, "2/3 (≈0.6667) [lower]\n");
  const CliResult bad = bound({"--family", "c3", "--a", "0", "--b", "1"});
  EXPECT_EQ(bad.status, cli::kExitUsage);
  EXPECT_NE(bad.err.find("m - 2a - 1 <= 0"), std::string::npos) << bad.err;
  EXPECT_EQ(bound({"--family", "nope"}).status, cli::kExitUsage);
  EXPECT_EQ(bound({"--family", "frechet"}).status, cli::kExitUsage);
}

TEST(Cli, SweepReportsShape) {
  const CliResult r = run({"sweep", "--in", fixture("three_point.json"), "--family", "frechet", "--u", "1", "--v", "1"});
  EXPECT_EQ(r.status, cli::kExitOk);
  EXPECT_NE(r.out.find("shape: nondecreasing and concave"), std::string::npos) << r.out;
  const CliResult chung = run({"sweep", "--in", fixture("three_point.json"), "--family", "chung", "--u", "1", "--v", "1"});
  EXPECT_EQ(chung.status, cli::kExitOk);
}

TEST(Cli, SweepFlagsViolations) {
  // Not the moments of any distribution; the k=3 Frechet value drops to 0.
  const std::string path = temp_file("broken.json", R"({"m":3,"n":1,"s":[["1","1"],["3","3"],["3","3"],["0","0"]]})");
  const CliResult r = run({"sweep", "--in", path, "--family", "frechet", "--u", "1", "--v", "1"});
  EXPECT_EQ(r.status, cli::kExitViolation) << r.out;
  EXPECT_NE(r.out.find("VIOLATION"), std::string::npos);
}

TEST(Cli, CompareThreePoint) {
  const CliResult r = run({"compare", "--in", fixture("three_point.json"), "--u", "1", "--v", "1"});
  EXPECT_EQ(r.status, cli::kExitOk);
  EXPECT_NE(r.out.find("exact"), std::string::npos);
  EXPECT_NE(r.out.find("2/3 (≈0.6667)"), std::string::npos);
  EXPECT_NE(r.out.find("<- best lower"), std::string::npos);
  EXPECT_NE(r.out.find("<- best upper"), std::string::npos);
  const CliResult json = run({"compare", "--in", fixture("three_point.json"), "--u", "1", "--v", "1", "--json"});
  EXPECT_NE(json.out.find("\"exact\": \"2/3\""), std::string::npos);
}

TEST(Cli, CompareOmitsInapplicableBounds) {
  const CliResult r = run({"compare", "--in", fixture("uniform_2x2.json"), "--u", "1", "--v", "1"});
  EXPECT_EQ(r.status, cli::kExitOk);
  EXPECT_NE(r.out.find("omitted: galambos_xu, chen_seneta, madi_nagy_prekopa: require m >= 2 and n >= 2"),
            std::string::npos)
      << r.out;
  const CliResult partial = run({"compare", "--in", fixture("partial_moments.json"), "--u", "1", "--v", "1"});
  EXPECT_EQ(partial.status, cli::kExitOk);
  EXPECT_NE(partial.out.find("unknown"), std::string::npos);
  EXPECT_NE(partial.out.find("omitted: chung(s=1,t=1,k=3,l=3)"), std::string::npos);
}

TEST(Cli, Validate) {
  const CliResult empty = run({"validate", "--trials", "0"});
  EXPECT_EQ(empty.status, cli::kExitOk);
  EXPECT_NE(empty.out.find("failures: 0"), std::string::npos);
  const CliResult some = run({"validate", "--trials", "12", "--seed", "4", "--mmax", "3", "--nmax", "3", "--json"});
  EXPECT_EQ(some.status, cli::kExitOk);
  EXPECT_NE(some.out.find("\"failures\": []"), std::string::npos) << some.out;
}

TEST(Cli, UsageAndInputErrorsExitOne) {
  EXPECT_EQ(run({}).status, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).status, cli::kExitUsage);
  EXPECT_EQ(run({"moments"}).status, cli::kExitUsage);
  EXPECT_EQ(run({"moments", "--in", "/nonexistent.json"}).status, cli::kExitUsage);
  const CliResult bad = run({"moments", "--in", fixture("bad_sum.json")});
  EXPECT_EQ(bad.status, cli::kExitUsage);
  EXPECT_NE(bad.err.find("bad_sum.json"), std::string::npos);
  const CliResult cell = run({"moments", "--in", fixture("bad_cell.csv")});
  EXPECT_NE(cell.err.find("bad_cell.csv:3:"), std::string::npos) << cell.err;
  EXPECT_EQ(run({"--help"}).status, cli::kExitOk);
}

}  // namespace
}  // namespace bimoment
