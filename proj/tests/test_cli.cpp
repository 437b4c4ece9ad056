#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tazrp/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tazrp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tazrp::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("tazrp_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, SteadyMultilineTwoSites) {
  const auto r = run({"steady", "--n", "2", "--L", "2", "--m", "1,1", "--method", "multiline"});
  ASSERT_EQ(r.code, tazrp::kExitOk) << r.err;
  const auto expected = nlohmann::json::parse(R"({"e|12":"w1+w2","1|2":"w2","12|e":"w1+w2","2|1":"w2"})");
  EXPECT_EQ(r.json(), expected);
}

TEST(Cli, SteadyMpfThreeSpecies) {
  const auto r = run({"steady", "--n", "3", "--L", "2", "--m", "1,1,1", "--method", "mpf"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("e|123"), "w1^2+2*w1*w2+w1*w3+w2^2+w2*w3");
  EXPECT_EQ(r.json().size(), 8u);
}

TEST(Cli, SteadyOneSpecies) {
  const auto r = run({"steady", "--n", "1", "--L", "3", "--m", "2", "--method", "mpf"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j.size(), 6u);
  for (const auto& [k, v] : j.items()) EXPECT_EQ(v, "1") << k;
}

TEST(Cli, MethodsAgree) {
  const auto a = run({"steady", "--n", "2", "--L", "3", "--m", "2,1"});
  const auto b = run({"steady", "--n", "2", "--L", "3", "--m", "2,1", "--method", "multiline"});
  const auto c = run({"steady", "--n", "2", "--L", "3", "--m", "2,1", "--method", "full-trace"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, SteadyTerms) {
  const auto r = run({"steady", "--n", "2", "--L", "2", "--m", "1,1", "--terms"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(R"("1|2":[{"exps":[0,1],"coeff":"1"}])"), std::string::npos) << r.out;
}

TEST(Cli, Kernel) {
  const auto r = run({"steady", "--n", "2", "--L", "3", "--m", "1,1", "--method", "kernel", "--w", "1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("method"), "kernel");
  EXPECT_EQ(j.at("unit_sum").at("e|e|12"), "1/6");
  EXPECT_EQ(j.at("polynomial_normalization").at("total"), "18");
  EXPECT_EQ(j.at("polynomial_normalization").at("values").at("e|e|12"), "3");
  EXPECT_EQ(run({"steady", "--n", "2", "--L", "3", "--m", "1,1", "--method", "kernel"}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({"steady", "--n", "2", "--L", "3", "--m", "1,1", "--method", "kernel", "--w", "1,-1"}).code,
            tazrp::kExitUsage);
  EXPECT_EQ(run({"steady", "--n", "2", "--L", "3", "--m", "1,1", "--method", "kernel", "--w", "1"}).code,
            tazrp::kExitUsage);
}

TEST(Cli, VerifyPasses) {
  for (const auto& args : std::vector<std::vector<std::string>>{{"verify", "--n", "2", "--L", "4", "--m", "1,1"},
                                                                 {"verify", "--n", "2", "--L", "3", "--m", "2,2", "--deep"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.json().at("ok"), true);
  }
}

TEST(Cli, VerifyTamperedGolden) {
  auto golden = run({"steady", "--n", "2", "--L", "4", "--m", "1,1"}).json();
  golden["e|e|1|2"] = "w2^3+w1^3";
  const auto path = temp_file("golden.json", golden.dump());
  const auto r = run({"verify", "--n", "2", "--L", "4", "--m", "1,1", "--golden", path.string()});
  EXPECT_EQ(r.code, tazrp::kExitVerification);
  const auto j = r.json();
  EXPECT_EQ(j.at("ok"), false);
  bool witnessed = false;
  for (const auto& c : j.at("checks")) {
    if (c.at("name") == "stationary-golden") {
      EXPECT_EQ(c.at("ok"), false);
      witnessed = c.at("detail").contains("row") && c.at("detail").contains("residual");
    }
  }
  EXPECT_TRUE(witnessed);

  const auto intact = temp_file("golden_ok.json", run({"steady", "--n", "2", "--L", "4", "--m", "1,1"}).out);
  EXPECT_EQ(run({"verify", "--n", "2", "--L", "4", "--m", "1,1", "--golden", intact.string()}).code, 0);

  const auto broken = temp_file("golden_bad.json", "{not json");
  EXPECT_EQ(run({"verify", "--n", "2", "--L", "4", "--m", "1,1", "--golden", broken.string()}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({"verify", "--n", "2", "--L", "4", "--m", "1,1", "--golden", "/nonexistent/file"}).code,
            tazrp::kExitUsage);
}

TEST(Cli, HatCheck) {
  for (const auto& [n, b] : std::vector<std::pair<std::string, std::string>>{{"2", "2"}, {"3", "1"}, {"4", "1"}}) {
    const auto r = run({"hat-check", "--n", n, "--bound", b});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json().at("ok"), true);
    EXPECT_EQ(r.json().at("failures"), 0);
  }
  EXPECT_EQ(run({"hat-check", "--n", "1"}).code, tazrp::kExitUsage);
}

TEST(Cli, InputErrors) {
  auto r = run({"steady", "--n", "2", "--L", "2", "--m", "0,1"});
  EXPECT_EQ(r.code, tazrp::kExitUsage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({"steady", "--n", "3", "--L", "2", "--m", "1,1"}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({"steady", "--n", "2", "--L", "2", "--m", "1,x"}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({"steady", "--n", "2", "--L", "1", "--m", "1,1"}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({"steady", "--n", "2", "--L", "2", "--m", "1,1", "--method", "nope"}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({"steady", "--n", "2", "--L", "2"}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, tazrp::kExitUsage);
  EXPECT_EQ(run({}).code, tazrp::kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("steady"), std::string::npos);
}

TEST(Cli, OutputIsStableAcrossRunsAndThreads) {
  const auto a = run({"steady", "--n", "3", "--L", "3", "--m", "1,1,1"});
  const auto b = run({"steady", "--n", "3", "--L", "3", "--m", "1,1,1", "--threads", "4"});
  const auto c = run({"--threads", "2", "steady", "--n", "3", "--L", "3", "--m", "1,1,1"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  ::setenv("TAZRP_THREADS", "3", 1);
  EXPECT_EQ(run({"steady", "--n", "3", "--L", "3", "--m", "1,1,1"}).out, a.out);
  ::setenv("TAZRP_THREADS", "zero", 1);
  EXPECT_EQ(run({"steady", "--n", "3", "--L", "3", "--m", "1,1,1"}).code, tazrp::kExitUsage);
  ::unsetenv("TAZRP_THREADS");
}

TEST(Cli, Sector) {
  const auto r = run({"sector", "--n", "2", "--L", "2", "--m", "1,1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json().at("size"), 4);
  EXPECT_EQ(r.json().at("multiline_size"), 6);
  EXPECT_EQ(r.json().at("configurations").dump(), R"(["e|12","2|1","1|2","12|e"])");
}

TEST(Cli, Simulate) {
  const std::vector<std::string> args{"simulate", "--n", "2", "--L", "3", "--m", "1,1", "--w", "1,2",
                                      "--events", "60000", "--burn-in", "1000", "--seed", "7", "--exact"};
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run(args).out);
  const auto j = a.json();
  EXPECT_EQ(j.at("fractions").size(), 9u);
  EXPECT_EQ(j.at("summary").at("events"), 59000);
  EXPECT_LT(j.at("summary").at("tv_distance").get<double>(), 0.05);
  EXPECT_EQ(run({"simulate", "--n", "2", "--L", "3", "--m", "1,1", "--w", "1,0"}).code, tazrp::kExitUsage);
}

TEST(Cli, Pretty) {
  const auto r = run({"--pretty", "verify", "--n", "2", "--L", "3", "--m", "1,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS column-sums"), std::string::npos);
  const auto s = run({"steady", "--n", "2", "--L", "2", "--m", "1,1", "--pretty"});
  EXPECT_NE(s.out.find("e|12"), std::string::npos);
  EXPECT_EQ(s.out.find('{'), std::string::npos);
}
