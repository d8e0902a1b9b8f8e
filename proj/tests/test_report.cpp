#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "csv_schema.hpp"
#include "fuzzytrust/error.hpp"
#include "fuzzytrust/report.hpp"

using namespace fuzzytrust;

namespace {

sim::ScenarioConfig tiny() {
  sim::ScenarioConfig cfg;
  cfg.n_members = 10;
  cfg.category_a_size = 6;
  cfg.n_campaigns = 250;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST(Selfcheck, DefaultsPass) {
  const auto checks = report::selfcheck();
  ASSERT_EQ(checks.size(), 6u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  for (double r : report::example_graph_residuals({})) EXPECT_LE(r, report::kFixedPointTolerance);
}

TEST(Selfcheck, OtherWeights) {
  report::ExampleGraph g{0.9, 0.1, 0.5, 0.5, 0.3, 0.7};
  for (double r : report::example_graph_residuals(g)) EXPECT_LE(r, report::kFixedPointTolerance);
  // A member that only trusts one other still converges.
  g = {1.0, 0.0, 1.0, 0.0, 0.2, 0.8};
  for (const auto& c : report::selfcheck(g)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Csv, HeadersAndRows) {
  const auto cfg = tiny();
  const auto runs = sim::run_methods(cfg, {sim::Method::Fuzzy, sim::Method::BaselineRep});
  std::ostringstream t, r, s;
  report::write_overall_trust_csv(t, runs);
  report::write_reputation_csv(r, runs);
  report::write_summary_csv(s, runs);
  const auto ts = t.str(), rs = r.str(), ss = s.str();
  auto lines = [](const std::string& x) { return std::count(x.begin(), x.end(), '\n'); };
  EXPECT_EQ(ts.substr(0, ts.find('\n')), report::kOverallTrustHeader);
  EXPECT_EQ(lines(ts), 1 + 2 * 250);
  EXPECT_EQ(lines(rs), 1 + 2 * 3 * 10);
  EXPECT_EQ(lines(ss), 3);
  EXPECT_NE(ss.find("\nbaseline,"), std::string::npos);
}

TEST(Csv, UndefinedMarker) {
  auto cfg = tiny();
  cfg.revocation_threshold = 1.0;  // revokes everything
  cfg.n_campaigns = 20;
  const auto runs = sim::run_methods(cfg, {sim::Method::Average});
  std::ostringstream t;
  report::write_overall_trust_csv(t, runs);
  EXPECT_NE(t.str().find("0,average,A,NA\n"), std::string::npos);
  EXPECT_EQ(runs[0].summary.undefined_campaigns, 20u);
}

TEST(WriteRun, FilesValidateAndManifestEchoesConfig) {
  const auto cfg = tiny();
  const auto runs = sim::run_methods(cfg, {sim::kAllMethods.begin(), sim::kAllMethods.end()});
  const auto dir = std::filesystem::temp_directory_path() / "fuzzytrust_report_test";
  std::filesystem::remove_all(dir);
  report::write_run(dir.string(), cfg, runs);
  const auto t = csvcheck::overall_trust((dir / "overall_trust.csv").string());
  const auto r = csvcheck::reputation((dir / "reputation.csv").string());
  const auto s = csvcheck::summary((dir / "summary.csv").string());
  EXPECT_TRUE(t.ok()) << t.errors.front();
  EXPECT_TRUE(r.ok()) << r.errors.front();
  EXPECT_TRUE(s.ok()) << s.errors.front();
  EXPECT_EQ(t.rows, 750u);
  EXPECT_EQ(s.rows, 3u);

  std::ifstream in(dir / "manifest.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["version"], report::version());
  EXPECT_EQ(j["config"]["members"], "10");
  EXPECT_EQ(j["config"]["fuzzy.rule"].size(), 16u);
  EXPECT_EQ(j["methods"].size(), 3u);
  std::filesystem::remove_all(dir);
}

TEST(WriteRun, UnwritableDirectory) {
  const auto cfg = tiny();
  const auto runs = sim::run_methods(cfg, {sim::Method::Average});
  EXPECT_THROW(report::write_run("/proc/fuzzytrust/cannot", cfg, runs), IoError);
}
