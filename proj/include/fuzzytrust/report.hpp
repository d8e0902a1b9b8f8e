#pragma once

// Output artifacts of a run (CSV files and manifest) and the built-in self-check.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "fuzzytrust/simulator.hpp"

namespace fuzzytrust::report {

inline constexpr const char* kOverallTrustHeader = "campaign,method,requester_category,overall_trust";
inline constexpr const char* kReputationHeader = "interval,member_id,category,method,reputation";
inline constexpr const char* kSummaryHeader =
    "method,mean_overall_trust,mean_trust_a_requesters,mean_trust_b_requesters,"
    "undefined_campaigns,mean_reputation_a,mean_reputation_b,reputation_separation,"
    "reputation_overlap";
/// Written in place of an overall trust value when every contribution was revoked.
inline constexpr const char* kUndefinedMarker = "NA";

void write_overall_trust_csv(std::ostream& os, const std::vector<sim::ScenarioResult>& runs);
void write_reputation_csv(std::ostream& os, const std::vector<sim::ScenarioResult>& runs);
void write_summary_csv(std::ostream& os, const std::vector<sim::ScenarioResult>& runs);
std::string manifest_json(const sim::ScenarioConfig& cfg, const std::vector<sim::ScenarioResult>& runs);

/// Writes overall_trust.csv, reputation.csv, summary.csv and manifest.json into
/// `dir`, creating it if needed. Throws IoError on failure.
void write_run(const std::string& dir, const sim::ScenarioConfig& cfg,
               const std::vector<sim::ScenarioResult>& runs);

const char* version() noexcept;

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Directed weights of the four-member example graph, keyed as T(from -> to).
struct ExampleGraph {
  double t13 = 0.6;
  double t14 = 0.4;
  double t21 = 0.7;
  double t24 = 0.3;
  double t32 = 0.8;
  double t34 = 0.2;
};

inline constexpr double kFixedPointTolerance = 1e-9;

/// Per-member residuals |rho_i - sum_j w(j -> i) rho_j| of the converged raw vector.
std::array<double, 4> example_graph_residuals(const ExampleGraph& g, std::size_t* iterations = nullptr);

/// Runs the example-graph fixed point, the symmetric-graph uniformity check and
/// the fuzzy prototype ordering check.
std::vector<CheckResult> selfcheck(const ExampleGraph& g = {});

}  // namespace fuzzytrust::report
