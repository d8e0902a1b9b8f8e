#include "fuzzytrust/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fuzzytrust/config.hpp"
#include "fuzzytrust/error.hpp"
#include "fuzzytrust/fuzzy.hpp"
#include "fuzzytrust/reputation.hpp"

#ifndef FUZZYTRUST_VERSION
#define FUZZYTRUST_VERSION "0.0.0"
#endif

namespace fuzzytrust::report {

namespace {

using config::format_number;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.setf(std::ios::scientific, std::ios::floatfield);
  os.precision(precision);
  os << v;
  return os.str();
}

}  // namespace

const char* version() noexcept { return FUZZYTRUST_VERSION; }

void write_overall_trust_csv(std::ostream& os, const std::vector<sim::ScenarioResult>& runs) {
  os << kOverallTrustHeader << '\n';
  for (const auto& run : runs) {
    const auto name = sim::method_name(run.method);
    for (const auto& c : run.campaigns) {
      os << c.campaign << ',' << name << ',' << sim::category_label(c.requester_category) << ',';
      if (c.overall_trust) {
        os << format_number(*c.overall_trust);
      } else {
        os << kUndefinedMarker;
      }
      os << '\n';
    }
  }
}

void write_reputation_csv(std::ostream& os, const std::vector<sim::ScenarioResult>& runs) {
  os << kReputationHeader << '\n';
  for (const auto& run : runs) {
    const auto name = sim::method_name(run.method);
    for (const auto& snap : run.snapshots) {
      for (std::size_t m = 0; m < snap.reputation.size(); ++m) {
        os << snap.interval << ',' << m << ',' << run.categories.at(m) << ',' << name << ','
           << format_number(snap.reputation[m]) << '\n';
      }
    }
  }
}

void write_summary_csv(std::ostream& os, const std::vector<sim::ScenarioResult>& runs) {
  os << kSummaryHeader << '\n';
  for (const auto& run : runs) {
    const auto& s = run.summary;
    os << sim::method_name(run.method) << ',' << format_number(s.mean_overall_trust) << ','
       << format_number(s.mean_trust_a_requesters) << ','
       << format_number(s.mean_trust_b_requesters) << ',' << s.undefined_campaigns << ','
       << format_number(s.mean_reputation_a) << ',' << format_number(s.mean_reputation_b) << ','
       << format_number(s.reputation_separation) << ',' << format_number(s.reputation_overlap)
       << '\n';
  }
}

std::string manifest_json(const sim::ScenarioConfig& cfg,
                          const std::vector<sim::ScenarioResult>& runs) {
  nlohmann::ordered_json j;
  j["tool"] = "fuzzytrust";
  j["version"] = version();
  j["scenario"] = cfg.scenario;
  j["seed"] = cfg.seed;
  auto methods = nlohmann::ordered_json::array();
  for (const auto& r : runs) methods.push_back(std::string(sim::method_name(r.method)));
  j["methods"] = methods;
  j["files"] = {"overall_trust.csv", "reputation.csv", "summary.csv"};

  nlohmann::ordered_json conf = nlohmann::ordered_json::object();
  auto rules = nlohmann::ordered_json::array();
  for (const auto& [key, value] : config::to_key_values(cfg)) {
    if (key == "fuzzy.rule") {
      rules.push_back(value);
    } else {
      conf[key] = value;
    }
  }
  conf["fuzzy.rule"] = rules;
  j["config"] = conf;

  auto diag = nlohmann::ordered_json::object();
  for (const auto& r : runs) {
    diag[std::string(sim::method_name(r.method))] = {
        {"max_rank_iterations", r.summary.max_rank_iterations},
        {"max_rank_residual", format_number(r.summary.max_rank_residual)},
        {"undefined_campaigns", r.summary.undefined_campaigns}};
  }
  j["convergence"] = diag;
  return j.dump(2) + "\n";
}

void write_run(const std::string& dir, const sim::ScenarioConfig& cfg,
               const std::vector<sim::ScenarioResult>& runs) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec || !fs::is_directory(root)) {
    throw IoError("cannot create output directory '" + dir + "'");
  }
  std::ostringstream trust;
  write_overall_trust_csv(trust, runs);
  std::ostringstream rep;
  write_reputation_csv(rep, runs);
  std::ostringstream summary;
  write_summary_csv(summary, runs);
  write_file(root / "overall_trust.csv", trust.str());
  write_file(root / "reputation.csv", rep.str());
  write_file(root / "summary.csv", summary.str());
  write_file(root / "manifest.json", manifest_json(cfg, runs));
}

std::array<double, 4> example_graph_residuals(const ExampleGraph& g, std::size_t* iterations) {
  reputation::TrustMatrix tm(4, 0.0);
  tm.set(0, 2, g.t13);
  tm.set(0, 3, g.t14);
  tm.set(1, 0, g.t21);
  tm.set(1, 3, g.t24);
  tm.set(2, 1, g.t32);
  tm.set(2, 3, g.t34);
  const std::vector<double> start(4, reputation::kInitialReputation);
  const auto rank = reputation::compute_reputation(tm, start);
  if (iterations) *iterations = rank.iterations;

  // P4 has no outgoing links, so its mass is spread evenly over P1..P3.
  const auto w = reputation::normalized_weights(tm);
  const auto& rho = rank.raw;
  std::array<double, 4> res{};
  for (std::size_t i = 0; i < 4; ++i) {
    double rhs = 0.0;
    for (std::size_t j = 0; j < 4; ++j) rhs += w[j * 4 + i] * rho[j];
    res[i] = std::abs(rho[i] - rhs);
  }
  return res;
}

std::vector<CheckResult> selfcheck(const ExampleGraph& g) {
  std::vector<CheckResult> out;

  try {
    std::size_t iters = 0;
    const auto res = example_graph_residuals(g, &iters);
    const char* names[] = {"rho(P1)", "rho(P2)", "rho(P3)", "rho(P4)"};
    for (std::size_t i = 0; i < 4; ++i) {
      out.push_back({std::string("example graph fixed point ") + names[i],
                     res[i] <= kFixedPointTolerance,
                     "residual " + fmt(res[i], 3) + " after " + std::to_string(iters) +
                         " iterations"});
    }
  } catch (const Error& e) {
    out.push_back({"example graph fixed point", false, e.what()});
  }

  try {
    constexpr std::size_t n = 5;
    reputation::TrustMatrix tm(n, 0.7);
    const auto rank = reputation::compute_reputation(tm, std::vector<double>(n, 0.5));
    const auto [mn, mx] = std::minmax_element(rank.raw.begin(), rank.raw.end());
    const bool uniform =
        (*mx - *mn) <= 1e-12 &&
        std::all_of(rank.reputation.begin(), rank.reputation.end(), [](double v) { return v == 0.5; });
    out.push_back({"symmetric complete graph is uniform", uniform,
                   "spread " + fmt(*mx - *mn, 3)});
  } catch (const Error& e) {
    out.push_back({"symmetric complete graph is uniform", false, e.what()});
  }

  try {
    const auto& engine = fuzzy::Engine::standard();
    const auto& q = engine.qoc().terms();
    const auto& p = engine.top().terms();
    const std::size_t k = engine.toc().size();
    std::vector<double> lo(k, std::numeric_limits<double>::infinity());
    std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        const double x = 0.5 * (q[i].mf.b + q[i].mf.c);
        const double y = 0.5 * (p[j].mf.b + p[j].mf.c);
        const std::size_t cons = engine.rules().consequent(i, j);
        const double v = engine.evaluate(x, y);
        lo[cons] = std::min(lo[cons], v);
        hi[cons] = std::max(hi[cons], v);
      }
    }
    bool ordered = true;
    std::string detail;
    double prev_hi = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (hi[c] < lo[c]) continue;  // consequent never used
      if (!(lo[c] > prev_hi)) ordered = false;
      prev_hi = hi[c];
      if (!detail.empty()) detail += " < ";
      detail += engine.toc().terms()[c].label + "[" + fmt(lo[c], 4) + "]";
    }
    out.push_back({"fuzzy prototype ordering", ordered, detail});
  } catch (const Error& e) {
    out.push_back({"fuzzy prototype ordering", false, e.what()});
  }
  return out;
}

}  // namespace fuzzytrust::report
