// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "fuzzytrust/fuzzy.hpp"
#include "fuzzytrust/report.hpp"
#include "fuzzytrust/reputation.hpp"
#include "fuzzytrust/simulator.hpp"
#include "fuzzytrust/trust_eval.hpp"

using namespace fuzzytrust;

namespace {

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};
constexpr double kRuntimeLimitSeconds = 300.0;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + why;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

struct SeedRuns {
  std::uint64_t seed;
  std::vector<sim::ScenarioResult> results;  // fuzzy, average, baseline
  double seconds;
};

sim::ScenarioConfig scenario(int id, std::uint64_t seed) {
  sim::ScenarioConfig cfg;
  cfg.scenario = id;
  cfg.seed = seed;
  return cfg;
}

const sim::ScenarioResult& of(const std::vector<sim::ScenarioResult>& rs, sim::Method m) {
  for (const auto& r : rs) {
    if (r.method == m) return r;
  }
  throw std::runtime_error("missing method");
}

std::string csv_bytes(const sim::ScenarioConfig& cfg, const std::vector<sim::ScenarioResult>& rs) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("fuzzytrust_accept_" + std::to_string(cfg.seed));
  fs::remove_all(dir);
  report::write_run(dir.string(), cfg, rs);
  std::string all;
  for (const char* f : {"overall_trust.csv", "reputation.csv", "summary.csv"}) {
    std::ifstream in(dir / f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    all += ss.str();
  }
  fs::remove_all(dir);
  return all;
}

Verdict criterion1(const std::vector<SeedRuns>& runs) {
  Verdict v;
  double f = 0, a = 0, b = 0, slowest = 0;
  for (const auto& s : runs) {
    f += of(s.results, sim::Method::Fuzzy).summary.mean_overall_trust;
    a += of(s.results, sim::Method::Average).summary.mean_overall_trust;
    b += of(s.results, sim::Method::BaselineRep).summary.mean_overall_trust;
    slowest = std::max(slowest, s.seconds);
  }
  const double n = static_cast<double>(runs.size());
  f /= n;
  a /= n;
  b /= n;
  const double rel = (f - b) / b;
  v.note("fuzzy " + num(f) + " > average " + num(a) + " > baseline " + num(b));
  v.note("relative gain " + num(100 * rel, 1) + "%");
  v.note("slowest run " + num(slowest, 1) + " s");
  v.require(f > a && a > b, "method ordering");
  v.require(rel >= 0.10, "fuzzy exceeds baseline by >= 10%");
  v.require(slowest <= kRuntimeLimitSeconds, "runtime <= 5 min");
  return v;
}

Verdict criterion2(const std::vector<SeedRuns>& runs) {
  Verdict v;
  double worst = 1;
  for (const auto& s : runs) {
    const auto& sum = of(s.results, sim::Method::Fuzzy).summary;
    const double gap = sum.mean_trust_a_requesters - sum.mean_trust_b_requesters;
    worst = std::min(worst, gap);
    v.require(gap >= 0.05, "seed " + std::to_string(s.seed) + " A-B gap " + num(gap));
  }
  v.note("smallest A-requester minus B-requester gap over seeds " + num(worst));
  return v;
}

Verdict criterion3(const std::vector<SeedRuns>& runs) {
  Verdict v;
  double worst_sep = 1, worst_overlap = 0;
  for (const auto& s : runs) {
    const auto& sum = of(s.results, sim::Method::Fuzzy).summary;
    worst_sep = std::min(worst_sep, sum.reputation_separation);
    worst_overlap = std::max(worst_overlap, sum.reputation_overlap);
    v.require(sum.reputation_separation >= 0.2,
              "seed " + std::to_string(s.seed) + " separation " + num(sum.reputation_separation));
    v.require(sum.reputation_overlap < 0.10,
              "seed " + std::to_string(s.seed) + " overlap " + num(sum.reputation_overlap));
  }
  v.note("min separation " + num(worst_sep) + ", max overlap fraction " + num(worst_overlap));
  return v;
}

// Snapshot index for the reputation after `campaigns` campaigns.
std::size_t at(const sim::ScenarioConfig& cfg, std::size_t campaigns) {
  return campaigns / cfg.reputation_interval;
}

Verdict criterion4(std::vector<std::vector<sim::ScenarioResult>>& scen2) {
  Verdict v;
  double min_own = 1, min_peer = 1, min_recovery = 1;
  std::string dips;
  for (std::size_t k = 0; k < std::size(kSeeds); ++k) {
    const auto cfg = scenario(2, kSeeds[k]);
    const auto before = at(cfg, cfg.transition_begin);
    const auto during = at(cfg, cfg.transition_end);
    const auto after = at(cfg, cfg.n_campaigns);
    double dip[2] = {0, 0};
    for (int mi = 0; mi < 2; ++mi) {
      const auto& run = of(scen2[k], mi == 0 ? sim::Method::Fuzzy : sim::Method::BaselineRep);
      const auto& s = run.snapshots;
      for (std::size_t m = 0; m < cfg.transition_members; ++m) {
        dip[mi] += s[before].reputation[m] - s[during].reputation[m];
      }
      dip[mi] /= static_cast<double>(cfg.transition_members);
      if (mi != 0) continue;

      double peer = 0;
      std::size_t peers = 0;
      for (std::size_t m = cfg.transition_members; m < cfg.category_a_size; ++m) {
        peer += s[during].reputation[m];
        ++peers;
      }
      peer /= static_cast<double>(peers);
      for (std::size_t m = 0; m < cfg.transition_members; ++m) {
        const double own = s[before].reputation[m] - s[during].reputation[m];
        const double gap = peer - s[during].reputation[m];
        const double rec = s[after].reputation[m] - s[during].reputation[m];
        const std::string who = "seed " + std::to_string(kSeeds[k]) + " member " + std::to_string(m);
        v.require(own >= 0.1, who + " own dip " + num(own));
        v.require(gap >= 0.1, who + " gap to category A " + num(gap));
        v.require(rec >= 0.05, who + " recovery " + num(rec));
        min_own = std::min(min_own, own);
        min_peer = std::min(min_peer, gap);
        min_recovery = std::min(min_recovery, rec);
      }
    }
    v.require(dip[0] > dip[1], "seed " + std::to_string(kSeeds[k]) + " fuzzy dip " + num(dip[0]) +
                                   " not above baseline dip " + num(dip[1]));
    if (!dips.empty()) dips += ", ";
    dips += num(dip[0], 3) + "/" + num(dip[1], 3);
  }
  v.note("min own dip " + num(min_own) + ", min gap to peers " + num(min_peer) +
         ", min recovery " + num(min_recovery));
  v.note("mean dip fuzzy/baseline per seed " + dips);
  return v;
}

Verdict criterion5(const std::vector<SeedRuns>& runs,
                   const std::vector<std::vector<sim::ScenarioResult>>& scen2) {
  Verdict v;
  const auto res = report::example_graph_residuals({});
  const double worst = *std::max_element(res.begin(), res.end());
  v.require(worst <= report::kFixedPointTolerance, "example graph residual " + sci(worst));
  v.note("example graph max residual " + sci(worst));

  const reputation::RankOptions opts;
  std::size_t snapshots = 0, max_iter = 0;
  double max_res = 0;
  auto scan = [&](const sim::ScenarioResult& r) {
    for (std::size_t i = 1; i < r.snapshots.size(); ++i) {
      const auto& s = r.snapshots[i];
      ++snapshots;
      max_iter = std::max(max_iter, s.iterations);
      max_res = std::max(max_res, s.residual);
    }
  };
  for (const auto& s : runs) {
    for (const auto& r : s.results) scan(r);
  }
  for (const auto& rs : scen2) {
    for (const auto& r : rs) scan(r);
  }
  v.require(max_res <= opts.tolerance, "snapshot residual " + sci(max_res));
  v.require(max_iter < opts.max_iterations, "iteration cap reached");
  v.note(std::to_string(snapshots) + " snapshots, max residual " + sci(max_res) +
         ", max iterations " + std::to_string(max_iter));
  return v;
}

Verdict criterion6() {
  Verdict v;
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t bad = 0;
  for (const auto& var : {fuzzy::default_qoc_variable(), fuzzy::default_top_variable(),
                          fuzzy::default_toc_variable()}) {
    for (int i = 0; i < 10000; ++i) {
      double s = 0;
      for (double d : var.fuzzify(u(gen)).degrees) s += d;
      bad += s != 1.0;
    }
  }
  v.require(bad == 0, std::to_string(bad) + " points with membership sum != 1");
  v.note("Ruspini sum exact at 3 x 10^4 points");

  const auto& toc = fuzzy::default_toc_variable().terms();
  std::vector<fuzzy::Trapezoid> sets;
  for (const auto& t : toc) sets.push_back(t.mf);
  double cog_err = 0;
  for (double clip : {0.2, 0.5, 1.0}) {
    cog_err = std::max(cog_err, std::abs(fuzzy::defuzzify_cog(fuzzy::AggregatedOutput::of(toc[2].mf)) - 0.5));
    cog_err = std::max(cog_err, std::abs(fuzzy::defuzzify_cog(
                                             fuzzy::AggregatedOutput(sets, {clip, 0, 0, 0, clip})) -
                                         0.5));
    cog_err = std::max(cog_err, std::abs(fuzzy::defuzzify_cog(fuzzy::AggregatedOutput(
                                             sets, {clip, 0.3, clip, 0.3, clip})) -
                                         0.5));
  }
  v.require(cog_err <= 1e-4, "symmetric COG error " + sci(cog_err));
  v.note("symmetric COG error " + sci(cog_err));

  const auto& e = fuzzy::Engine::standard();
  // A drop of a few ulps between mathematically equal centroids is rounding,
  // not a violation.
  constexpr double kTie = 1e-12;
  std::size_t violations = 0;
  double worst_drop = 0;
  std::string worst_at;
  auto check = [&](double x0, double y0, double x1, double y1) {
    const double drop = e.evaluate(x0, y0) - e.evaluate(x1, y1);
    if (drop > kTie) {
      ++violations;
      if (drop > worst_drop) {
        worst_drop = drop;
        worst_at = "(" + num(x0, 1) + "," + num(y0, 1) + ")->(" + num(x1, 1) + "," + num(y1, 1) + ")";
      }
    }
  };
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      if (i < 10) check(i / 10.0, j / 10.0, (i + 1) / 10.0, j / 10.0);
      if (j < 10) check(i / 10.0, j / 10.0, i / 10.0, (j + 1) / 10.0);
    }
  }
  v.require(violations == 0, "11x11 monotonicity: " + std::to_string(violations) +
                                 " decreasing steps, largest drop " + num(worst_drop) + " at " +
                                 worst_at);

  bool ordered = false;
  for (const auto& c : report::selfcheck()) {
    if (c.name == "fuzzy prototype ordering") {
      ordered = c.passed;
      v.note("prototypes " + c.detail);
    }
  }
  v.require(ordered, "prototype ordering");
  return v;
}

Verdict criterion7() {
  Verdict v;
  using namespace trust;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  auto track = [&worst](double got, oracle::real want) {
    worst = std::max(worst, static_cast<double>(std::fabs(static_cast<oracle::real>(got) - want)));
  };
  std::size_t nonzero_after_deadline = 0;
  for (int k = 0; k < 10000; ++k) {
    const unsigned te = 1 + static_cast<unsigned>(gen() % 63);
    const unsigned pe = static_cast<unsigned>(gen() % 64);
    track(expertise_score(ExpertiseSet::from_mask(te), ExpertiseSet::from_mask(pe)),
          oracle::expertise(te, pe));

    TimelinessParams tp;
    tp.floor = 0.9 * u(gen);
    tp.b = 0.5 + 10 * u(gen);
    tp.c = 0.05 + 2 * u(gen);
    tp.deadline = Days(1 + 13 * u(gen));
    const double t = tp.deadline.value * 1.2 * u(gen);
    track(timeliness_score(Days(t), tp), oracle::timeliness(t, tp.floor, tp.b, tp.c, tp.deadline.value));
    const double late = tp.deadline.value * (1 + u(gen));
    nonzero_after_deadline += timeliness_score(Days(late), tp) != 0.0;
    nonzero_after_deadline += timeliness_score(tp.deadline, tp) != 0.0;

    LocalityMap m;
    for (int i = 0; i < 25; ++i) m.counts.push_back(100 * u(gen));
    const std::size_t r = gen() % 25;
    track(locality_score(m, r), oracle::locality(m.counts, r));

    const GompertzParams g{0.5 + 10 * u(gen), 0.05 + 2 * u(gen)};
    const double x = 40 * u(gen);
    track(friendship_score(Years(x), g), oracle::friendship(x, g.b, g.c));
    track(interaction_score(Days(x), g), oracle::interaction(x, g.b, g.c));

    oracle::real s[5], w[5];
    std::array<double, 5> wd{};
    double total = 0;
    for (int i = 0; i < 5; ++i) {
      s[i] = u(gen);
      wd[i] = u(gen);
      total += wd[i];
    }
    for (auto& z : wd) z /= total;
    wd[4] = 1.0 - (wd[0] + wd[1] + wd[2] + wd[3]);
    for (int i = 0; i < 5; ++i) w[i] = wd[i];
    track(combine_top({static_cast<double>(s[0]), static_cast<double>(s[1]),
                       static_cast<double>(s[2]), static_cast<double>(s[3]),
                       static_cast<double>(s[4])},
                      TopWeights(wd)),
          oracle::weighted(s, w));
  }
  v.require(worst <= 1e-12, "max oracle deviation " + sci(worst));
  v.require(nonzero_after_deadline == 0, "timeliness nonzero at or after the deadline");
  v.note("10^4 fuzzed inputs per evaluator, max deviation " + sci(worst));
  v.note("timeliness exactly 0 for t >= d");
  return v;
}

Verdict criterion8() {
  Verdict v;
  const reputation::UpdatePolicy pol;
  bool neutral = true;
  for (int i = 0; i <= 40; ++i) {
    const double toc = 0.3 + 0.01 * i;
    for (double cur : {0.0, 0.13, 0.5, 0.99, 1.0}) {
      neutral = neutral && reputation::update_trust(cur, toc, 0.37, 0.61, pol) == cur;
    }
  }
  v.require(neutral, "neutral zone identity");
  v.require(reputation::update_trust(0.5, 0.8, 0.8, 1.0, pol) == 0.5, "perfect agreement");
  v.require(reputation::update_trust(0.5, 0.2, 0.2, 0.5, pol) == 0.4, "0.5 -> 0.4 penalty");
  v.note("neutral zone identity, zero delta on perfect agreement, 0.5 -> 0.4 penalty");
  return v;
}

Verdict criterion9(const std::vector<SeedRuns>& runs) {
  Verdict v;
  const auto cfg = scenario(1, runs.front().seed);
  const std::vector<sim::Method> all(sim::kAllMethods.begin(), sim::kAllMethods.end());
  const auto first = csv_bytes(cfg, runs.front().results);
  const auto again = csv_bytes(cfg, sim::run_methods(cfg, all));
  const auto other = csv_bytes(scenario(1, runs[1].seed), runs[1].results);
  v.require(first == again, "identical spec produced different bytes");
  v.require(first != other, "changing the seed left outputs unchanged");
  v.note("rerun of seed " + std::to_string(cfg.seed) + " byte-identical (" +
         std::to_string(first.size()) + " bytes); seed " + std::to_string(runs[1].seed) + " differs");
  return v;
}

}  // namespace

int main() {
  const std::vector<sim::Method> all(sim::kAllMethods.begin(), sim::kAllMethods.end());
  std::vector<SeedRuns> scen1;
  for (auto seed : kSeeds) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rs = sim::run_methods(scenario(1, seed), all);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    scen1.push_back({seed, std::move(rs), dt.count()});
  }
  std::vector<std::vector<sim::ScenarioResult>> scen2;
  for (auto seed : kSeeds) {
    scen2.push_back(sim::run_methods(scenario(2, seed), {sim::Method::Fuzzy, sim::Method::BaselineRep}));
  }

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"method ordering", [&] { return criterion1(scen1); }},
      {"two-level oscillation", [&] { return criterion2(scen1); }},
      {"reputation separation", [&] { return criterion3(scen1); }},
      {"transition detection", [&] { return criterion4(scen2); }},
      {"PageRank fixed point", [&] { return criterion5(scen1, scen2); }},
      {"fuzzy core properties", [&] { return criterion6(); }},
      {"evaluator oracles", [&] { return criterion7(); }},
      {"trust update unit truths", [&] { return criterion8(); }},
      {"determinism", [&] { return criterion9(scen1); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
