// fuzzytrust command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzytrust/fuzzytrust.h"

namespace {

struct ConfigDeleter {
  void operator()(ft_config* c) const { ft_config_destroy(c); }
};
struct RunDeleter {
  void operator()(ft_run* r) const { ft_run_destroy(r); }
};

int report_failure(ft_status st, const char* what) {
  std::fprintf(stderr, "error: %s: %s: %s\n", what, ft_status_name(st), ft_last_error());
  return st == FT_ERR_CONFIG || st == FT_ERR_INVALID_ARGUMENT ? 2 : 1;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("  %-4s  %-42s %s\n", passed ? "PASS" : "FAIL", name, detail);
}

int run_selfcheck(const std::vector<double>& weights) {
  std::printf("selfcheck\n");
  int ok = 0;
  const ft_status st =
      ft_selfcheck(weights.empty() ? nullptr : weights.data(), print_check, nullptr, &ok);
  if (st != FT_OK) return report_failure(st, "selfcheck");
  std::printf("%s\n", ok ? "all checks passed" : "some checks failed");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy trust evaluation and reputation simulator for participatory sensing"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  auto* run_cmd = app.add_subcommand("run", "Run a scenario (the default action)");
  auto* check_cmd = app.add_subcommand("selfcheck", "Run the built-in consistency checks");

  int scenario = 1;
  std::string methods = "all";
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  std::string config_path;
  std::size_t campaigns = 5000;
  std::size_t members = 100;
  std::vector<std::string> sets;
  std::vector<double> example_weights;
  bool selfcheck = false;

  auto* o_scenario = app.add_option("--scenario", scenario, "Scenario: 1 (stable) or 2 (transition)")
                         ->check(CLI::IsMember({1, 2}))
                         ->capture_default_str();
  app.add_option("--methods", methods, "Methods: all, or a comma list of fuzzy,average,baseline")
      ->capture_default_str();
  auto* o_seed = app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory for CSVs and manifest")->capture_default_str();
  app.add_option("--config", config_path, "Key-value configuration file (overrides defaults)");
  auto* o_campaigns =
      app.add_option("--campaigns", campaigns, "Number of campaigns")->capture_default_str();
  auto* o_members = app.add_option("--members", members, "Number of members")->capture_default_str();
  app.add_option("--set", sets, "Extra configuration override, key=value (repeatable)");
  app.add_flag("--selfcheck", selfcheck, "Run the self-check instead of a scenario");
  app.add_option("--example-weights", example_weights,
                 "Self-check graph weights: t13 t14 t21 t24 t32 t34")
      ->expected(6);

  CLI11_PARSE(app, argc, argv);

  if (selfcheck || check_cmd->parsed()) return run_selfcheck(example_weights);
  (void)run_cmd;

  ft_config* raw_cfg = nullptr;
  if (ft_status st = ft_config_create(&raw_cfg); st != FT_OK) return report_failure(st, "config");
  std::unique_ptr<ft_config, ConfigDeleter> cfg(raw_cfg);

  if (!config_path.empty()) {
    if (ft_status st = ft_config_load_file(cfg.get(), config_path.c_str()); st != FT_OK) {
      return report_failure(st, config_path.c_str());
    }
  }
  std::vector<std::pair<std::string, std::string>> overrides;
  if (o_scenario->count()) overrides.emplace_back("scenario", std::to_string(scenario));
  if (o_seed->count()) overrides.emplace_back("seed", std::to_string(seed));
  if (o_campaigns->count()) overrides.emplace_back("campaigns", std::to_string(campaigns));
  if (o_members->count()) overrides.emplace_back("members", std::to_string(members));
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", s.c_str());
      return 2;
    }
    overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& [k, v] : overrides) {
    if (ft_status st = ft_config_set(cfg.get(), k.c_str(), v.c_str()); st != FT_OK) {
      return report_failure(st, k.c_str());
    }
  }
  if (ft_status st = ft_config_validate(cfg.get()); st != FT_OK) return report_failure(st, "config");

  unsigned mask = 0;
  if (ft_status st = ft_parse_methods(methods.c_str(), &mask); st != FT_OK) {
    return report_failure(st, "--methods");
  }

  ft_run* raw_run = nullptr;
  if (ft_status st = ft_run_execute(cfg.get(), mask, &raw_run); st != FT_OK) {
    return report_failure(st, "run");
  }
  std::unique_ptr<ft_run, RunDeleter> run(raw_run);

  if (ft_status st = ft_run_write(run.get(), out_dir.c_str()); st != FT_OK) {
    return report_failure(st, "write");
  }

  std::printf("%-9s %10s %10s %10s %10s %10s %10s\n", "method", "trust", "trust(A)", "trust(B)",
              "rep(A)", "rep(B)", "rep A-B");
  for (std::size_t i = 0; i < ft_run_method_count(run.get()); ++i) {
    unsigned m = 0;
    const char* name = nullptr;
    ft_summary s{};
    ft_run_method_at(run.get(), i, &m, &name);
    if (ft_status st = ft_run_summary(run.get(), m, &s); st != FT_OK) {
      return report_failure(st, "summary");
    }
    std::printf("%-9s %10.4f %10.4f %10.4f %10.4f %10.4f %10.4f\n", name, s.mean_overall_trust,
                s.mean_trust_a_requesters, s.mean_trust_b_requesters, s.mean_reputation_a,
                s.mean_reputation_b, s.reputation_separation);
  }
  std::printf("wrote %s/{overall_trust,reputation,summary}.csv and manifest.json\n",
              out_dir.c_str());
  return 0;
}
