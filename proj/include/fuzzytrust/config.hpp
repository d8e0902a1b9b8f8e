#pragma once

// Key-value configuration files:
//
//   # comment
//   seed = 7
//   category.A.rt_cumulative = 0.4 0.65 0.9
//   fuzzy.qoc.Low = 0 0 0.15 0.35
//   fuzzy.rule = Low Low -> VL      (repeatable; replaces the rule for that pair)
//
// Later assignments override earlier ones; unknown keys are errors.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzytrust/simulator.hpp"

namespace fuzzytrust::config {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Parses `key = value` lines. Throws ConfigError on malformed lines.
std::vector<Entry> parse_key_values(std::string_view text);
std::vector<Entry> load_key_values(const std::string& path);

/// Applies one assignment. Throws ConfigError for unknown keys or bad values.
void apply(sim::ScenarioConfig& cfg, std::string_view key, std::string_view value);
void apply_entries(sim::ScenarioConfig& cfg, const std::vector<Entry>& entries);

/// Built-in defaults overridden by the file.
sim::ScenarioConfig load_scenario_config(const std::string& path);

/// Every setting as key/value pairs, in a stable order; re-applying them
/// reproduces the configuration.
std::vector<std::pair<std::string, std::string>> to_key_values(const sim::ScenarioConfig& cfg);

/// Shortest round-trippable decimal form of a double.
std::string format_number(double v);

}  // namespace fuzzytrust::config
