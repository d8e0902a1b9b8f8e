#include "fuzzytrust/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fuzzytrust/error.hpp"

namespace fuzzytrust::config {

namespace {

using sim::ScenarioConfig;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for '" + std::string(key) +
                    "': expected " + expected);
}

double to_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    bad_value(key, text, "a number");
  }
  return v;
}

std::uint64_t to_u64(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    bad_value(key, text, "a non-negative integer");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, text, "a boolean");
}

template <std::size_t N>
std::array<double, N> to_array(std::string_view key, std::string_view text) {
  const auto toks = split_ws(text);
  if (toks.size() != N) bad_value(key, text, "a whitespace-separated list of numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = to_double(key, toks[i]);
  return out;
}

template <std::size_t N>
std::string join(const std::array<double, N>& values) {
  std::string out;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ' ';
    out += format_number(values[i]);
  }
  return out;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)>;

Setter set_double(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view k, std::string_view v) {
    c.*field = to_double(k, v);
  };
}

Setter set_size(std::size_t ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view k, std::string_view v) {
    c.*field = static_cast<std::size_t>(to_u64(k, v));
  };
}

void set_profile_field(ScenarioConfig& c, std::size_t cat, std::string_view field,
                       std::string_view key, std::string_view value) {
  auto& p = c.profiles[cat];
  if (field == "participation") {
    p.participation = to_double(key, value);
  } else if (field == "expertise_count") {
    p.expertise_count = static_cast<std::size_t>(to_u64(key, value));
  } else if (field == "rt_cumulative") {
    p.rt_cumulative = to_array<3>(key, value);
  } else if (field == "rings") {
    p.ring_bounds = to_array<3>(key, value);
  } else if (field == "friendship_years") {
    const auto r = to_array<2>(key, value);
    p.friendship_min_years = r[0];
    p.friendship_max_years = r[1];
  } else if (field == "recent_interaction_prob") {
    p.recent_interaction_prob = to_double(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void set_term(std::vector<fuzzy::Term>& terms, std::string_view label, std::string_view key,
              std::string_view value) {
  for (auto& t : terms) {
    if (t.label == label) {
      const auto v = to_array<4>(key, value);
      try {
        t.mf = fuzzy::Trapezoid::make(v[0], v[1], v[2], v[3]);
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
      }
      return;
    }
  }
  throw ConfigError("unknown fuzzy term in key '" + std::string(key) + "'");
}

// Replaces the rule for the same (QoC, ToP) pair, or appends a new one.
void set_rule(ScenarioConfig& c, std::string_view key, std::string_view value) {
  const auto toks = split_ws(value);
  if (toks.size() != 4 || toks[2] != "->") {
    bad_value(key, value, "'<qoc_term> <top_term> -> <toc_term>'");
  }
  std::istringstream in(c.fuzzy.rules);
  std::string out;
  bool replaced = false;
  for (std::string line; std::getline(in, line);) {
    const auto cur = split_ws(line.substr(0, line.find('#')));
    if (cur.size() >= 2 && cur[0] == toks[0] && cur[1] == toks[1]) {
      if (replaced) continue;
      line = toks[0] + ' ' + toks[1] + " -> " + toks[3];
      replaced = true;
    }
    out += line + '\n';
  }
  if (!replaced) out += toks[0] + ' ' + toks[1] + " -> " + toks[3] + '\n';
  c.fuzzy.rules = out;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["scenario"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.scenario = static_cast<int>(to_u64(k, v));
    };
    t["seed"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.seed = to_u64(k, v);
    };
    t["members"] = set_size(&ScenarioConfig::n_members);
    t["campaigns"] = set_size(&ScenarioConfig::n_campaigns);
    t["category_a_size"] = set_size(&ScenarioConfig::category_a_size);
    t["reputation_interval"] = set_size(&ScenarioConfig::reputation_interval);
    t["revocation_threshold"] = set_double(&ScenarioConfig::revocation_threshold);
    t["qoc_noise"] = set_double(&ScenarioConfig::qoc_noise);
    t["transition.members"] = set_size(&ScenarioConfig::transition_members);
    t["transition.begin"] = set_size(&ScenarioConfig::transition_begin);
    t["transition.end"] = set_size(&ScenarioConfig::transition_end);
    t["participation.mode"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      const auto s = trim(v);
      if (s == "per_campaign") {
        c.participation_mode = sim::ParticipationMode::PerCampaign;
      } else if (s == "fixed_subset") {
        c.participation_mode = sim::ParticipationMode::FixedSubset;
      } else {
        bad_value(k, v, "per_campaign or fixed_subset");
      }
    };
    t["task.expertise_count"] = set_size(&ScenarioConfig::task_expertise_count);
    t["locality.grid_side"] = set_size(&ScenarioConfig::grid_side);
    t["locality.home_regions"] = set_size(&ScenarioConfig::home_regions);
    t["locality.home_count"] = set_double(&ScenarioConfig::home_count);
    t["friendship.step_years"] = set_double(&ScenarioConfig::friendship_step_years);
    t["interaction.stale_gap_days"] = set_double(&ScenarioConfig::stale_interaction_days);
    t["campaign_spacing_days"] = set_double(&ScenarioConfig::campaign_spacing_days);
    t["timeliness.floor"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.timeliness.floor = to_double(k, v);
    };
    t["timeliness.b"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.timeliness.b = to_double(k, v);
    };
    t["timeliness.c"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.timeliness.c = to_double(k, v);
    };
    t["timeliness.deadline_days"] = [](ScenarioConfig& c, std::string_view k,
                                       std::string_view v) {
      c.timeliness.deadline = Days(to_double(k, v));
    };
    t["friendship.b"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.friendship.b = to_double(k, v);
    };
    t["friendship.c"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.friendship.c = to_double(k, v);
    };
    t["interaction.b"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.interaction.b = to_double(k, v);
    };
    t["interaction.c"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.interaction.c = to_double(k, v);
    };
    t["top.weights"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      try {
        c.weights = trust::TopWeights(to_array<5>(k, v));
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string(k) + ": " + e.what());
      }
    };
    t["trust.reward_threshold"] = [](ScenarioConfig& c, std::string_view k,
                                     std::string_view v) {
      c.policy.reward_threshold = to_double(k, v);
    };
    t["trust.penalty_threshold"] = [](ScenarioConfig& c, std::string_view k,
                                      std::string_view v) {
      c.policy.penalty_threshold = to_double(k, v);
    };
    t["trust.initial"] = set_double(&ScenarioConfig::initial_trust);
    t["trust.subjective_rating"] = [](ScenarioConfig& c, std::string_view k,
                                      std::string_view v) {
      c.subjective_rating = to_bool(k, v);
    };
    t["reputation.initial"] = set_double(&ScenarioConfig::initial_reputation);
    t["rank.tolerance"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.rank.tolerance = to_double(k, v);
    };
    t["rank.max_iterations"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.rank.max_iterations = static_cast<std::size_t>(to_u64(k, v));
    };
    t["rank.rescale"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      const auto r = to_array<2>(k, v);
      c.rank.rescale_low = r[0];
      c.rank.rescale_high = r[1];
    };
    t["baseline.initial_rep"] = set_double(&ScenarioConfig::baseline_initial_rep);
    t["fuzzy.resolution"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.fuzzy.resolution = static_cast<std::size_t>(to_u64(k, v));
    };
    t["fuzzy.rule"] = set_rule;
    return t;
  }();
  return table;
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw InvalidArgument("cannot format number");
  return std::string(buf.data(), ptr);
}

std::vector<Entry> parse_key_values(std::string_view text) {
  std::vector<Entry> out;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    Entry e{trim(std::string_view(body).substr(0, eq)),
            trim(std::string_view(body).substr(eq + 1)), line_no};
    if (e.key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Entry> load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  const auto& table = setters();
  if (const auto it = table.find(key); it != table.end()) {
    it->second(cfg, key, value);
    return;
  }
  constexpr std::string_view kCategory = "category.";
  if (key.starts_with(kCategory) && key.size() > kCategory.size() + 2 &&
      key[kCategory.size() + 1] == '.') {
    const char cat = key[kCategory.size()];
    if (cat == 'A' || cat == 'B') {
      set_profile_field(cfg, cat == 'A' ? 0 : 1, key.substr(kCategory.size() + 2), key, value);
      return;
    }
  }
  for (auto [prefix, terms] :
       {std::pair<std::string_view, std::vector<fuzzy::Term>*>{"fuzzy.qoc.", &cfg.fuzzy.qoc_terms},
        {"fuzzy.top.", &cfg.fuzzy.top_terms},
        {"fuzzy.toc.", &cfg.fuzzy.toc_terms}}) {
    if (key.starts_with(prefix)) {
      set_term(*terms, key.substr(prefix.size()), key, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void apply_entries(ScenarioConfig& cfg, const std::vector<Entry>& entries) {
  for (const auto& e : entries) {
    try {
      apply(cfg, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
}

ScenarioConfig load_scenario_config(const std::string& path) {
  ScenarioConfig cfg;
  apply_entries(cfg, load_key_values(path));
  return cfg;
}

std::vector<std::pair<std::string, std::string>> to_key_values(const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto num = [&kv](std::string key, double v) { kv.emplace_back(std::move(key), format_number(v)); };
  auto whole = [&kv](std::string key, std::uint64_t v) {
    kv.emplace_back(std::move(key), std::to_string(v));
  };
  whole("scenario", static_cast<std::uint64_t>(cfg.scenario));
  whole("seed", cfg.seed);
  whole("members", cfg.n_members);
  whole("campaigns", cfg.n_campaigns);
  whole("category_a_size", cfg.category_a_size);
  whole("reputation_interval", cfg.reputation_interval);
  num("revocation_threshold", cfg.revocation_threshold);
  num("qoc_noise", cfg.qoc_noise);
  whole("transition.members", cfg.transition_members);
  whole("transition.begin", cfg.transition_begin);
  whole("transition.end", cfg.transition_end);
  kv.emplace_back("participation.mode", cfg.participation_mode == sim::ParticipationMode::PerCampaign
                                            ? "per_campaign"
                                            : "fixed_subset");
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& p = cfg.profiles[i];
    const std::string pre = std::string("category.") + (i == 0 ? "A" : "B") + ".";
    num(pre + "participation", p.participation);
    whole(pre + "expertise_count", p.expertise_count);
    kv.emplace_back(pre + "rt_cumulative", join(p.rt_cumulative));
    kv.emplace_back(pre + "rings", join(p.ring_bounds));
    kv.emplace_back(pre + "friendship_years",
                    join(std::array<double, 2>{p.friendship_min_years, p.friendship_max_years}));
    num(pre + "recent_interaction_prob", p.recent_interaction_prob);
  }
  whole("task.expertise_count", cfg.task_expertise_count);
  whole("locality.grid_side", cfg.grid_side);
  whole("locality.home_regions", cfg.home_regions);
  num("locality.home_count", cfg.home_count);
  num("friendship.step_years", cfg.friendship_step_years);
  num("interaction.stale_gap_days", cfg.stale_interaction_days);
  num("campaign_spacing_days", cfg.campaign_spacing_days);
  num("timeliness.floor", cfg.timeliness.floor);
  num("timeliness.b", cfg.timeliness.b);
  num("timeliness.c", cfg.timeliness.c);
  num("timeliness.deadline_days", cfg.timeliness.deadline.value);
  num("friendship.b", cfg.friendship.b);
  num("friendship.c", cfg.friendship.c);
  num("interaction.b", cfg.interaction.b);
  num("interaction.c", cfg.interaction.c);
  kv.emplace_back("top.weights", join(cfg.weights.values()));
  num("trust.reward_threshold", cfg.policy.reward_threshold);
  num("trust.penalty_threshold", cfg.policy.penalty_threshold);
  num("trust.initial", cfg.initial_trust);
  kv.emplace_back("trust.subjective_rating", cfg.subjective_rating ? "true" : "false");
  num("reputation.initial", cfg.initial_reputation);
  num("rank.tolerance", cfg.rank.tolerance);
  whole("rank.max_iterations", cfg.rank.max_iterations);
  kv.emplace_back("rank.rescale",
                  join(std::array<double, 2>{cfg.rank.rescale_low, cfg.rank.rescale_high}));
  num("baseline.initial_rep", cfg.baseline_initial_rep);
  whole("fuzzy.resolution", cfg.fuzzy.resolution);
  for (auto [prefix, terms] :
       {std::pair<std::string, const std::vector<fuzzy::Term>*>{"fuzzy.qoc.", &cfg.fuzzy.qoc_terms},
        {"fuzzy.top.", &cfg.fuzzy.top_terms},
        {"fuzzy.toc.", &cfg.fuzzy.toc_terms}}) {
    for (const auto& t : *terms) {
      kv.emplace_back(prefix + t.label,
                      join(std::array<double, 4>{t.mf.a, t.mf.b, t.mf.c, t.mf.d}));
    }
  }
  std::istringstream rules(cfg.fuzzy.rules);
  for (std::string line; std::getline(rules, line);) {
    const auto toks = split_ws(line.substr(0, line.find('#')));
    if (toks.size() == 4) kv.emplace_back("fuzzy.rule", toks[0] + ' ' + toks[1] + " -> " + toks[3]);
  }
  return kv;
}

}  // namespace fuzzytrust::config
