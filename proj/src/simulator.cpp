#include "fuzzytrust/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "fuzzytrust/error.hpp"

namespace fuzzytrust::sim {

namespace {

constexpr std::size_t idx(Category c) { return static_cast<std::size_t>(c); }

void require_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(what + " must be a probability in [0, 1]");
}

// k distinct values from [0, n) by a partial Fisher-Yates shuffle.
std::vector<std::size_t> draw_distinct(std::size_t n, std::size_t k, CounterRng& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

trust::ExpertiseSet draw_expertise(std::size_t count, CounterRng& rng) {
  trust::ExpertiseSet set;
  for (std::size_t a : draw_distinct(trust::kExpertiseUniverse, count, rng)) {
    set.insert(static_cast<unsigned>(a));
  }
  return set;
}

ProfileState draw_profile(const ScenarioConfig& cfg, const CategoryProfile& prof,
                          CounterRng& rng) {
  ProfileState st;
  st.expertise = draw_expertise(prof.expertise_count, rng);

  const std::size_t side = cfg.grid_side;
  const auto homes = draw_distinct(cfg.n_regions(), cfg.home_regions, rng);
  for (std::size_t k = 0; k < 3; ++k) {
    const double u = rng.uniform01();
    st.rings[k] = prof.ring_bounds[k] * u;
  }
  st.locality.counts.assign(cfg.n_regions(), 0.0);
  for (std::size_t region = 0; region < cfg.n_regions(); ++region) {
    const auto row = static_cast<long>(region / side);
    const auto col = static_cast<long>(region % side);
    long nearest = std::numeric_limits<long>::max();
    for (std::size_t h : homes) {
      const long dr = std::labs(row - static_cast<long>(h / side));
      const long dc = std::labs(col - static_cast<long>(h % side));
      nearest = std::min(nearest, std::max(dr, dc));
    }
    if (nearest == 0) {
      st.locality.counts[region] = cfg.home_count;
    } else if (nearest <= 3) {
      st.locality.counts[region] = cfg.home_count * st.rings[static_cast<std::size_t>(nearest - 1)];
    }
  }
  return st;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::Fuzzy:
      return "fuzzy";
    case Method::Average:
      return "average";
    case Method::BaselineRep:
      return "baseline";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "' (expected fuzzy, average, baseline)");
}

char category_label(Category c) noexcept { return c == Category::A ? 'A' : 'B'; }

void CategoryProfile::validate(const char* label) const {
  const std::string p = std::string("category ") + label + " ";
  require_probability(participation, p + "participation");
  require_probability(recent_interaction_prob, p + "recent interaction probability");
  if (expertise_count > trust::kExpertiseUniverse) {
    throw ConfigError(p + "expertise count exceeds the expertise universe");
  }
  double prev = 0.0;
  for (double c : rt_cumulative) {
    require_probability(c, p + "response-time cumulative probability");
    if (c < prev) throw ConfigError(p + "response-time probabilities must be cumulative");
    prev = c;
  }
  if (participation > 0.0 && !(rt_cumulative[2] > 0.0)) {
    throw ConfigError(p + "response-time bands carry no probability mass");
  }
  for (double b : ring_bounds) {
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError(p + "ring bounds must lie in [0, 1]");
  }
  if (!(0.0 <= friendship_min_years && friendship_min_years <= friendship_max_years)) {
    throw ConfigError(p + "friendship range must satisfy 0 <= min <= max");
  }
}

CategoryProfile default_profile(Category c) {
  if (c == Category::A) return CategoryProfile{};
  CategoryProfile b;
  b.participation = 0.5;
  b.expertise_count = 2;
  b.rt_cumulative = {0.1, 0.3, 0.5};
  b.ring_bounds = {0.5, 0.0, 0.0};
  b.friendship_min_years = 0.0;
  b.friendship_max_years = 1.0;
  b.recent_interaction_prob = 0.2;
  return b;
}

FuzzyConfig FuzzyConfig::defaults() {
  FuzzyConfig f;
  f.qoc_terms = fuzzy::default_qoc_variable().terms();
  f.top_terms = fuzzy::default_top_variable().terms();
  f.toc_terms = fuzzy::default_toc_variable().terms();
  f.rules = fuzzy::default_rule_text();
  return f;
}

fuzzy::Engine FuzzyConfig::build() const {
  return fuzzy::Engine(fuzzy::LinguisticVariable("QoC", qoc_terms),
                       fuzzy::LinguisticVariable("ToP", top_terms),
                       fuzzy::LinguisticVariable("ToC", toc_terms), rules, resolution);
}

void ScenarioConfig::validate() const {
  if (scenario != 1 && scenario != 2) throw ConfigError("scenario must be 1 or 2");
  if (n_members < 2) throw ConfigError("at least two members are required");
  if (n_campaigns == 0) throw ConfigError("number of campaigns must be positive");
  if (category_a_size > n_members) throw ConfigError("category A is larger than the group");
  if (reputation_interval == 0) throw ConfigError("reputation interval must be positive");
  require_probability(revocation_threshold, "revocation threshold");
  if (!(qoc_noise >= 0.0 && qoc_noise <= 1.0)) throw ConfigError("QoC noise must lie in [0, 1]");
  if (scenario == 2) {
    if (transition_members > category_a_size) {
      throw ConfigError("transitioned members must come from category A");
    }
    if (!(1 <= transition_begin && transition_begin <= transition_end &&
          transition_end <= n_campaigns)) {
      throw ConfigError("transition window must lie within [1, campaigns]");
    }
  }
  profiles[0].validate("A");
  profiles[1].validate("B");
  if (task_expertise_count == 0 || task_expertise_count > trust::kExpertiseUniverse) {
    throw ConfigError("task expertise count must be in [1, 6]");
  }
  if (grid_side == 0) throw ConfigError("locality grid must not be empty");
  if (home_regions == 0 || home_regions > n_regions()) {
    throw ConfigError("home region count must be in [1, regions]");
  }
  if (!(home_count > 0.0)) throw ConfigError("home region count must be positive");
  if (!(friendship_step_years >= 0.0)) throw ConfigError("friendship step must be non-negative");
  if (!(stale_interaction_days >= 0.0)) throw ConfigError("stale interaction gap must be >= 0");
  if (!(campaign_spacing_days >= 0.0)) throw ConfigError("campaign spacing must be >= 0");
  try {
    timeliness.validate();
    friendship.validate();
    interaction.validate();
    policy.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  require_probability(initial_trust, "initial trust");
  require_probability(initial_reputation, "initial reputation");
  require_probability(baseline_initial_rep, "baseline initial reputation");
  if (!(rank.tolerance > 0.0) || rank.max_iterations == 0) {
    throw ConfigError("rank tolerance and iteration cap must be positive");
  }
  if (!(0.0 <= rank.rescale_low && rank.rescale_low < rank.rescale_high &&
        rank.rescale_high <= 1.0)) {
    throw ConfigError("rank rescale bounds must satisfy 0 <= low < high <= 1");
  }
  fuzzy.build();
}

Category ScenarioConfig::active_category(std::size_t member, std::size_t campaign) const noexcept {
  if (is_transitioned(member) && campaign >= transition_begin && campaign < transition_end) {
    return Category::B;
  }
  return native_category(member);
}

double baseline_rep_toc(double rep, double qoc) {
  if (!(rep >= 0.0 && rep <= 1.0 && qoc >= 0.0 && qoc <= 1.0)) {
    throw InvalidArgument("baseline reputation and QoC must lie in [0, 1]");
  }
  return std::sqrt(rep * qoc);
}

double BaselineReputation::score(double qoc) {
  const double toc = baseline_rep_toc(rep, qoc);
  ++observations;
  rep += (qoc - rep) / static_cast<double>(observations);
  rep = std::clamp(rep, 0.0, 1.0);
  return toc;
}

Population init_population(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_members;
  Population pop;
  pop.members.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    auto& mem = pop.members[m];
    mem.category = cfg.native_category(m);
    CounterRng rng(cfg.seed, {stream::kProfile, m});
    for (Category c : {Category::A, Category::B}) {
      mem.profiles[idx(c)] = draw_profile(cfg, cfg.profiles[idx(c)], rng);
    }
    CounterRng abstain(cfg.seed, {stream::kAbstain, m});
    mem.abstainer = !abstain.bernoulli(cfg.profiles[idx(mem.category)].participation);
    mem.baseline = BaselineReputation{cfg.baseline_initial_rep, 1};
  }
  pop.pairs.resize(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < n; ++r) {
      if (p == r) continue;
      CounterRng rng(cfg.seed, {stream::kFriendship, p, r});
      auto& pair = pop.pair(p, r);
      for (Category c : {Category::A, Category::B}) {
        const auto& prof = cfg.profiles[idx(c)];
        pair.friendship[idx(c)] =
            Years(rng.uniform(prof.friendship_min_years, prof.friendship_max_years));
      }
    }
  }
  pop.trust = reputation::TrustMatrix(n, cfg.initial_trust);
  pop.reputation.assign(n, cfg.initial_reputation);
  return pop;
}

Task draw_task(const ScenarioConfig& cfg, std::size_t campaign) {
  CounterRng rng(cfg.seed, {stream::kTask, campaign});
  Task t;
  t.expertise = draw_expertise(cfg.task_expertise_count, rng);
  t.region = static_cast<std::size_t>(rng.below(cfg.n_regions()));
  return t;
}

bool draw_participation(const CategoryProfile& profile, CounterRng& rng) {
  return rng.bernoulli(profile.participation);
}

Days draw_response_time(const CategoryProfile& profile, Days deadline, CounterRng& rng) {
  const auto& cum = profile.rt_cumulative;
  const double d = deadline.value;
  const double u = rng.uniform01() * cum[2];
  const double v = rng.uniform01();
  double lo = d / 2.0;
  double hi = d;
  if (u < cum[0]) {
    lo = 0.0;
    hi = 1.0;
  } else if (u < cum[1]) {
    lo = 1.0;
    hi = d / 2.0;
  }
  return Days(hi - (hi - lo) * v);
}

std::optional<double> overall_trust(const std::vector<double>& tocs, double revocation_threshold) {
  double sum = 0.0;
  std::size_t kept = 0;
  for (double t : tocs) {
    if (t < revocation_threshold) continue;
    sum += t;
    ++kept;
  }
  if (kept == 0) return std::nullopt;
  return sum / static_cast<double>(kept);
}

Simulation::Simulation(ScenarioConfig cfg, Method method)
    : cfg_(std::move(cfg)),
      method_(method),
      engine_(cfg_.fuzzy.build()),
      pop_(init_population(cfg_)) {}

double Simulation::toc_for(double top, double qoc, std::size_t participant) {
  switch (method_) {
    case Method::Fuzzy:
      return engine_.evaluate(qoc, top);
    case Method::Average:
      return (top + qoc) / 2.0;
    case Method::BaselineRep:
      return pop_.members.at(participant).baseline.score(qoc);
  }
  throw InvalidArgument("unknown method");
}

std::optional<Contribution> Simulation::evaluate_contribution(std::size_t requester,
                                                              std::size_t participant,
                                                              std::size_t campaign,
                                                              const Task& task) {
  if (requester >= cfg_.n_members || participant >= cfg_.n_members || requester == participant) {
    throw InvalidArgument("invalid requester/participant pair");
  }
  const Category pc = cfg_.active_category(participant, campaign);
  const Category rc = cfg_.active_category(requester, campaign);
  const auto& prof = cfg_.profiles[idx(pc)];
  const auto& req_prof = cfg_.profiles[idx(rc)];
  auto& member = pop_.members[participant];
  auto& pair = pop_.pair(participant, requester);

  CounterRng rng(cfg_.seed, {stream::kContribution, campaign, participant});
  bool willing = draw_participation(prof, rng);
  if (cfg_.participation_mode == ParticipationMode::FixedSubset) {
    willing = pc == member.category ? !member.abstainer : willing;
  }
  if (!willing) return std::nullopt;

  const Days rt = draw_response_time(prof, cfg_.timeliness.deadline, rng);
  const bool recent = rng.bernoulli(req_prof.recent_interaction_prob);
  const double gap_draw = rng.uniform_left_open(0.0, cfg_.timeliness.deadline.value);
  const Days gap(recent ? gap_draw : cfg_.stale_interaction_days);
  const double noise = rng.uniform(-cfg_.qoc_noise, cfg_.qoc_noise);

  const auto& state = member.profiles[idx(pc)];
  Contribution c;
  c.campaign = campaign;
  c.participant = participant;
  c.method = method_;
  c.scores.expertise = trust::expertise_score(task.expertise, state.expertise);
  c.scores.timeliness = trust::timeliness_score(rt, cfg_.timeliness);
  c.scores.locality = trust::locality_score(state.locality, task.region);
  c.scores.friendship = trust::friendship_score(pair.friendship[idx(rc)], cfg_.friendship);
  c.scores.interaction = trust::interaction_score(gap, cfg_.interaction);
  c.top = trust::combine_top(c.scores, cfg_.weights);
  c.qoc = std::clamp(c.top + noise, 0.0, 1.0);
  c.toc = toc_for(c.top, c.qoc, participant);
  c.revoked = c.toc < cfg_.revocation_threshold;

  pair.friendship[idx(rc)] = pair.friendship[idx(rc)] + Years(cfg_.friendship_step_years);
  pair.latest_interaction = Days(static_cast<double>(campaign) * cfg_.campaign_spacing_days);
  pair.interacted = true;
  return c;
}

CampaignResult Simulation::run_campaign(std::size_t campaign) {
  const std::size_t n = cfg_.n_members;
  const std::size_t requester = campaign % n;
  const Task task = draw_task(cfg_, campaign);
  const double requester_rep = pop_.reputation[requester];

  CampaignResult res;
  res.campaign = campaign;
  res.requester = requester;
  res.requester_category = cfg_.active_category(requester, campaign);

  std::vector<double> tocs;
  tocs.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (p == requester) continue;
    auto contrib = evaluate_contribution(requester, p, campaign, task);
    if (!contrib) continue;
    tocs.push_back(contrib->toc);
    ++res.contributions;
    if (contrib->revoked) ++res.revoked;

    reputation::RequesterEvaluation re;
    if (cfg_.subjective_rating) {
      CounterRng rng(cfg_.seed, {stream::kRating, campaign, p});
      re = reputation::subjective_rating(contrib->toc, requester_rep, rng);
    }
    const double updated = reputation::update_trust(pop_.trust.at(requester, p), contrib->toc, re,
                                                    requester_rep, cfg_.policy);
    pop_.trust.set(requester, p, updated);
    if (cfg_.record_contributions) res.detail.push_back(*contrib);
  }
  res.overall_trust = overall_trust(tocs, cfg_.revocation_threshold);
  return res;
}

ReputationSnapshot Simulation::update_reputation(std::size_t campaigns_done) {
  auto ranked = reputation::compute_reputation(pop_.trust, pop_.reputation, cfg_.rank);
  pop_.reputation = ranked.reputation;
  ReputationSnapshot snap;
  snap.interval = campaigns_done / cfg_.reputation_interval;
  snap.campaigns_done = campaigns_done;
  snap.rank = std::move(ranked.reputation);
  snap.reputation = reported_reputation();
  snap.iterations = ranked.iterations;
  snap.residual = ranked.residual;
  return snap;
}

std::vector<double> Simulation::reported_reputation() const {
  if (method_ != Method::BaselineRep) return pop_.reputation;
  std::vector<double> out;
  out.reserve(pop_.members.size());
  for (const auto& m : pop_.members) out.push_back(m.baseline.rep);
  return out;
}

Summary summarize(const ScenarioConfig& cfg, const std::vector<CampaignResult>& campaigns,
                  const std::vector<ReputationSnapshot>& snapshots) {
  Summary s;
  std::vector<double> all, a, b;
  for (const auto& c : campaigns) {
    if (!c.overall_trust) {
      ++s.undefined_campaigns;
      continue;
    }
    all.push_back(*c.overall_trust);
    (c.requester_category == Category::A ? a : b).push_back(*c.overall_trust);
  }
  s.mean_overall_trust = mean_of(all);
  s.mean_trust_a_requesters = mean_of(a);
  s.mean_trust_b_requesters = mean_of(b);

  if (!snapshots.empty()) {
    const auto& rho = snapshots.back().reputation;
    std::vector<double> ra, rb;
    for (std::size_t m = 0; m < rho.size(); ++m) {
      (cfg.native_category(m) == Category::A ? ra : rb).push_back(rho[m]);
    }
    s.mean_reputation_a = mean_of(ra);
    s.mean_reputation_b = mean_of(rb);
    s.reputation_separation = s.mean_reputation_a - s.mean_reputation_b;
    if (!ra.empty() && !rb.empty()) {
      const double lo = std::max(*std::min_element(ra.begin(), ra.end()),
                                 *std::min_element(rb.begin(), rb.end()));
      const double hi = std::min(*std::max_element(ra.begin(), ra.end()),
                                 *std::max_element(rb.begin(), rb.end()));
      if (lo <= hi) {
        const auto inside = std::count_if(rho.begin(), rho.end(),
                                          [&](double v) { return v >= lo && v <= hi; });
        s.reputation_overlap = static_cast<double>(inside) / static_cast<double>(rho.size());
      }
    }
    for (const auto& snap : snapshots) {
      s.max_rank_iterations = std::max(s.max_rank_iterations, snap.iterations);
      s.max_rank_residual = std::max(s.max_rank_residual, snap.residual);
    }
  }
  return s;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, Method method) {
  Simulation sim(cfg, method);
  ScenarioResult out;
  out.method = method;
  for (std::size_t m = 0; m < cfg.n_members; ++m) {
    out.categories.push_back(category_label(cfg.native_category(m)));
  }
  out.campaigns.reserve(cfg.n_campaigns);

  ReputationSnapshot initial;
  initial.rank = sim.population().reputation;
  initial.reputation = sim.reported_reputation();
  out.snapshots.push_back(std::move(initial));

  for (std::size_t c = 0; c < cfg.n_campaigns; ++c) {
    out.campaigns.push_back(sim.run_campaign(c));
    if ((c + 1) % cfg.reputation_interval == 0) {
      out.snapshots.push_back(sim.update_reputation(c + 1));
    }
  }
  out.summary = summarize(cfg, out.campaigns, out.snapshots);
  return out;
}

std::vector<ScenarioResult> run_methods(const ScenarioConfig& cfg,
                                        const std::vector<Method>& methods) {
  cfg.validate();
  std::vector<std::future<ScenarioResult>> jobs;
  jobs.reserve(methods.size());
  for (Method m : methods) {
    jobs.push_back(std::async(std::launch::async, [&cfg, m] { return run_scenario(cfg, m); }));
  }
  std::vector<ScenarioResult> out;
  out.reserve(methods.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace fuzzytrust::sim
