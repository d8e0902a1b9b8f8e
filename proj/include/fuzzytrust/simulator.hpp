#pragma once

// Campaign simulator: a social group of two behavioural categories issuing
// sequential sensing campaigns, scored by one of three contribution-trust
// methods, with periodic reputation updates.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzytrust/fuzzy.hpp"
#include "fuzzytrust/reputation.hpp"
#include "fuzzytrust/rng.hpp"
#include "fuzzytrust/trust_eval.hpp"
#include "fuzzytrust/units.hpp"

namespace fuzzytrust::sim {

enum class Method { Fuzzy, Average, BaselineRep };

std::string_view method_name(Method m) noexcept;
/// Accepts "fuzzy", "average", "baseline" (case-sensitive).
Method parse_method(std::string_view name);
inline constexpr std::array<Method, 3> kAllMethods{Method::Fuzzy, Method::Average,
                                                   Method::BaselineRep};

enum class Category : std::uint8_t { A = 0, B = 1 };
char category_label(Category c) noexcept;

enum class ParticipationMode { PerCampaign, FixedSubset };

/// Per-category draw settings.
struct CategoryProfile {
  double participation = 0.9;
  std::size_t expertise_count = 4;
  /// Cumulative probability that rt falls in (0,1], (1,d/2], (d/2,d].
  std::array<double, 3> rt_cumulative{0.4, 0.65, 0.9};
  /// Upper bounds of the ring weights N1, N2, N3 (each drawn uniform in [0, bound)).
  std::array<double, 3> ring_bounds{1.0, 0.9, 0.8};
  double friendship_min_years = 4.0;
  double friendship_max_years = 5.0;
  /// Probability that the latest interaction lies within the deadline window.
  double recent_interaction_prob = 0.8;

  void validate(const char* label) const;
};

CategoryProfile default_profile(Category c);

struct FuzzyConfig {
  std::vector<fuzzy::Term> qoc_terms;
  std::vector<fuzzy::Term> top_terms;
  std::vector<fuzzy::Term> toc_terms;
  std::string rules;
  std::size_t resolution = fuzzy::kDefaultResolution;

  static FuzzyConfig defaults();
  fuzzy::Engine build() const;
};

struct ScenarioConfig {
  int scenario = 1;
  std::uint64_t seed = 42;
  std::size_t n_members = 100;
  std::size_t n_campaigns = 5000;
  std::size_t category_a_size = 60;
  std::size_t reputation_interval = 100;
  double revocation_threshold = 0.5;
  double qoc_noise = 0.1;

  std::size_t transition_members = 10;
  std::size_t transition_begin = 1000;  // first campaign index inside the window
  std::size_t transition_end = 4000;    // first campaign index after the window

  ParticipationMode participation_mode = ParticipationMode::PerCampaign;
  std::array<CategoryProfile, 2> profiles{default_profile(Category::A),
                                          default_profile(Category::B)};

  std::size_t task_expertise_count = 3;
  std::size_t grid_side = 5;
  std::size_t home_regions = 3;
  double home_count = 100.0;
  double friendship_step_years = 0.02;
  double stale_interaction_days = 30.0;
  double campaign_spacing_days = 1.0;

  trust::TimelinessParams timeliness{};
  trust::GompertzParams friendship = trust::kFriendshipDefaults;
  trust::GompertzParams interaction = trust::kInteractionDefaults;
  trust::TopWeights weights{};

  reputation::UpdatePolicy policy{};
  reputation::RankOptions rank{};
  double initial_trust = reputation::kInitialTrust;
  double initial_reputation = reputation::kInitialReputation;
  bool subjective_rating = true;
  double baseline_initial_rep = 0.5;

  FuzzyConfig fuzzy = FuzzyConfig::defaults();

  /// Keep every contribution in the result (memory heavy; tests use it).
  bool record_contributions = false;

  /// Throws ConfigError on any violated constraint.
  void validate() const;

  std::size_t n_regions() const noexcept { return grid_side * grid_side; }
  Category native_category(std::size_t member) const noexcept {
    return member < category_a_size ? Category::A : Category::B;
  }
  bool is_transitioned(std::size_t member) const noexcept {
    return scenario == 2 && member < transition_members && member < category_a_size;
  }
  /// Behavioural profile of a member during a campaign.
  Category active_category(std::size_t member, std::size_t campaign) const noexcept;
};

/// Running mean of a participant's QoC history used by the Baseline-Rep method.
struct BaselineReputation {
  double rep = 0.5;
  std::size_t observations = 1;  // the prior counts as one observation

  /// Returns sqrt(rep * qoc) with the current rep, then folds qoc into the mean.
  double score(double qoc);
};

/// sqrt(rep * qoc) for rep, qoc in [0, 1].
double baseline_rep_toc(double rep, double qoc);

struct ProfileState {
  trust::ExpertiseSet expertise;
  trust::LocalityMap locality;
  std::array<double, 3> rings{};
};

struct Member {
  Category category = Category::A;
  std::array<ProfileState, 2> profiles;  // indexed by Category
  bool abstainer = false;                // only used by ParticipationMode::FixedSubset
  BaselineReputation baseline;
};

/// How a participant and a requester relate socially. Friendship clocks are
/// kept per requester profile so a temporary category change does not
/// overwrite the clock of the normal profile.
struct PairState {
  std::array<Years, 2> friendship{};
  Days latest_interaction{0.0};
  bool interacted = false;
};

struct Population {
  std::vector<Member> members;
  std::vector<PairState> pairs;  // [participant * n + requester]
  reputation::TrustMatrix trust{0};
  std::vector<double> reputation;

  PairState& pair(std::size_t participant, std::size_t requester) {
    return pairs[participant * members.size() + requester];
  }
  const PairState& pair(std::size_t participant, std::size_t requester) const {
    return pairs[participant * members.size() + requester];
  }
};

Population init_population(const ScenarioConfig& cfg);

struct Task {
  trust::ExpertiseSet expertise;
  std::size_t region = 0;
};

Task draw_task(const ScenarioConfig& cfg, std::size_t campaign);

/// Per-campaign Bernoulli participation draw for a profile.
bool draw_participation(const CategoryProfile& profile, CounterRng& rng);

/// Response time in days, conditioned on participating: band chosen by the
/// conditional band masses, uniform within the band.
Days draw_response_time(const CategoryProfile& profile, Days deadline, CounterRng& rng);

struct Contribution {
  std::size_t campaign = 0;
  std::size_t participant = 0;
  trust::TopScores scores;
  double top = 0.0;
  double qoc = 0.0;
  double toc = 0.0;
  bool revoked = false;
  Method method = Method::Fuzzy;
};

struct CampaignResult {
  std::size_t campaign = 0;
  std::size_t requester = 0;
  Category requester_category = Category::A;
  std::size_t contributions = 0;
  std::size_t revoked = 0;
  std::optional<double> overall_trust;  // empty when every contribution was revoked
  std::vector<Contribution> detail;     // filled when record_contributions is set
};

/// Mean ToC of the non-revoked contributions; empty if none survive.
std::optional<double> overall_trust(const std::vector<double>& tocs, double revocation_threshold);

struct ReputationSnapshot {
  std::size_t interval = 0;
  std::size_t campaigns_done = 0;
  /// Reputation as reported by the method: the PageRank score for Fuzzy and
  /// Average, the participant's running QoC reputation for Baseline-Rep.
  std::vector<double> reputation;
  /// PageRank score (drives the requester weight in trust updates for every method).
  std::vector<double> rank;
  std::size_t iterations = 0;
  double residual = 0.0;
};

struct Summary {
  double mean_overall_trust = 0.0;
  double mean_trust_a_requesters = 0.0;
  double mean_trust_b_requesters = 0.0;
  std::size_t undefined_campaigns = 0;
  double mean_reputation_a = 0.0;
  double mean_reputation_b = 0.0;
  double reputation_separation = 0.0;
  /// Fraction of members inside the intersection of the A and B reputation ranges.
  double reputation_overlap = 0.0;
  std::size_t max_rank_iterations = 0;
  double max_rank_residual = 0.0;
};

struct ScenarioResult {
  Method method = Method::Fuzzy;
  std::vector<char> categories;  // native category label per member
  std::vector<CampaignResult> campaigns;
  std::vector<ReputationSnapshot> snapshots;
  Summary summary;
};

/// Stateful single-writer campaign loop for one method.
class Simulation {
 public:
  Simulation(ScenarioConfig cfg, Method method);

  const ScenarioConfig& config() const noexcept { return cfg_; }
  const Population& population() const noexcept { return pop_; }
  Method method() const noexcept { return method_; }

  /// Scores one participant's contribution to the given campaign and advances
  /// the pair's friendship clock and latest-interaction time. Returns nothing
  /// when the participant declines to contribute.
  std::optional<Contribution> evaluate_contribution(std::size_t requester,
                                                    std::size_t participant,
                                                    std::size_t campaign, const Task& task);

  CampaignResult run_campaign(std::size_t campaign);
  ReputationSnapshot update_reputation(std::size_t campaigns_done);
  /// Per-member reputation as reported by this method (see ReputationSnapshot).
  std::vector<double> reported_reputation() const;

  double toc_for(double top, double qoc, std::size_t participant);

 private:
  ScenarioConfig cfg_;
  Method method_;
  fuzzy::Engine engine_;
  Population pop_;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg, Method method);

/// Runs each method on its own thread; results are in the order given.
std::vector<ScenarioResult> run_methods(const ScenarioConfig& cfg,
                                        const std::vector<Method>& methods);

Summary summarize(const ScenarioConfig& cfg, const std::vector<CampaignResult>& campaigns,
                  const std::vector<ReputationSnapshot>& snapshots);

}  // namespace fuzzytrust::sim
