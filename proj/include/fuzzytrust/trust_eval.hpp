#pragma once

// Trust-of-participant evaluators: expertise, timeliness, locality,
// friendship duration, interaction gap, and their weighted combination.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "fuzzytrust/units.hpp"

namespace fuzzytrust::trust {

inline constexpr std::size_t kExpertiseUniverse = 6;

/// Subset of the expertise-area universe {0, ..., 5}, stored as a bitmask.
class ExpertiseSet {
 public:
  ExpertiseSet() = default;
  ExpertiseSet(std::initializer_list<unsigned> areas);
  static ExpertiseSet from_mask(std::uint32_t mask);

  void insert(unsigned area);
  bool contains(unsigned area) const noexcept { return (mask_ >> area) & 1U; }
  std::size_t size() const noexcept;
  std::uint32_t mask() const noexcept { return mask_; }
  ExpertiseSet intersect(const ExpertiseSet& other) const noexcept {
    return from_mask(mask_ & other.mask_);
  }

  friend bool operator==(const ExpertiseSet&, const ExpertiseSet&) = default;

 private:
  std::uint32_t mask_ = 0;
};

struct TimelinessParams {
  double floor = 0.3;  // x
  double b = 6.0;
  double c = 0.6;
  Days deadline{7.0};

  void validate() const;
};

struct GompertzParams {
  double b = 1.0;
  double c = 1.0;

  void validate() const;
};

inline constexpr GompertzParams kFriendshipDefaults{5.0, 1.0};
inline constexpr GompertzParams kInteractionDefaults{10.0, 0.2};

/// Sample counts per region.
struct LocalityMap {
  std::vector<double> counts;

  double total() const noexcept;
};

class TopWeights {
 public:
  /// Uniform 1/5 weights.
  TopWeights();
  /// Throws InvalidArgument on negative weights or a sum away from 1 by more than 1e-12.
  explicit TopWeights(std::array<double, 5> w);

  const std::array<double, 5>& values() const noexcept { return w_; }

 private:
  std::array<double, 5> w_;
};

struct TopScores {
  double expertise = 0.0;
  double timeliness = 0.0;
  double locality = 0.0;
  double friendship = 0.0;
  double interaction = 0.0;
};

double expertise_score(const ExpertiseSet& task, const ExpertiseSet& participant);
double timeliness_score(Days response_time, const TimelinessParams& p);
double locality_score(const LocalityMap& map, std::size_t region);
double friendship_score(Years elapsed, const GompertzParams& p = kFriendshipDefaults);
double interaction_score(Days gap, const GompertzParams& p = kInteractionDefaults);
double combine_top(const TopScores& s, const TopWeights& w);

}  // namespace fuzzytrust::trust
