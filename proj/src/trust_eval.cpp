#include "fuzzytrust/trust_eval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fuzzytrust/error.hpp"

namespace fuzzytrust::trust {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) {
    std::ostringstream os;
    os << what << " must be non-negative, got " << v;
    throw InvalidArgument(os.str());
  }
}

void require_score(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " score must lie in [0, 1], got " << v;
    throw InvalidArgument(os.str());
  }
}

double gompertz(double b, double c, double t) { return std::exp(-b * std::exp(-c * t)); }

}  // namespace

ExpertiseSet::ExpertiseSet(std::initializer_list<unsigned> areas) {
  for (unsigned a : areas) insert(a);
}

ExpertiseSet ExpertiseSet::from_mask(std::uint32_t mask) {
  if (mask >> kExpertiseUniverse) throw InvalidArgument("expertise mask outside the universe");
  ExpertiseSet s;
  s.mask_ = mask;
  return s;
}

void ExpertiseSet::insert(unsigned area) {
  if (area >= kExpertiseUniverse) {
    throw InvalidArgument("expertise area " + std::to_string(area) + " outside the universe");
  }
  mask_ |= 1U << area;
}

std::size_t ExpertiseSet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(mask_));
}

void TimelinessParams::validate() const {
  if (!(floor >= 0.0 && floor < 1.0)) throw InvalidArgument("timeliness floor must be in [0, 1)");
  if (!(b > 0.0 && c > 0.0 && deadline.value > 0.0)) {
    throw InvalidArgument("timeliness b, c and deadline must be positive");
  }
}

void GompertzParams::validate() const {
  if (!(b > 0.0 && c > 0.0)) throw InvalidArgument("Gompertz b and c must be positive");
}

double LocalityMap::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

TopWeights::TopWeights() : w_{0.2, 0.2, 0.2, 0.2, 0.2} {}

TopWeights::TopWeights(std::array<double, 5> w) : w_(w) {
  double sum = 0.0;
  for (double v : w_) {
    require_nonnegative(v, "ToP weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "ToP weights must sum to 1, got " << sum;
    throw InvalidArgument(os.str());
  }
}

double expertise_score(const ExpertiseSet& task, const ExpertiseSet& participant) {
  if (task.size() == 0) throw InvalidArgument("task expertise set must not be empty");
  return static_cast<double>(task.intersect(participant).size()) /
         static_cast<double>(task.size());
}

double timeliness_score(Days response_time, const TimelinessParams& p) {
  require_nonnegative(response_time.value, "response time");
  if (!(response_time < p.deadline)) return 0.0;
  return 1.0 - (1.0 - p.floor) * gompertz(p.b, p.c, response_time.value);
}

double locality_score(const LocalityMap& map, std::size_t region) {
  if (region >= map.counts.size()) {
    throw InvalidArgument("region " + std::to_string(region) + " outside the locality map");
  }
  for (double v : map.counts) require_nonnegative(v, "locality count");
  const double total = map.total();
  if (!(total > 0.0)) throw UndefinedValue("locality is undefined for an empty sample map");
  return map.counts[region] / total;
}

double friendship_score(Years elapsed, const GompertzParams& p) {
  require_nonnegative(elapsed.value, "friendship duration");
  return gompertz(p.b, p.c, elapsed.value);
}

double interaction_score(Days gap, const GompertzParams& p) {
  require_nonnegative(gap.value, "interaction gap");
  return -std::expm1(-p.b * std::exp(-p.c * gap.value));
}

double combine_top(const TopScores& s, const TopWeights& w) {
  require_score(s.expertise, "expertise");
  require_score(s.timeliness, "timeliness");
  require_score(s.locality, "locality");
  require_score(s.friendship, "friendship");
  require_score(s.interaction, "interaction");
  const auto& v = w.values();
  const double top = v[0] * s.expertise + v[1] * s.timeliness + v[2] * s.locality +
                     v[3] * s.friendship + v[4] * s.interaction;
  return std::clamp(top, 0.0, 1.0);
}

}  // namespace fuzzytrust::trust
