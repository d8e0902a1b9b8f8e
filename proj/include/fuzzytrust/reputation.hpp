#pragma once

// Pairwise requester -> participant trust, the reward/penalty update and
// reputation by weighted PageRank over the trust graph.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fuzzytrust/rng.hpp"

namespace fuzzytrust::reputation {

inline constexpr double kInitialTrust = 0.5;
inline constexpr double kInitialReputation = 0.5;

/// Dense N x N trust matrix; entry (r, p) is requester r's trust in p.
/// Writes clamp to [0, 1]; the diagonal is never read by the rank computation.
class TrustMatrix {
 public:
  explicit TrustMatrix(std::size_t n, double initial = kInitialTrust);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t requester, std::size_t participant) const;
  void set(std::size_t requester, std::size_t participant, double value);
  std::span<const double> row(std::size_t requester) const;
  /// Multiplies a whole row (off-diagonal) by a positive factor without clamping.
  void scale_row(std::size_t requester, double factor);

 private:
  std::size_t n_;
  std::vector<double> values_;
};

struct UpdatePolicy {
  double reward_threshold = 0.7;   // Th1
  double penalty_threshold = 0.3;  // Th2

  void validate() const;
};

struct RequesterEvaluation {
  double value = 0.0;
  bool present = false;
};

/// Requester rating drawn uniformly from (toc - mu, toc + mu), mu = 1 - rho_req,
/// clamped to [0, 1]. With rho_req == 1 the rating equals toc.
RequesterEvaluation subjective_rating(double toc, double requester_rep, CounterRng& rng);

/// Reward/penalty rule: +|toc - rho_req * re| above Th1, minus it below Th2,
/// unchanged otherwise; result clamped to [0, 1].
double update_trust(double current, double toc, double re, double requester_rep,
                    const UpdatePolicy& policy);

/// Same rule with an optional evaluation; an absent one means re = toc.
double update_trust(double current, double toc, const RequesterEvaluation& re,
                    double requester_rep, const UpdatePolicy& policy);

struct RankOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
  double rescale_low = 0.05;
  double rescale_high = 0.95;
};

struct RankResult {
  std::vector<double> reputation;  // rescaled into [rescale_low, rescale_high]
  std::vector<double> raw;         // converged fixed point before rescaling
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Row-stochastic weights w(r -> p) = trust(r, p) / sum_q trust(r, q), q != r.
/// Rows without positive trust spread uniformly over the other members.
std::vector<double> normalized_weights(const TrustMatrix& tm);

/// One step of rho_k(p) = sum_r w(r -> p) rho_{k-1}(r).
std::vector<double> propagate(std::span<const double> weights, std::span<const double> rho);

/// Affine min-max map onto [low, high]; all-equal input maps to the midpoint 0.5.
std::vector<double> rescale(std::span<const double> raw, double low, double high);

/// Power iteration from `prev` until every component moves by at most the
/// tolerance, then rescaled. Throws NonConvergence when max_iterations is hit.
RankResult compute_reputation(const TrustMatrix& tm, std::span<const double> prev,
                              const RankOptions& opts = {});

/// CSV rows `interval,member_id,category,reputation` (header included when asked).
void write_snapshot_csv(std::ostream& os, std::size_t interval, std::span<const double> rho,
                        std::span<const char> categories, bool header);

}  // namespace fuzzytrust::reputation
