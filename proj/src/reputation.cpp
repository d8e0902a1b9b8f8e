#include "fuzzytrust/reputation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "fuzzytrust/error.hpp"

namespace fuzzytrust::reputation {

namespace {

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0, 1], got " << v;
    throw InvalidArgument(os.str());
  }
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

TrustMatrix::TrustMatrix(std::size_t n, double initial) : n_(n), values_(n * n, 0.0) {
  require_unit(initial, "initial trust");
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t p = 0; p < n_; ++p) {
      if (r != p) values_[r * n_ + p] = initial;
    }
  }
}

double TrustMatrix::at(std::size_t requester, std::size_t participant) const {
  if (requester >= n_ || participant >= n_) throw InvalidArgument("trust index out of range");
  return values_[requester * n_ + participant];
}

void TrustMatrix::set(std::size_t requester, std::size_t participant, double value) {
  if (requester >= n_ || participant >= n_) throw InvalidArgument("trust index out of range");
  if (std::isnan(value)) throw InvalidArgument("trust value is NaN");
  values_[requester * n_ + participant] = std::clamp(value, 0.0, 1.0);
}

std::span<const double> TrustMatrix::row(std::size_t requester) const {
  if (requester >= n_) throw InvalidArgument("trust index out of range");
  return {values_.data() + requester * n_, n_};
}

void TrustMatrix::scale_row(std::size_t requester, double factor) {
  if (requester >= n_) throw InvalidArgument("trust index out of range");
  if (!(factor > 0.0)) throw InvalidArgument("row scale factor must be positive");
  for (std::size_t p = 0; p < n_; ++p) {
    if (p != requester) values_[requester * n_ + p] *= factor;
  }
}

void UpdatePolicy::validate() const {
  if (!(0.0 <= penalty_threshold && penalty_threshold < reward_threshold &&
        reward_threshold <= 1.0)) {
    throw InvalidArgument("update thresholds must satisfy 0 <= Th2 < Th1 <= 1");
  }
}

RequesterEvaluation subjective_rating(double toc, double requester_rep, CounterRng& rng) {
  require_unit(toc, "ToC");
  require_unit(requester_rep, "requester reputation");
  const double mu = 1.0 - requester_rep;
  // Always consume one draw so the stream position does not depend on mu.
  const double u = rng.uniform01();
  if (mu == 0.0) return {toc, true};
  return {std::clamp(toc + (2.0 * u - 1.0) * mu, 0.0, 1.0), true};
}

double update_trust(double current, double toc, double re, double requester_rep,
                    const UpdatePolicy& policy) {
  require_unit(current, "current trust");
  require_unit(toc, "ToC");
  require_unit(re, "requester evaluation");
  require_unit(requester_rep, "requester reputation");
  const double delta = std::abs(toc - requester_rep * re);
  if (toc > policy.reward_threshold) return std::min(1.0, current + delta);
  if (toc < policy.penalty_threshold) return std::max(0.0, current - delta);
  return current;
}

double update_trust(double current, double toc, const RequesterEvaluation& re,
                    double requester_rep, const UpdatePolicy& policy) {
  return update_trust(current, toc, re.present ? re.value : toc, requester_rep, policy);
}

std::vector<double> normalized_weights(const TrustMatrix& tm) {
  const std::size_t n = tm.size();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = tm.row(r);
    double sum = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      if (p != r) sum += row[p];
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (p == r) continue;
      if (sum > 0.0) {
        w[r * n + p] = row[p] / sum;
      } else if (n > 1) {
        w[r * n + p] = 1.0 / static_cast<double>(n - 1);
      }
    }
  }
  return w;
}

std::vector<double> propagate(std::span<const double> weights, std::span<const double> rho) {
  const std::size_t n = rho.size();
  if (weights.size() != n * n) throw InvalidArgument("weight matrix does not match vector size");
  std::vector<double> next(n, 0.0);
  // Fixed accumulation order: row by row, so results are reproducible bitwise.
  for (std::size_t r = 0; r < n; ++r) {
    const double mass = rho[r];
    if (mass == 0.0) continue;
    const double* w = weights.data() + r * n;
    for (std::size_t p = 0; p < n; ++p) next[p] += w[p] * mass;
  }
  return next;
}

std::vector<double> rescale(std::span<const double> raw, double low, double high) {
  if (!(0.0 <= low && low < high && high <= 1.0)) {
    throw InvalidArgument("rescale bounds must satisfy 0 <= low < high <= 1");
  }
  std::vector<double> out(raw.size(), 0.5);
  if (raw.size() < 2) return out;
  const auto [mn, mx] = std::minmax_element(raw.begin(), raw.end());
  const double span = *mx - *mn;
  if (!(span > 0.0)) return out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = low + (high - low) * ((raw[i] - *mn) / span);
  }
  return out;
}

RankResult compute_reputation(const TrustMatrix& tm, std::span<const double> prev,
                              const RankOptions& opts) {
  const std::size_t n = tm.size();
  if (prev.size() != n) throw InvalidArgument("previous reputation vector has the wrong size");
  if (!(opts.tolerance > 0.0)) throw InvalidArgument("convergence tolerance must be positive");
  for (double v : prev) require_unit(v, "reputation");

  const auto weights = normalized_weights(tm);
  std::vector<double> rho(prev.begin(), prev.end());
  RankResult result;
  double residual = 0.0;
  for (std::size_t k = 1; k <= opts.max_iterations; ++k) {
    auto next = propagate(weights, rho);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(next[i] - rho[i]));
    rho = std::move(next);
    if (residual <= opts.tolerance) {
      result.iterations = k;
      result.residual = residual;
      result.raw = rho;
      result.reputation = rescale(rho, opts.rescale_low, opts.rescale_high);
      return result;
    }
  }
  std::ostringstream os;
  os << "reputation did not converge within " << opts.max_iterations
     << " iterations (residual " << residual << ")";
  throw NonConvergence(os.str(), residual, opts.max_iterations);
}

void write_snapshot_csv(std::ostream& os, std::size_t interval, std::span<const double> rho,
                        std::span<const char> categories, bool header) {
  if (categories.size() != rho.size()) {
    throw InvalidArgument("category list does not match reputation vector");
  }
  if (header) os << "interval,member_id,category,reputation\n";
  for (std::size_t i = 0; i < rho.size(); ++i) {
    os << interval << ',' << i << ',' << categories[i] << ',' << shortest(rho[i]) << '\n';
  }
}

}  // namespace fuzzytrust::reputation
