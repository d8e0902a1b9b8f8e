#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fuzzytrust/error.hpp"
#include "fuzzytrust/reputation.hpp"

using namespace fuzzytrust;
using namespace fuzzytrust::reputation;

namespace {

TrustMatrix random_matrix(std::size_t n, std::mt19937_64& gen, double zero_prob = 0.0) {
  std::uniform_real_distribution<double> u(0, 1);
  TrustMatrix tm(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t p = 0; p < n; ++p) {
      if (r != p && u(gen) >= zero_prob) tm.set(r, p, 0.05 + 0.95 * u(gen));
    }
  }
  return tm;
}

}  // namespace

TEST(TrustMatrix, InitAndClamp) {
  TrustMatrix tm(3);
  EXPECT_EQ(tm.at(0, 0), 0.0);
  EXPECT_EQ(tm.at(0, 1), 0.5);
  tm.set(0, 1, 1.7);
  EXPECT_EQ(tm.at(0, 1), 1.0);
  tm.set(0, 1, -0.3);
  EXPECT_EQ(tm.at(0, 1), 0.0);
  EXPECT_THROW(tm.at(3, 0), InvalidArgument);
  EXPECT_THROW(tm.set(0, 1, std::nan("")), InvalidArgument);
  EXPECT_THROW(TrustMatrix(2, 1.5), InvalidArgument);
}

TEST(UpdateTrust, Examples) {
  const UpdatePolicy pol;
  EXPECT_EQ(update_trust(0.5, 0.5, 0.9, 0.7, pol), 0.5);
  EXPECT_EQ(update_trust(0.5, 0.8, 0.8, 1.0, pol), 0.5);
  EXPECT_EQ(update_trust(0.5, 0.2, 0.2, 0.5, pol), 0.4);
  EXPECT_EQ(update_trust(0.95, 0.9, 0.1, 0.5, pol), 1.0);
  EXPECT_EQ(update_trust(0.05, 0.1, 0.9, 0.5, pol), 0.0);
  EXPECT_EQ(update_trust(0.5, 0.8, RequesterEvaluation{}, 1.0, pol), 0.5);
  EXPECT_THROW(update_trust(1.5, 0.8, 0.8, 1.0, pol), InvalidArgument);
  EXPECT_THROW((UpdatePolicy{0.3, 0.7}.validate()), InvalidArgument);
}

TEST(UpdateTrust, NeutralZoneAndClampingFuzz) {
  const UpdatePolicy pol;
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 100000; ++k) {
    const double cur = u(gen), toc = u(gen), re = u(gen), rho = u(gen);
    const double v = update_trust(cur, toc, re, rho, pol);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    if (toc >= pol.penalty_threshold && toc <= pol.reward_threshold) ASSERT_EQ(v, cur);
    if (toc > pol.reward_threshold) ASSERT_GE(v, cur);
    if (toc < pol.penalty_threshold) ASSERT_LE(v, cur);
  }
  EXPECT_EQ(update_trust(0.42, 0.7, 0.0, 1.0, pol), 0.42);
  EXPECT_EQ(update_trust(0.42, 0.3, 0.0, 1.0, pol), 0.42);
}

TEST(SubjectiveRating, Range) {
  CounterRng rng(1, {9});
  EXPECT_EQ(subjective_rating(0.8, 1.0, rng).value, 0.8);
  for (int k = 0; k < 10000; ++k) {
    const auto re = subjective_rating(0.8, 0.5, rng);
    ASSERT_TRUE(re.present);
    ASSERT_GE(re.value, 0.3);
    ASSERT_LE(re.value, 1.0);
  }
  const auto before = rng.counter();
  subjective_rating(0.5, 1.0, rng);
  EXPECT_EQ(rng.counter(), before + 1);
}

TEST(Rank, RowsSumToOne) {
  std::mt19937_64 gen(4);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + gen() % 30;
    const auto tm = random_matrix(n, gen, 0.3);
    const auto w = normalized_weights(tm);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0;
      for (std::size_t p = 0; p < n; ++p) s += w[r * n + p];
      EXPECT_NEAR(s, 1.0, 1e-12);
      EXPECT_EQ(w[r * n + r], 0.0);
    }
  }
}

TEST(Rank, DanglingRowIsUniform) {
  TrustMatrix tm(4, 0.0);
  tm.set(0, 1, 0.3);
  const auto w = normalized_weights(tm);
  for (std::size_t p = 0; p < 4; ++p) EXPECT_EQ(w[1 * 4 + p], p == 1 ? 0.0 : 1.0 / 3.0);
}

TEST(Rank, PropagationConservesMass) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + gen() % 40;
    const auto w = normalized_weights(random_matrix(n, gen, 0.5));
    std::vector<double> rho(n);
    for (auto& x : rho) x = u(gen);
    const double total = std::accumulate(rho.begin(), rho.end(), 0.0);
    for (int step = 0; step < 50; ++step) {
      rho = propagate(w, rho);
      ASSERT_NEAR(std::accumulate(rho.begin(), rho.end(), 0.0), total, 1e-9);
    }
  }
}

TEST(Rank, SymmetricGraphsAreUniform) {
  TrustMatrix tm(6, 0.8);
  const auto res = compute_reputation(tm, std::vector<double>(6, 0.5));
  for (double v : res.reputation) EXPECT_EQ(v, 0.5);

  TrustMatrix cycle(3, 0.0);
  cycle.set(0, 1, 1.0);
  cycle.set(1, 2, 1.0);
  cycle.set(2, 0, 1.0);
  const auto c = compute_reputation(cycle, std::vector<double>(3, 0.5));
  for (double v : c.raw) EXPECT_NEAR(v, 0.5, 1e-15);
  for (double v : c.reputation) EXPECT_EQ(v, 0.5);
}

TEST(Rank, RowScalingInvariance) {
  std::mt19937_64 gen(12);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 5 + gen() % 20;
    auto tm = random_matrix(n, gen);
    const std::vector<double> start(n, 0.5);
    const auto a = compute_reputation(tm, start);
    tm.scale_row(gen() % n, 0.3);
    const auto b = compute_reputation(tm, start);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a.reputation[i], b.reputation[i], 1e-8);
  }
}

TEST(Rank, ResultIsAFixedPointWithinTolerance) {
  std::mt19937_64 gen(21);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 5 + gen() % 50;
    const auto tm = random_matrix(n, gen, 0.2);
    const RankOptions opts;
    const auto res = compute_reputation(tm, std::vector<double>(n, 0.5), opts);
    EXPECT_LE(res.residual, opts.tolerance);
    const auto again = propagate(normalized_weights(tm), res.raw);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(std::abs(again[i] - res.raw[i]), opts.tolerance);
    const auto [mn, mx] = std::minmax_element(res.reputation.begin(), res.reputation.end());
    EXPECT_NEAR(*mn, 0.05, 1e-15);
    EXPECT_NEAR(*mx, 0.95, 1e-15);
  }
}

TEST(Rank, ExampleGraphFixedPoint) {
  TrustMatrix tm(4, 0.0);
  tm.set(0, 2, 0.6);
  tm.set(0, 3, 0.4);
  tm.set(1, 0, 0.7);
  tm.set(1, 3, 0.3);
  tm.set(2, 1, 0.8);
  tm.set(2, 3, 0.2);
  const auto res = compute_reputation(tm, std::vector<double>(4, 0.5));
  const auto& r = res.raw;
  // P4 has no outgoing trust; its mass is spread over P1..P3.
  EXPECT_NEAR(r[0], 0.7 * r[1] + r[3] / 3, 1e-9);
  EXPECT_NEAR(r[1], 0.8 * r[2] + r[3] / 3, 1e-9);
  EXPECT_NEAR(r[2], 0.6 * r[0] + r[3] / 3, 1e-9);
  EXPECT_NEAR(r[3], 0.4 * r[0] + 0.3 * r[1] + 0.2 * r[2], 1e-9);
}

TEST(Rank, NonConvergenceCarriesResidual) {
  TrustMatrix cycle(2, 1.0);
  RankOptions opts;
  opts.max_iterations = 50;
  try {
    compute_reputation(cycle, std::vector<double>{0.2, 0.8}, opts);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.iterations(), 50u);
    EXPECT_NEAR(e.residual(), 0.6, 1e-12);
  }
}

TEST(Rank, InputValidation) {
  TrustMatrix tm(3);
  EXPECT_THROW(compute_reputation(tm, std::vector<double>(2, 0.5)), InvalidArgument);
  EXPECT_THROW(compute_reputation(tm, std::vector<double>{0.5, 0.5, 1.5}), InvalidArgument);
  EXPECT_THROW(rescale(std::vector<double>{1, 2}, 0.9, 0.1), InvalidArgument);
  EXPECT_EQ(rescale(std::vector<double>{3, 3, 3}, 0.05, 0.95), (std::vector<double>{0.5, 0.5, 0.5}));
}

TEST(Snapshot, CsvRows) {
  std::ostringstream os;
  const std::vector<double> rho{0.05, 0.95};
  const std::vector<char> cats{'A', 'B'};
  write_snapshot_csv(os, 3, rho, cats, true);
  EXPECT_EQ(os.str(), "interval,member_id,category,reputation\n3,0,A,0.05\n3,1,B,0.95\n");
}
