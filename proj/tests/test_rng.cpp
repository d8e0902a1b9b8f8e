#include <gtest/gtest.h>

#include <cmath>

#include "fuzzytrust/rng.hpp"

using fuzzytrust::CounterRng;

TEST(CounterRng, StreamsAreReproducibleAndIndependent) {
  CounterRng a(7, {1, 2}), b(7, {1, 2}), c(7, {2, 1}), d(8, {1, 2});
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
}

TEST(CounterRng, Ranges) {
  CounterRng r(1, {});
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    const double v = r.uniform_left_open(0.0, 7.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 7.0);
    ASSERT_LT(r.below(25), 25u);
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(CounterRng, BelowIsUniform) {
  CounterRng r(3, {4});
  int counts[6] = {};
  const int n = 600000;
  for (int i = 0; i < n; ++i) ++counts[r.below(6)];
  for (int c : counts) EXPECT_NEAR(c / static_cast<double>(n), 1.0 / 6, 0.005);
}

TEST(CounterRng, Bernoulli) {
  CounterRng r(5, {6});
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += r.bernoulli(0.3);
  EXPECT_NEAR(hits / 100000.0, 0.3, 0.01);
  EXPECT_FALSE(r.bernoulli(0.0));
  EXPECT_TRUE(r.bernoulli(1.0));
}
