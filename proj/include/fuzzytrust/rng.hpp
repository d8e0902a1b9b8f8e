#pragma once

#include <cstdint>
#include <initializer_list>

namespace fuzzytrust {

// Counter-based random stream. A stream is identified by (seed, key words);
// the n-th draw is a pure function of that identity and n, so draws for one
// member never depend on how many numbers another member consumed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> key);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform01();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform in (lo, hi].
  double uniform_left_open(double lo, double hi);
  bool bernoulli(double p);
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stream tags; keep values stable, they are part of the output contract.
namespace stream {
inline constexpr std::uint64_t kProfile = 0x50524f46ULL;
inline constexpr std::uint64_t kFriendship = 0x46524e44ULL;
inline constexpr std::uint64_t kTask = 0x5441534bULL;
inline constexpr std::uint64_t kContribution = 0x434f4e54ULL;
inline constexpr std::uint64_t kRating = 0x52415445ULL;
inline constexpr std::uint64_t kAbstain = 0x41425354ULL;
}  // namespace stream

}  // namespace fuzzytrust
