#include "fuzzytrust/rng.hpp"

namespace fuzzytrust {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t word : key) {
    h = splitmix64(h ^ splitmix64(word + 0x632be59bd9b4e019ULL));
  }
  key_ = h;
}

std::uint64_t CounterRng::next_u64() {
  // Two rounds of the finalizer over (key, counter) decorrelate adjacent counters.
  const std::uint64_t c = counter_++;
  return splitmix64(splitmix64(key_ ^ (c * 0xd1342543de82ef95ULL)) + c);
}

double CounterRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double CounterRng::uniform_left_open(double lo, double hi) {
  return hi - (hi - lo) * uniform01();
}

bool CounterRng::bernoulli(double p) { return uniform01() < p; }

std::uint64_t CounterRng::below(std::uint64_t n) {
  // Rejection sampling keeps the distribution exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

}  // namespace fuzzytrust
