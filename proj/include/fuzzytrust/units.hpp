#pragma once

// Time quantities carry their unit in the type so that friendship clocks
// (years) and response times / interaction gaps (days) cannot be mixed.

namespace fuzzytrust {

struct Days {
  double value = 0.0;
  constexpr Days() = default;
  constexpr explicit Days(double v) : value(v) {}
  friend constexpr auto operator<=>(const Days&, const Days&) = default;
};

struct Years {
  double value = 0.0;
  constexpr Years() = default;
  constexpr explicit Years(double v) : value(v) {}
  friend constexpr auto operator<=>(const Years&, const Years&) = default;
};

constexpr Days operator-(Days lhs, Days rhs) { return Days(lhs.value - rhs.value); }
constexpr Years operator+(Years lhs, Years rhs) { return Years(lhs.value + rhs.value); }

}  // namespace fuzzytrust
