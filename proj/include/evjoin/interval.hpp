#pragma once

#include <limits>
#include <span>
#include <stdexcept>

// Event metadata: time intervals over an extended time line.
//
// Time points are plain doubles in minutes; IEEE infinities stand in for the
// extreme elements, keeping the order total. An event occurring at a single
// instant t carries the interval [t, t].

namespace evjoin {

using time_point = double;  // minutes
using time_duration = double;

inline constexpr time_point time_infinity = std::numeric_limits<double>::infinity();
inline constexpr time_point time_neg_infinity = -std::numeric_limits<double>::infinity();

constexpr time_duration minutes(double x) { return x; }

struct interval {
  time_point lo;
  time_point hi;

  constexpr interval(time_point lo_, time_point hi_) : lo(lo_), hi(hi_) {
    if (lo_ != lo_ || hi_ != hi_ || !(lo_ <= hi_))
      throw std::invalid_argument("interval: requires lo <= hi");
  }

  // Singleton interval [t, t].
  static constexpr interval at(time_point t) { return interval(t, t); }

  friend constexpr bool operator==(const interval& a, const interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend constexpr bool operator!=(const interval& a, const interval& b) { return !(a == b); }
};

// Least upper bound: the smallest interval containing both.
constexpr interval merge(const interval& a, const interval& b) {
  return interval(a.lo <= b.lo ? a.lo : b.lo, a.hi >= b.hi ? a.hi : b.hi);
}

// hi - lo under extended arithmetic. Singletons span 0 even at infinity.
constexpr time_duration span(const interval& a) {
  return a.lo == a.hi ? 0.0 : a.hi - a.lo;
}

constexpr bool within(const interval& a, const interval& b, time_duration bound) {
  return span(merge(a, b)) <= bound;
}

// Left fold of merge over a nonempty sequence.
inline interval merge_all(std::span<const interval> ms) {
  if (ms.empty()) throw std::invalid_argument("merge_all: requires at least one interval");
  interval acc = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) acc = merge(acc, ms[i]);
  return acc;
}

}  // namespace evjoin
