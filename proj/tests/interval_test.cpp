#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "evjoin/interval.hpp"
#include "support/test_support.hpp"

using namespace evjoin;

namespace {

// Random endpoints over a small grid plus both infinities, so that degenerate
// and unbounded intervals show up often.
time_point random_point(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 9);
  int k = kind(rng);
  if (k == 0) return time_neg_infinity;
  if (k == 1) return time_infinity;
  std::uniform_real_distribution<double> finite(-50.0, 50.0);
  return finite(rng);
}

interval random_interval(std::mt19937& rng) {
  auto a = random_point(rng);
  auto b = random_point(rng);
  return a <= b ? interval(a, b) : interval(b, a);
}

bool contains(const interval& outer, const interval& inner) {
  return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

}  // namespace

TEST_CASE("merge yields the smallest interval containing both") {
  REQUIRE(merge(interval(4, 4), interval(9, 9)) == interval(4, 9));
  REQUIRE(merge(interval(1, 2), interval(1, 2)) == interval(1, 2));
  REQUIRE(merge(interval(2, 3), interval(time_neg_infinity, 1)) ==
          interval(time_neg_infinity, 3));
}

TEST_CASE("span subtracts under extended arithmetic") {
  REQUIRE(span(interval(4, 9)) == 5.0);
  REQUIRE(span(interval(7.25, 7.25)) == 0.0);
  REQUIRE(span(interval::at(time_infinity)) == 0.0);
  REQUIRE(span(interval::at(time_neg_infinity)) == 0.0);
  REQUIRE(span(interval(time_neg_infinity, 3)) == time_infinity);
  REQUIRE(span(interval(time_neg_infinity, time_infinity)) == time_infinity);
}

TEST_CASE("within compares the merged span against the bound") {
  REQUIRE(within(interval(4, 4), interval(9, 9), minutes(5)));
  REQUIRE_FALSE(within(interval(4, 4), interval(12, 12), minutes(5)));
  auto a = interval(3, 3);
  REQUIRE(within(a, a, 0) == (span(a) == 0.0));
  auto b = interval(1, 4);
  REQUIRE(within(b, b, 0) == (span(b) == 0.0));
}

TEST_CASE("merge_all folds merge over a nonempty sequence") {
  std::vector<interval> two{interval(4, 4), interval(9, 9)};
  REQUIRE(merge_all(two) == interval(4, 9));

  std::vector<interval> one{interval(2, 5)};
  REQUIRE(merge_all(one) == interval(2, 5));

  std::vector<interval> three{interval(1, 1), interval(3, 3), interval(2, 2)};
  REQUIRE(merge_all(three) == interval(1, 3));

  std::vector<interval> none;
  REQUIRE_THROWS_AS(merge_all(none), std::invalid_argument);
}

TEST_CASE("interval construction rejects inverted or undefined endpoints") {
  REQUIRE_THROWS_AS(interval(2, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(interval(std::numeric_limits<double>::quiet_NaN(), 1),
                    std::invalid_argument);
  REQUIRE_NOTHROW(interval(time_neg_infinity, time_infinity));
  REQUIRE(interval::at(3.5) == interval(3.5, 3.5));
}

TEST_CASE("merge is commutative, associative and idempotent") {
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_interval(rng);
    auto b = random_interval(rng);
    auto c = random_interval(rng);
    REQUIRE(merge(a, b) == merge(b, a));
    REQUIRE(merge(a, merge(b, c)) == merge(merge(a, b), c));
    REQUIRE(merge(a, a) == a);
    REQUIRE(within(a, b, 10.0) == within(b, a, 10.0));
  }
}

TEST_CASE("merge is the least upper bound") {
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_interval(rng);
    auto b = random_interval(rng);
    auto m = merge(a, b);
    REQUIRE(m.lo <= m.hi);
    REQUIRE(contains(m, a));
    REQUIRE(contains(m, b));
    // nothing strictly smaller contains both: each endpoint is attained
    REQUIRE((m.lo == a.lo || m.lo == b.lo));
    REQUIRE((m.hi == a.hi || m.hi == b.hi));
  }
}
