#pragma once

#include <string>
#include <vector>

#include "evjoin/engine.hpp"

// Shared engine fixtures: the fire-alarm join over (temperature, smoke) and
// the paired join over (int, bool) used by the latest/lockstep traces.

namespace testsupport {

inline auto make_fire_alarm(double within_minutes = 5.0) {
  evjoin::engine_algebra s;
  auto ctx = s.ccons(s.from(evjoin::source<double>{}),
                     s.ccons(s.from(evjoin::source<bool>{}), s.cnil()));
  return s.join(ctx, s.enil(), [s, within_minutes](const auto& v) {
    const auto& temp = evjoin::get<0>(v);
    const auto& smoke = evjoin::get<1>(v);
    return s.where(s.and_(s.and_(s.within(temp.meta, smoke.meta, s.minutes(within_minutes)),
                                 smoke.value),
                          s.ge(temp.value, s.lit_float(50.0))),
                   s.yield(s.fmt1("Fire: %f", temp.value)));
  });
}

using fire_alarm_instance = decltype(make_fire_alarm());

// temp: (20.0, 2), (53.5, 4), (35.0, 5), (60.2, 8); smoke: (true, 9),
// (false, 10), (true, 12) — merged and sorted by (time, source).
inline std::vector<fire_alarm_instance::notification> fire_alarm_trace() {
  using inst = fire_alarm_instance;
  return {
      inst::notify<0>(evjoin::at(20.0, 2)),  inst::notify<0>(evjoin::at(53.5, 4)),
      inst::notify<0>(evjoin::at(35.0, 5)),  inst::notify<0>(evjoin::at(60.2, 8)),
      inst::notify<1>(evjoin::at(true, 9)),  inst::notify<1>(evjoin::at(false, 10)),
      inst::notify<1>(evjoin::at(true, 12)),
  };
}

inline std::vector<evjoin::event<std::string>> fire_alarm_expected() {
  return {
      {"Fire: 53.5", evjoin::interval(4, 9)},
      {"Fire: 60.2", evjoin::interval(8, 9)},
      {"Fire: 60.2", evjoin::interval(8, 12)},
  };
}

// Unguarded pair join over (int, bool) with a caller-chosen extension.
template <class MakeExt>
auto make_pair_join(MakeExt&& make_ext) {
  evjoin::engine_algebra s;
  auto ctx =
      s.ccons(s.from(evjoin::source<int>{}), s.ccons(s.from(evjoin::source<bool>{}), s.cnil()));
  return s.join(ctx, make_ext(s), [s](const auto& v) {
    return s.yield(s.pair(evjoin::get<0>(v).value, evjoin::get<1>(v).value));
  });
}

// temp: (120, 1), (50, 3), (20, 5); smoke: (true, 1), (false, 2), (true, 4).
template <class Inst>
std::vector<typename Inst::notification> latest_trace() {
  return {
      Inst::template notify<0>(evjoin::at(120, 1)),
      Inst::template notify<1>(evjoin::at(true, 1)),
      Inst::template notify<1>(evjoin::at(false, 2)),
      Inst::template notify<0>(evjoin::at(50, 3)),
      Inst::template notify<1>(evjoin::at(true, 4)),
      Inst::template notify<0>(evjoin::at(20, 5)),
  };
}

inline std::vector<evjoin::event<std::pair<int, bool>>> combine_latest_expected() {
  return {
      {{120, true}, evjoin::interval(1, 1)},  {{120, false}, evjoin::interval(1, 2)},
      {{50, false}, evjoin::interval(2, 3)},  {{50, true}, evjoin::interval(3, 4)},
      {{20, true}, evjoin::interval(4, 5)},
  };
}

inline std::vector<evjoin::event<std::pair<int, bool>>> aligned_expected() {
  return {
      {{120, true}, evjoin::interval(1, 1)},
      {{50, false}, evjoin::interval(2, 3)},
      {{20, true}, evjoin::interval(4, 5)},
  };
}

}  // namespace testsupport
