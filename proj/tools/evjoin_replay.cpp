// Trace-replay tool: loads a JSON Lines event trace, replays it through one
// of the built-in correlation patterns and prints one output event per line.
//
// Patterns (all over two sources):
//   fire-alarm      source 0: float temperature, source 1: bool smoke flag.
//                   Emits "Fire: <temp>" when a hot reading and a positive
//                   smoke reading fall within the --within bound.
//   combine-latest  source 0: integer, source 1: bool. Pairs the most recent
//                   values of both sources.
//   align           same sources as combine-latest, consumed in lockstep.
//   cartesian       source 0: number, source 1: bool. Runs the sequential
//                   interpreter over the per-source value lists (times are
//                   ignored), printing every pair without an interval.
//
// Exit codes: 0 success, 1 I/O error, 2 schema or type mismatch.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evjoin/engine.hpp"
#include "evjoin/list_interp.hpp"
#include "evjoin/trace.hpp"

namespace {

using nlohmann::json;

double number_value(const evjoin::trace_record& r) {
  if (!r.value.is_number())
    throw evjoin::schema_error("source 0: expected a numeric value");
  return r.value.get<double>();
}

std::int64_t integer_value(const evjoin::trace_record& r) {
  if (!r.value.is_number_integer())
    throw evjoin::schema_error("source 0: expected an integer value");
  return r.value.get<std::int64_t>();
}

bool bool_value(const evjoin::trace_record& r) {
  if (!r.value.is_boolean()) throw evjoin::schema_error("source 1: expected a boolean value");
  return r.value.get<bool>();
}

template <class V>
json value_to_json(const V& v) {
  return v;
}

template <class A, class B>
json value_to_json(const std::pair<A, B>& p) {
  return json::array({value_to_json(p.first), value_to_json(p.second)});
}

template <class Out>
void print_output(const std::vector<evjoin::event<Out>>& outputs, const std::string& format) {
  for (const auto& e : outputs) {
    if (format == "json") {
      json line{{"value", value_to_json(e.value)}, {"interval", evjoin::interval_to_json(e.meta)}};
      std::cout << line.dump() << "\n";
    } else {
      std::cout << evjoin::render_value(e.value) << " " << evjoin::render_interval(e.meta) << "\n";
    }
  }
}

// Converts the sorted records into notifications of a 2-ary instance, type
// checking each value against its source position.
template <class Inst, class V0, class V1>
std::vector<typename Inst::notification> to_notifications(
    const std::vector<evjoin::trace_record>& records, V0&& value0, V1&& value1) {
  std::vector<typename Inst::notification> trace;
  trace.reserve(records.size());
  for (const auto& r : records) {
    if (r.source == 0) {
      trace.push_back(Inst::template notify<0>(evjoin::at(value0(r), r.time)));
    } else if (r.source == 1) {
      trace.push_back(Inst::template notify<1>(evjoin::at(value1(r), r.time)));
    } else {
      throw evjoin::schema_error("source " + std::to_string(r.source) +
                                 " exceeds the pattern arity (2)");
    }
  }
  return trace;
}

void run_fire_alarm(const std::vector<evjoin::trace_record>& records, double within_minutes,
                    const std::string& format) {
  evjoin::engine_algebra s;
  auto ctx = s.ccons(s.from(evjoin::source<double>{}),
                     s.ccons(s.from(evjoin::source<bool>{}), s.cnil()));
  auto inst = s.join(ctx, s.enil(), [s, within_minutes](const auto& v) {
    const auto& temp = evjoin::get<0>(v);
    const auto& smoke = evjoin::get<1>(v);
    return s.where(s.and_(s.and_(s.within(temp.meta, smoke.meta, s.minutes(within_minutes)),
                                 smoke.value),
                          s.ge(temp.value, s.lit_float(50.0))),
                   s.yield(s.fmt1("Fire: %f", temp.value)));
  });
  using inst_t = decltype(inst);
  auto trace = to_notifications<inst_t>(records, number_value, bool_value);
  print_output(inst.run_replay(trace), format);
}

template <class Ext>
void run_paired(const std::vector<evjoin::trace_record>& records, const std::string& format,
                Ext make_ext) {
  evjoin::engine_algebra s;
  auto ctx = s.ccons(s.from(evjoin::source<std::int64_t>{}),
                     s.ccons(s.from(evjoin::source<bool>{}), s.cnil()));
  auto inst = s.join(ctx, make_ext(s), [s](const auto& v) {
    return s.yield(s.pair(evjoin::get<0>(v).value, evjoin::get<1>(v).value));
  });
  using inst_t = decltype(inst);
  auto trace = to_notifications<inst_t>(records, integer_value, bool_value);
  print_output(inst.run_replay(trace), format);
}

void run_cartesian(const std::vector<evjoin::trace_record>& records, const std::string& format) {
  std::vector<double> left;
  std::vector<bool> right;
  for (const auto& r : records) {
    if (r.source == 0) {
      left.push_back(number_value(r));
    } else if (r.source == 1) {
      right.push_back(bool_value(r));
    } else {
      throw evjoin::schema_error("source " + std::to_string(r.source) +
                                 " exceeds the pattern arity (2)");
    }
  }
  evjoin::list_algebra s;
  auto ctx = s.ccons(s.from(left), s.ccons(s.from(right), s.cnil()));
  auto pairs = s.join(ctx, [s](const auto& v) {
    return s.yield(s.pair(evjoin::get<0>(v), evjoin::get<1>(v)));
  });
  for (const auto& p : pairs) {
    if (format == "json") {
      json line{{"value", value_to_json(p)}};
      std::cout << line.dump() << "\n";
    } else {
      std::cout << evjoin::render_value(p) << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replays an event trace through a join pattern"};
  std::string pattern;
  std::string trace_path;
  std::string format = "text";
  double within_minutes = 5.0;
  app.add_option("--pattern", pattern, "Pattern to run")
      ->required()
      ->check(CLI::IsMember({"fire-alarm", "combine-latest", "align", "cartesian"}));
  app.add_option("--trace", trace_path, "Trace file (JSON Lines)")->required();
  app.add_option("--within", within_minutes, "Time bound in minutes (fire-alarm only)")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "text"}));
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(trace_path);
  if (!in) {
    std::cerr << "error: cannot open trace file: " << trace_path << "\n";
    return 1;
  }

  try {
    auto records = evjoin::read_trace(in);
    if (in.bad()) {
      std::cerr << "error: failed reading trace file: " << trace_path << "\n";
      return 1;
    }
    evjoin::sort_trace(records);
    if (pattern == "fire-alarm") {
      run_fire_alarm(records, within_minutes, format);
    } else if (pattern == "combine-latest") {
      run_paired(records, format, [](evjoin::engine_algebra& s) {
        return s.ext_merge(s.most_recently(evjoin::here),
                           s.most_recently(evjoin::there(evjoin::here)));
      });
    } else if (pattern == "align") {
      run_paired(records, format, [](evjoin::engine_algebra& s) {
        return s.aligning(evjoin::make_index_set(evjoin::here, evjoin::there(evjoin::here)));
      });
    } else {
      run_cartesian(records, format);
    }
  } catch (const evjoin::schema_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
