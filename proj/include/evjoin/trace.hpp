#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evjoin/format.hpp"
#include "evjoin/interval.hpp"

// Wire formats: JSON Lines trace records, the interval encoding and the text
// rendering of output events. Input records carry a source position, a time
// in minutes and a scalar value; intervals encode as a 2-array whose infinite
// endpoints are the strings "inf" / "-inf".

namespace evjoin {

// A malformed or wrongly typed record.
struct schema_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct trace_record {
  std::size_t source = 0;
  double time = 0.0;
  nlohmann::json value;
};

inline nlohmann::json interval_to_json(const interval& iv) {
  auto endpoint = [](time_point t) -> nlohmann::json {
    if (t == time_infinity) return "inf";
    if (t == time_neg_infinity) return "-inf";
    return t;
  };
  return nlohmann::json::array({endpoint(iv.lo), endpoint(iv.hi)});
}

inline interval interval_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw schema_error("interval: expected a 2-array");
  auto endpoint = [](const nlohmann::json& e) -> time_point {
    if (e.is_string()) {
      const auto& s = e.get_ref<const std::string&>();
      if (s == "inf") return time_infinity;
      if (s == "-inf") return time_neg_infinity;
      throw schema_error("interval: unknown endpoint \"" + s + "\"");
    }
    if (!e.is_number()) throw schema_error("interval: endpoint must be a number or inf string");
    return e.get<double>();
  };
  try {
    return interval(endpoint(j[0]), endpoint(j[1]));
  } catch (const std::invalid_argument& e) {
    throw schema_error(e.what());
  }
}

inline trace_record record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw schema_error("trace record: expected an object");
  if (!j.contains("source") || !j.contains("time") || !j.contains("value"))
    throw schema_error("trace record: requires source, time and value fields");
  const auto& src = j.at("source");
  if (!src.is_number_unsigned()) throw schema_error("trace record: source must be a nonnegative integer");
  const auto& time = j.at("time");
  if (!time.is_number()) throw schema_error("trace record: time must be a number");
  const auto& value = j.at("value");
  if (!(value.is_number() || value.is_boolean() || value.is_string()))
    throw schema_error("trace record: value must be a JSON scalar");
  return {src.get<std::size_t>(), time.get<double>(), value};
}

// One JSON object per nonempty line.
inline std::vector<trace_record> read_trace(std::istream& in) {
  std::vector<trace_record> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw schema_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    records.push_back(record_from_json(j));
  }
  return records;
}

// Orders records by (time, source), lower source first on ties; records with
// equal keys keep their file order.
inline void sort_trace(std::vector<trace_record>& records) {
  std::stable_sort(records.begin(), records.end(), [](const trace_record& a, const trace_record& b) {
    return a.time < b.time || (a.time == b.time && a.source < b.source);
  });
}

// --- text rendering -----------------------------------------------------------

inline std::string render_value(const std::string& s) { return s; }
inline std::string render_value(bool b) { return b ? "true" : "false"; }
inline std::string render_value(double x) { return format_number(x); }
inline std::string render_value(std::int64_t x) { return format_number(x); }

template <class A, class B>
std::string render_value(const std::pair<A, B>& p) {
  return "(" + render_value(p.first) + ", " + render_value(p.second) + ")";
}

inline std::string render_interval(const interval& iv) {
  return "[" + format_number(iv.lo) + "," + format_number(iv.hi) + "]";
}

}  // namespace evjoin
