#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evjoin {

// Shortest decimal rendering that round-trips the value (53.5 -> "53.5",
// 120.0 -> "120"). Infinities render as inf / -inf.
inline std::string format_number(double value) {
  if (value == std::numeric_limits<double>::infinity()) return "inf";
  if (value == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: to_chars failed");
  return std::string(buf, ptr);
}

inline std::string format_number(std::int64_t value) { return std::to_string(value); }

// Renders the numeric argument into the single %f hole of the format string.
inline std::string format_one_hole(std::string_view fmt, double value) {
  auto pos = fmt.find("%f");
  if (pos == std::string_view::npos)
    throw std::invalid_argument("format_one_hole: format string has no %f hole");
  std::string out;
  out.reserve(fmt.size() + 24);
  out.append(fmt.substr(0, pos));
  out.append(format_number(value));
  out.append(fmt.substr(pos + 2));
  return out;
}

}  // namespace evjoin
