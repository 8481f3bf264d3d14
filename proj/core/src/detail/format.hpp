#pragma once

#include <charconv>
#include <string>

namespace rmlab::detail {

// Shortest round-trip decimal; stable across runs and locales.
inline std::string fmt(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace rmlab::detail
