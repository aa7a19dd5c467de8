#pragma once

// Shortest round-trip text for doubles, so CSVs are byte-stable.

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace satcts {

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace satcts
