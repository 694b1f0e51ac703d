#pragma once

#include <charconv>
#include <string>

namespace usfdtd {

/// Shortest locale-independent text with 17 significant digits.
inline std::string format_g17(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

inline std::string format_fixed(double x, int decimals) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
  return std::string(buf, r.ptr);
}

}  // namespace usfdtd
