#pragma once

#include <cstdio>
#include <string>

namespace mimwave {

// Shortest-round-trip decimal form used by every serialized number; 17
// significant digits reproduce the double exactly.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace mimwave
