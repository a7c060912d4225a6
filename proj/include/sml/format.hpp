#pragma once
// format.hpp -- locale-independent number formatting for CSV/CLI output.

#include <cstdio>
#include <string>

namespace sml {

// Shortest %.9g rendering; 9 significant digits, C locale, reproducible bytes.
inline std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace sml
