#pragma once

#include <cstdio>
#include <string>

namespace bcc {

// Deterministic float rendering for CSV and reports ("%.9g", '.' decimal).
inline std::string format_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace bcc
