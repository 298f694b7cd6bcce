#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace erpic {

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace erpic
