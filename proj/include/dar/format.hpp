#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace dar {

/// Reals in reports and CSV output: 6 significant digits, %g style.
[[nodiscard]] inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace dar
