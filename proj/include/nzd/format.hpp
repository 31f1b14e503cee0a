#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace nzd {

// All user-facing numbers go through these so JSON and CSV agree on the
// 12-significant-digit contract.
inline std::string format_sig(double x, int digits = 12) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline double round_sig(double x, int digits = 12) {
  return std::strtod(format_sig(x, digits).c_str(), nullptr);
}

}  // namespace nzd
