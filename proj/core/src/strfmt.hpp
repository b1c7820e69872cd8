#pragma once

#include <cstdio>
#include <string>

namespace lmcca::detail {

// printf-style helpers; all user-visible numbers go through these so output
// bytes are reproducible.
inline std::string fmt_g(double v, int sig_digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, v);
  return buf;
}

inline std::string fmt_f(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace lmcca::detail
