#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace strbf::detail {

// Shortest round-trippable decimal form (17 significant digits).
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Neumaier-compensated accumulator; keeps sums reorder-stable to ~1 ulp.
struct NeumaierAcc {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace strbf::detail
