#pragma once

#include <cstddef>
#include <cstdint>

namespace strbf {

/// Randomized finite-difference audit of the training steps. Each round
/// draws a small architecture (S in [1,4], D in [1,3], T in [1,3], gaussian
/// sigma in [0.5, 2]), random parameters and a random sample, extracts the
/// analytic gradient from the production update (unit step size), and
/// compares it against central finite differences of the instantaneous cost
/// computed through the forward path only. Rounds cycle through the rbf,
/// frbf (alpha = 1), and strbf steps.
struct GradCheckConfig {
  std::uint64_t seed = 1;
  std::size_t rounds = 100;
  double tolerance = 1e-6;  // relative, with a 1e-9 absolute floor
  double fd_step = 1e-6;
  bool inject_sign_fault = false;  // negative control: flips one component
};

struct GradCheckReport {
  double max_rel_deviation = 0.0;
  std::size_t rounds = 0;
  std::size_t params_checked = 0;
  bool pass = false;
};

GradCheckReport run_gradcheck(const GradCheckConfig& cfg);

}  // namespace strbf
