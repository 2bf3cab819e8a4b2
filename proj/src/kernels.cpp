#include "strbf/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace strbf {

void KernelSpec::validate() const {
  switch (variant) {
    case KernelVariant::gaussian:
      if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("kernel sigma must be positive");
      break;
    case KernelVariant::inverse_multiquadric:
      if (!(zeta > 0.0) || !std::isfinite(zeta))
        throw std::invalid_argument("kernel zeta must be positive");
      break;
    case KernelVariant::multiquadric:
      break;
  }
}

double squared_distance(std::span<const double> x, std::span<const double> c) {
  if (x.size() != c.size())
    throw std::invalid_argument(
        "squared_distance: length mismatch (" + std::to_string(x.size()) +
        " vs " + std::to_string(c.size()) + ")");
  if (x.empty())
    throw std::invalid_argument("squared_distance: empty vectors");
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double diff = x[j] - c[j];
    acc += diff * diff;
  }
  return acc;
}

double kernel_eval(const KernelSpec& spec, double sq_dist) {
  if (!(sq_dist >= 0.0))
    throw std::invalid_argument("kernel_eval: negative squared distance");
  switch (spec.variant) {
    case KernelVariant::gaussian:
      return std::exp(-sq_dist / (spec.sigma * spec.sigma));
    case KernelVariant::multiquadric:
      return std::sqrt(sq_dist);
    case KernelVariant::inverse_multiquadric:
      return 1.0 / std::sqrt(sq_dist + spec.zeta * spec.zeta);
  }
  throw std::invalid_argument("kernel_eval: unknown variant");
}

}  // namespace strbf
