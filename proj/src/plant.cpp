#include "strbf/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace strbf {

void PlantCoeffs::validate() const {
  for (double q : {q1, q2, q3, q4, q5})
    if (!std::isfinite(q))
      throw std::invalid_argument("plant coefficients must be finite");
}

void NoiseSpec::validate() const {
  if (!(variance >= 0.0) || !std::isfinite(variance))
    throw std::invalid_argument("noise_variance must be >= 0");
}

void SignalSpec::validate() const {
  if (length == 0) throw std::invalid_argument("signal length must be >= 1");
  if (half_period == 0)
    throw std::invalid_argument("signal half_period must be >= 1");
  if (!std::isfinite(amplitude))
    throw std::invalid_argument("signal amplitude must be finite");
}

double plant_output(const PlantCoeffs& coeffs, double r_k, double r_km1,
                    double r_km2, double noise) {
  if (!std::isfinite(r_k) || !std::isfinite(r_km1) || !std::isfinite(r_km2) ||
      !std::isfinite(noise))
    throw std::invalid_argument("plant_output: non-finite input");
  return coeffs.q1 * r_k + coeffs.q2 * r_km1 + coeffs.q3 * r_km2 +
         coeffs.q4 * (std::cos(coeffs.q5 * r_k) + std::exp(-std::fabs(r_k))) +
         noise;
}

std::vector<double> gen_square(const SignalSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.length);
  for (std::size_t j = 0; j < spec.length; ++j)
    out[j] = (j / spec.half_period) % 2 == 0 ? spec.amplitude
                                             : -spec.amplitude;
  return out;
}

double gaussian_noise(Rng& rng, double variance) {
  if (!(variance >= 0.0) || !std::isfinite(variance))
    throw std::invalid_argument("gaussian_noise: variance must be >= 0");
  if (variance == 0.0) return 0.0;
  return rng.gaussian(0.0, std::sqrt(variance));
}

std::vector<double> run_plant(const PlantCoeffs& coeffs,
                              std::span<const double> input,
                              const NoiseSpec& noise, Rng& rng) {
  coeffs.validate();
  noise.validate();
  if (input.empty()) throw std::invalid_argument("run_plant: empty input");
  std::vector<double> out(input.size());
  for (std::size_t k = 0; k < input.size(); ++k) {
    const double r_km1 = k >= 1 ? input[k - 1] : 0.0;
    const double r_km2 = k >= 2 ? input[k - 2] : 0.0;
    out[k] = plant_output(coeffs, input[k], r_km1, r_km2,
                          gaussian_noise(rng, noise.variance));
  }
  return out;
}

}  // namespace strbf
