#include "dpcut/noise.h"

#include <cmath>
#include <stdexcept>

namespace dpcut {

void NoiseSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be nonnegative");
  }
}

double sample_exp(double lambda, Rng &rng) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("sample_exp: lambda must be positive");
  }
  return -std::log1p(-rng.uniform01()) / lambda;
}

double sample_lap(double b, Rng &rng) {
  if (!(b > 0.0)) {
    throw std::invalid_argument("sample_lap: scale must be positive");
  }
  const bool negative = rng.coin();
  const double magnitude = sample_exp(1.0 / b, rng);
  return negative ? -magnitude : magnitude;
}

} // namespace dpcut
