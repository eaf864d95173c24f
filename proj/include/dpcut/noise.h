#pragma once

#include <cstdint>

#include "dpcut/rng.h"

namespace dpcut {

/// Privacy parameters of a mechanism run.
struct NoiseSpec {
  /// Rate of the exponential noise; the audited guarantee is 4 * tau * epsilon.
  double epsilon = 1.0;
  /// Largest per-pair weight change between neighboring graphs.
  double tau = 1.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless epsilon > 0 and tau >= 0.
  void validate() const;
};

/// Exp(lambda) by inverse transform: -ln(1 - U) / lambda with U in [0, 1).
double sample_exp(double lambda, Rng &rng);

/// Lap(b): a fair sign times an Exp(1/b) magnitude.
double sample_lap(double b, Rng &rng);

} // namespace dpcut
