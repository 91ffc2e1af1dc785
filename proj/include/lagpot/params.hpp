#pragma once

#include "lagpot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lagpot {

/// The type parameter alpha and the potential order sigma.
struct Params {
  double alpha = 0.0;
  double sigma = 1.0;

  /// Validates alpha > -1 and sigma > 0.
  static Params make(double alpha, double sigma) {
    if (!(alpha > -1.0) || !std::isfinite(alpha))
      throw DomainError("alpha must satisfy alpha > -1 (got " + std::to_string(alpha) + ")");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw DomainError("sigma must satisfy sigma > 0 (got " + std::to_string(sigma) + ")");
    return {alpha, sigma};
  }

  /// Same as make() plus alpha > -1/2, required by the Dunkl two-sided envelope.
  static Params make_dunkl_envelope(double alpha, double sigma) {
    Params p = make(alpha, sigma);
    if (!(alpha > -0.5))
      throw DomainError("the Dunkl envelope needs alpha > -1/2 (got " + std::to_string(alpha) + ")");
    return p;
  }
};

/// Equality used for the borderline cases sigma == 1/2 and sigma == alpha + 1.
/// Inputs such as alpha + 1 arrive through decimal arithmetic, so a few ulps of
/// slack are allowed.
inline bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace lagpot
