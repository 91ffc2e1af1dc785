#pragma once

// Envelope shapes and the calibration that turns an envelope into a
// two-sided certificate
//   C^{-1} Y exp(-c_lower Z) <= X <= C Y exp(-c_upper Z).

#include "lagpot/signed_log.hpp"

#include <array>
#include <string>
#include <vector>

namespace lagpot {

struct EnvelopeConstants {
  double C_ratio = 1.0;
  double c_lower = 1.0;
  double c_upper = 1.0;

  /// Checks C_ratio >= 1 and c_lower >= c_upper > 0.
  static EnvelopeConstants make(double C_ratio, double c_lower, double c_upper);
};

struct EnvelopeBounds {
  SignedLogValue lower;
  SignedLogValue upper;
};

/// A closed-form envelope: polynomial/log part Y and exponential argument Z.
/// Shapes without an exponential factor ignore Z and the c constants.
struct EnvelopeShape {
  SignedLogValue base;
  double decay = 0.0;
  bool has_exponential = false;

  EnvelopeBounds bounds(const EnvelopeConstants& k) const;
};

/// A 1-D axis description; 2-D grids use the same spec on both axes unless
/// the caller states otherwise in `note`.
struct GridSpec {
  bool log_spaced = true;
  double lo = 0.01;
  double hi = 1.0;
  int n = 10;
  std::string note;

  std::vector<double> points() const;
  /// Parses "log:lo:hi:n" or "lin:lo:hi:n".
  static GridSpec parse(const std::string& text);
  std::string to_string() const;
};

struct RatioReport {
  /// Extremes of X / Y without exponential factors.
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double log_min_ratio = 0.0;
  double log_max_ratio = 0.0;
  std::array<double, 2> argmin{};
  std::array<double, 2> argmax{};
  EnvelopeConstants fitted;
  GridSpec grid;
  std::size_t points = 0;
  /// Points skipped because both X and Y were infinite (or both zero).
  std::size_t skipped = 0;
};

struct CalibrationSample {
  std::array<double, 2> point{};
  SignedLogValue value;
  EnvelopeShape shape;
};

/// The c grid: 25 log-spaced values in [1e-3, 10].
std::vector<double> calibration_c_grid();

/// Fits (C, c_lower, c_upper) to the samples.
///
/// C_up(c) = max X e^{cZ} / Y and C_lo(c) = max Y e^{-cZ} / X. With
/// C* = max(C_lo(10), C_up(1e-3)), c_upper is the largest grid c with
/// C_up(c) <= C*, c_lower the smallest grid c >= c_upper with C_lo(c) <= C*,
/// and C_ratio = max(C_up(c_upper), C_lo(c_lower)).
/// Throws DomainError if a sample has X and Y of opposite sign.
RatioReport calibrate_samples(const std::vector<CalibrationSample>& samples, const GridSpec& grid = {});

/// True when every sample satisfies the bounds given by `k`, allowing a
/// relative slack `slack` for rounding.
bool sandwich_holds(const std::vector<CalibrationSample>& samples, const EnvelopeConstants& k,
                    double slack = 1e-9);

}  // namespace lagpot
