#pragma once

#include <cstddef>
#include <span>

namespace trigapprox {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope*x + intercept. r2 is clamped to [0, 1]
/// and equals 1 when the data have no spread in y.
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

} // namespace trigapprox
