#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "trigapprox/periodic.hpp"

namespace trigapprox {

/// Default upper bound on the number of shifts examined per delta. Large
/// enough that every aligned shift is examined on any practical grid.
inline constexpr std::size_t kAllShifts = std::numeric_limits<std::size_t>::max();

/// ((1/N) sum_j |f(x_j + h) - f(x_j)|^p)^{1/p}, with h rounded to the nearest
/// multiple of the grid spacing. Rejects |h| > pi.
double shift_diff_norm(const SampledPeriodicFunction& f, double h, double p);

/// Same quantity for an exact shift by `steps` grid nodes.
double shift_diff_norm_steps(const SampledPeriodicFunction& f, std::ptrdiff_t steps, double p);

/// omega_p(f; delta): max of shift_diff_norm over aligned 0 < h <= delta.
/// Every aligned shift is examined when there are at most shift_count of
/// them; otherwise shift_count geometrically spaced shifts (always
/// including the largest) are used. Requires 0 < delta <= pi, delta at least
/// one grid step, shift_count >= 8.
double modulus(const SampledPeriodicFunction& f, double delta, double p,
               std::size_t shift_count = kAllShifts);

struct ModulusCurve {
  double p = 1.0;
  std::vector<double> deltas;
  std::vector<double> omegas;
};

/// Deltas must be increasing. Omegas come out nondecreasing.
ModulusCurve modulus_curve(const SampledPeriodicFunction& f, double p,
                           std::span<const double> deltas, std::size_t shift_count = kAllShifts);

/// "delta,omega" header, 17 significant digits.
std::string to_csv(const ModulusCurve& curve);

struct LipFit {
  double alpha_hat = 0.0;  // NaN when undefined
  double r2 = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  std::string diagnostic;  // empty on success

  bool defined() const noexcept { return diagnostic.empty(); }
};

/// Geometric deltas pi/256 .. pi/4 (7 points).
std::vector<double> default_delta_grid();

/// Least-squares slope of log omega against log delta. Needs >= 5 deltas
/// spanning at least two octaves. A zero modulus yields an undefined fit.
LipFit lip_exponent_fit(const SampledPeriodicFunction& f, double p,
                        std::span<const double> deltas, std::size_t shift_count = kAllShifts);
LipFit lip_exponent_fit(const ModulusCurve& curve);

std::string to_json(const LipFit& fit);

} // namespace trigapprox
