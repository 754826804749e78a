#include "trigapprox/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "trigapprox/regression.hpp"

namespace trigapprox {

namespace {

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("modulus: exponent p must be a finite real >= 1");
  }
}

// Number of whole grid steps in (0, delta]; the epsilon absorbs deltas
// written as exact multiples of the spacing (pi/64 etc.).
std::size_t steps_within(const Grid& grid, double delta) {
  const double ratio = delta / grid.spacing();
  return static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12)));
}

void require_delta(const Grid& grid, double delta) {
  if (!(delta > 0.0 && delta <= kPi * (1.0 + 1e-12))) {
    throw std::invalid_argument("modulus: delta must lie in (0, pi]");
  }
  if (steps_within(grid, delta) == 0) {
    throw std::invalid_argument("modulus: delta is below the grid spacing");
  }
}

std::vector<std::size_t> shift_ladder(std::size_t max_steps, std::size_t shift_count) {
  std::vector<std::size_t> steps;
  if (max_steps <= shift_count) {
    steps.resize(max_steps);
    for (std::size_t m = 0; m < max_steps; ++m) {
      steps[m] = m + 1;
    }
    return steps;
  }
  const double top = std::log(static_cast<double>(max_steps));
  for (std::size_t i = 0; i < shift_count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(shift_count - 1);
    steps.push_back(static_cast<std::size_t>(std::llround(std::exp(t * top))));
  }
  steps.back() = max_steps;
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

} // namespace

double shift_diff_norm_steps(const SampledPeriodicFunction& f, std::ptrdiff_t steps, double p) {
  require_p(p);
  const auto v = f.values();
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const std::ptrdiff_t shift = ((steps % n) + n) % n;
  std::vector<double> diff(v.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t src = (j + shift < n) ? j + shift : j + shift - n;
    diff[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(src)] - v[static_cast<std::size_t>(j)];
  }
  return lp_norm(diff, p);
}

double shift_diff_norm(const SampledPeriodicFunction& f, double h, double p) {
  if (!(std::abs(h) <= kPi * (1.0 + 1e-12))) {
    throw std::invalid_argument("shift_diff_norm: |h| must not exceed pi");
  }
  const auto steps = static_cast<std::ptrdiff_t>(std::llround(h / f.grid().spacing()));
  return shift_diff_norm_steps(f, steps, p);
}

double modulus(const SampledPeriodicFunction& f, double delta, double p, std::size_t shift_count) {
  require_p(p);
  require_delta(f.grid(), delta);
  if (shift_count < 8) {
    throw std::invalid_argument("modulus: shift_count must be at least 8");
  }
  double best = 0.0;
  for (std::size_t m : shift_ladder(steps_within(f.grid(), delta), shift_count)) {
    best = std::max(best, shift_diff_norm_steps(f, static_cast<std::ptrdiff_t>(m), p));
  }
  return best;
}

ModulusCurve modulus_curve(const SampledPeriodicFunction& f, double p,
                           std::span<const double> deltas, std::size_t shift_count) {
  require_p(p);
  if (shift_count < 8) {
    throw std::invalid_argument("modulus: shift_count must be at least 8");
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    require_delta(f.grid(), deltas[i]);
    if (i > 0 && !(deltas[i] > deltas[i - 1])) {
      throw std::invalid_argument("modulus_curve: deltas must be strictly increasing");
    }
  }
  ModulusCurve curve;
  curve.p = p;
  curve.deltas.assign(deltas.begin(), deltas.end());
  curve.omegas.reserve(deltas.size());
  if (deltas.empty()) {
    return curve;
  }
  const std::size_t top = steps_within(f.grid(), deltas.back());
  if (top <= shift_count) {
    // Exhaustive: one pass over all shifts, then running maxima.
    std::vector<double> running(top + 1, 0.0);
    for (std::size_t m = 1; m <= top; ++m) {
      running[m] = std::max(running[m - 1],
                            shift_diff_norm_steps(f, static_cast<std::ptrdiff_t>(m), p));
    }
    for (double d : deltas) {
      curve.omegas.push_back(running[steps_within(f.grid(), d)]);
    }
    return curve;
  }
  double prev = 0.0;
  for (double d : deltas) {
    prev = std::max(prev, modulus(f, d, p, shift_count));
    curve.omegas.push_back(prev);
  }
  return curve;
}

std::string to_csv(const ModulusCurve& curve) {
  std::ostringstream out;
  out << "delta,omega\n" << std::setprecision(17);
  for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
    out << curve.deltas[i] << ',' << curve.omegas[i] << '\n';
  }
  return out.str();
}

std::vector<double> default_delta_grid() {
  std::vector<double> deltas(7);
  const double lo = std::log(kPi / 256.0);
  const double hi = std::log(kPi / 4.0);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    deltas[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / 6.0);
  }
  return deltas;
}

LipFit lip_exponent_fit(const ModulusCurve& curve) {
  if (curve.deltas.size() < 5) {
    throw std::invalid_argument("lip_exponent_fit: need at least 5 deltas");
  }
  const double lo = curve.deltas.front();
  const double hi = curve.deltas.back();
  if (!(hi >= 4.0 * lo)) {
    throw std::invalid_argument("lip_exponent_fit: deltas must span at least two octaves");
  }
  LipFit fit;
  fit.delta_min = lo;
  fit.delta_max = hi;
  for (std::size_t i = 0; i < curve.omegas.size(); ++i) {
    if (!(curve.omegas[i] > 0.0)) {
      std::ostringstream msg;
      msg << "modulus vanishes at delta = " << curve.deltas[i] << "; exponent undefined";
      fit.diagnostic = msg.str();
      fit.alpha_hat = std::numeric_limits<double>::quiet_NaN();
      fit.r2 = std::numeric_limits<double>::quiet_NaN();
      return fit;
    }
  }
  std::vector<double> x(curve.deltas.size());
  std::vector<double> y(curve.deltas.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::log(curve.deltas[i]);
    y[i] = std::log(curve.omegas[i]);
  }
  const auto line = least_squares_line(x, y);
  fit.alpha_hat = line.slope;
  fit.r2 = line.r2;
  return fit;
}

LipFit lip_exponent_fit(const SampledPeriodicFunction& f, double p,
                        std::span<const double> deltas, std::size_t shift_count) {
  return lip_exponent_fit(modulus_curve(f, p, deltas, shift_count));
}

std::string to_json(const LipFit& fit) {
  nlohmann::ordered_json doc;
  if (fit.defined()) {
    doc["alpha_hat"] = fit.alpha_hat;
    doc["r2"] = fit.r2;
  } else {
    doc["alpha_hat"] = nullptr;
    doc["r2"] = nullptr;
  }
  doc["delta_min"] = fit.delta_min;
  doc["delta_max"] = fit.delta_max;
  doc["diagnostic"] = fit.diagnostic;
  return doc.dump(2);
}

} // namespace trigapprox
