#include "trigapprox/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trigapprox {

namespace {

// cos/sin of 2*pi*r/N for r = 0..N-1. Indexing by (j*k) mod N keeps every
// argument reduced, so no accuracy is lost to large phases.
struct TrigTable {
  std::vector<double> cos_v;
  std::vector<double> sin_v;

  explicit TrigTable(std::size_t n) : cos_v(n), sin_v(n) {
    for (std::size_t r = 0; r < n; ++r) {
      const double x = kTwoPi * static_cast<double>(r) / static_cast<double>(n);
      cos_v[r] = std::cos(x);
      sin_v[r] = std::sin(x);
    }
  }
};

void require_degree(std::size_t n, const FourierCoefficients& c, const char* what) {
  if (n > c.max_degree()) {
    throw std::invalid_argument(std::string(what) + ": degree " + std::to_string(n) +
                                " exceeds available coefficients M = " +
                                std::to_string(c.max_degree()));
  }
}

} // namespace

FourierCoefficients::FourierCoefficients(std::vector<double> cos_terms,
                                         std::vector<double> sin_terms,
                                         std::size_t source_grid_size)
    : cos_(std::move(cos_terms)), sin_(std::move(sin_terms)), source_size_(source_grid_size) {
  if (cos_.empty() || cos_.size() != sin_.size()) {
    throw std::invalid_argument("FourierCoefficients: cos/sin arrays must be non-empty and equal");
  }
  if (max_degree() > max_unaliased_degree(source_size_)) {
    throw std::invalid_argument("FourierCoefficients: degree " + std::to_string(max_degree()) +
                                " too large for source grid of " + std::to_string(source_size_));
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(cos_.begin(), cos_.end(), finite) ||
      !std::all_of(sin_.begin(), sin_.end(), finite)) {
    throw std::invalid_argument("FourierCoefficients: non-finite entry");
  }
  sin_[0] = 0.0;
}

FourierCoefficients FourierCoefficients::damped(std::span<const double> weights) const {
  if (weights.empty()) {
    throw std::invalid_argument("damped: empty weight vector");
  }
  require_degree(weights.size() - 1, *this, "damped");
  std::vector<double> c(weights.size());
  std::vector<double> s(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    c[k] = weights[k] * cos_[k];
    s[k] = weights[k] * sin_[k];
  }
  return {std::move(c), std::move(s), source_size_};
}

FourierCoefficients analyze(const SampledPeriodicFunction& f, std::size_t max_degree) {
  const std::size_t n = f.size();
  if (max_degree > max_unaliased_degree(n)) {
    throw std::invalid_argument("analyze: M = " + std::to_string(max_degree) +
                                " aliases on N = " + std::to_string(n) +
                                " samples (need M <= floor((N-1)/2))");
  }
  const TrigTable table(n);
  const auto v = f.values();
  std::vector<double> a(max_degree + 1, 0.0);
  std::vector<double> b(max_degree + 1, 0.0);
  for (std::size_t k = 0; k <= max_degree; ++k) {
    double sc = 0.0;
    double ss = 0.0;
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
      sc += v[j] * table.cos_v[r];
      ss += v[j] * table.sin_v[r];
      r += k;
      if (r >= n) {
        r -= n;
      }
    }
    a[k] = 2.0 * sc / static_cast<double>(n);
    b[k] = 2.0 * ss / static_cast<double>(n);
  }
  return {std::move(a), std::move(b), n};
}

FourierCoefficients analyze(const SampledPeriodicFunction& f) {
  return analyze(f, max_unaliased_degree(f.size()));
}

std::vector<double> synthesize_weighted(const FourierCoefficients& c,
                                        std::span<const double> weights, const Grid& grid) {
  if (weights.empty()) {
    throw std::invalid_argument("synthesize_weighted: empty weight vector");
  }
  const std::size_t n = weights.size() - 1;
  require_degree(n, c, "synthesize_weighted");
  const std::size_t size = grid.size();
  const TrigTable table(size);

  std::vector<double> wc(n + 1);
  std::vector<double> ws(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    wc[k] = weights[k] * c.a(k);
    ws[k] = weights[k] * c.b(k);
  }
  const double head = 0.5 * wc[0];

  std::vector<double> out(size);
  for (std::size_t j = 0; j < size; ++j) {
    double acc = head;
    const std::size_t step = j % size;
    std::size_t r = step;
    for (std::size_t k = 1; k <= n; ++k) {
      acc += wc[k] * table.cos_v[r] + ws[k] * table.sin_v[r];
      r += step;
      if (r >= size) {
        r -= size;
      }
    }
    out[j] = acc;
  }
  return out;
}

std::vector<double> synthesize(const FourierCoefficients& c, const Grid& grid) {
  const std::vector<double> ones(c.max_degree() + 1, 1.0);
  return synthesize_weighted(c, ones, grid);
}

SampledPeriodicFunction partial_sum(const FourierCoefficients& c, std::size_t n, const Grid& grid) {
  require_degree(n, c, "partial_sum");
  const std::vector<double> ones(n + 1, 1.0);
  return {grid, synthesize_weighted(c, ones, grid), "S_" + std::to_string(n)};
}

SampledPeriodicFunction harmonic_term(const FourierCoefficients& c, std::size_t k,
                                      const Grid& grid) {
  require_degree(k, c, "harmonic_term");
  std::vector<double> weights(k + 1, 0.0);
  weights[k] = 1.0;
  return {grid, synthesize_weighted(c, weights, grid), "U_" + std::to_string(k)};
}

std::vector<double> cesaro_damping(std::size_t n) {
  std::vector<double> w(n + 1);
  const auto denom = static_cast<double>(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    w[k] = 1.0 - static_cast<double>(k) / denom;
  }
  return w;
}

SampledPeriodicFunction cesaro_mean(const FourierCoefficients& c, std::size_t n, const Grid& grid) {
  require_degree(n, c, "cesaro_mean");
  return {grid, synthesize_weighted(c, cesaro_damping(n), grid), "sigma_" + std::to_string(n)};
}

std::vector<double> vallee_poussin_damping(std::size_t n) {
  const auto wide = cesaro_damping(2 * n + 1);
  const auto narrow = cesaro_damping(n);
  std::vector<double> w(2 * n + 2);
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = 2.0 * wide[k] - (k <= n ? narrow[k] : 0.0);
  }
  return w;
}

SampledPeriodicFunction vallee_poussin(const FourierCoefficients& c, std::size_t n,
                                       const Grid& grid) {
  require_degree(2 * n + 1, c, "vallee_poussin");
  return {grid, synthesize_weighted(c, vallee_poussin_damping(n), grid), "V_" + std::to_string(n)};
}

} // namespace trigapprox
