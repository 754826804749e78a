#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trigapprox/periodic.hpp"

namespace trigapprox {

/// Real Fourier coefficients a_0, a_k, b_k (k = 1..M) under the a_0/2 convention:
/// S_n = a_0/2 + sum_{k<=n} (a_k cos kx + b_k sin kx).
class FourierCoefficients {
public:
  /// cos_terms[0] holds a_0, sin_terms[0] is ignored. Both have length M+1.
  FourierCoefficients(std::vector<double> cos_terms, std::vector<double> sin_terms,
                      std::size_t source_grid_size);

  std::size_t max_degree() const noexcept { return cos_.size() - 1; }
  std::size_t source_grid_size() const noexcept { return source_size_; }

  double a0() const noexcept { return cos_[0]; }
  double a(std::size_t k) const noexcept { return cos_[k]; }
  double b(std::size_t k) const noexcept { return sin_[k]; }
  std::span<const double> cos_terms() const noexcept { return cos_; }
  std::span<const double> sin_terms() const noexcept { return sin_; }

  /// Coefficients of sum_k weights[k] U_k, truncated to degree weights.size()-1.
  FourierCoefficients damped(std::span<const double> weights) const;

private:
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::size_t source_size_;
};

/// floor((N-1)/2): the largest degree recoverable from N samples without aliasing.
constexpr std::size_t max_unaliased_degree(std::size_t grid_size) noexcept {
  return grid_size == 0 ? 0 : (grid_size - 1) / 2;
}

/// Coefficients by discrete orthogonality on the sample grid.
FourierCoefficients analyze(const SampledPeriodicFunction& f, std::size_t max_degree);
FourierCoefficients analyze(const SampledPeriodicFunction& f);

/// Evaluates a_0/2 + sum_k (a_k cos kx + b_k sin kx) at every grid node.
std::vector<double> synthesize(const FourierCoefficients& c, const Grid& grid);

/// sum_{k<=n} weights[k] U_k(x_j), n = weights.size()-1. Rejects n > M.
std::vector<double> synthesize_weighted(const FourierCoefficients& c,
                                        std::span<const double> weights, const Grid& grid);

SampledPeriodicFunction partial_sum(const FourierCoefficients& c, std::size_t n, const Grid& grid);
SampledPeriodicFunction harmonic_term(const FourierCoefficients& c, std::size_t k, const Grid& grid);

/// Damping factors 1 - k/(n+1), k = 0..n.
std::vector<double> cesaro_damping(std::size_t n);
SampledPeriodicFunction cesaro_mean(const FourierCoefficients& c, std::size_t n, const Grid& grid);

/// Damping factors of 2*sigma_{2n+1} - sigma_n, k = 0..2n+1.
std::vector<double> vallee_poussin_damping(std::size_t n);
SampledPeriodicFunction vallee_poussin(const FourierCoefficients& c, std::size_t n,
                                       const Grid& grid);

} // namespace trigapprox
