#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigapprox/periodic.hpp"
#include "trigapprox/summability.hpp"

namespace trigapprox {

/// E_n = ||T_n f - f||_{L^p} along an increasing list of n.
struct ErrorCurve {
  std::string family_id;
  std::string function_id;
  double p = 2.0;
  std::vector<std::size_t> n;
  std::vector<double> error;
  std::size_t grid_size = 0;
};

/// Requires N >= 4(max n + 1); f is analyzed at M = floor((N-1)/2).
ErrorCurve error_curve(const MatrixFamily& family, const SampledPeriodicFunction& f, double p,
                       std::span<const std::size_t> n_list);

/// round(first * 2^{i/per_octave}) up to last, deduplicated; e.g. 16, 23, 32, ..., 512.
std::vector<std::size_t> geometric_n_list(std::size_t first, std::size_t last,
                                          std::size_t per_octave = 2);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
  std::vector<std::string> diagnostics;  // dropped points
};

inline constexpr std::size_t kDefaultRateCut = 16;

/// Least squares on (log n, log E_n) over n >= n_min_cut. Non-positive errors
/// are dropped with a diagnostic; fewer than 5 remaining points is an error.
RateFit loglog_fit(const ErrorCurve& curve, std::size_t n_min_cut = kDefaultRateCut);

/// (sum_k (k+1)^{-alpha} a_{n,k}) / (n+1)^{-alpha}, 0 < alpha < 1.
double weighted_row_ratio(const MatrixFamily& family, double alpha, std::size_t n);

/// One monitored quantity of a clause: its values over n_range are "bounded"
/// when all are finite and the sup over the upper half of the range (split at
/// the geometric midpoint of n) does not exceed growth_tolerance times the
/// sup over the lower half (plus an absolute floor for round-off).
struct QuantityEvidence {
  std::string name;
  std::string inequality;
  double sup = 0.0;
  double early_sup = 0.0;
  double late_sup = 0.0;
  bool bounded = false;
};

struct ClauseResult {
  std::string clause;
  std::string statement;
  bool applicable = false;  // (p, alpha) fall in the clause's regime
  bool holds = false;       // matrix hypotheses verified on n_range
  double sup_constant = 0.0;
  double parameter = 0.0;   // beta or eta that verified the clause, 0 if none
  std::vector<QuantityEvidence> evidence;
};

struct ClauseVerdict {
  std::string family_id;
  double p = 1.0;
  double alpha = 1.0;
  std::size_t n_first = 1;
  std::size_t n_last = 1;
  std::vector<ClauseResult> clauses;

  /// Throws std::out_of_range for unknown clause ids.
  const ClauseResult& at(std::string_view clause) const;
};

struct ClauseCheckOptions {
  std::size_t n_first = 1;
  std::size_t n_last = 512;
  std::vector<double> beta_grid{0.25, 0.5, 1.0, 2.0};
  std::vector<double> eta_grid{0.25, 0.5, 1.0, 2.0};
  double growth_tolerance = 1.5;
  double absolute_floor = 1e-9;
};

/// Clause ids: "i".."vi" (degree-of-approximation hypotheses on the matrix),
/// "last_weight" ((n+1) p_n = O(P_n), i.e. (n+1) a_{n,n} = O(1)), "eta_monotone"
/// (((k+1)^eta a_{n,k})_k nondecreasing), "mid_weight" ((n+1) max{a_{n,0}, a_{n,r}} = O(1)),
/// "row_monotone" (rows in NDS or NIS), "stochastic" (row sums equal 1),
/// "row_sum" (|sum_k a_{n,k} - 1| = O(n^{-alpha})).
ClauseVerdict clause_check(const MatrixFamily& family, double p, double alpha,
                           const ClauseCheckOptions& options = {});

/// Boundedness rule used by clause_check, exposed for diagnostics and tests.
QuantityEvidence assess_bounded(std::string name, std::string inequality,
                                std::span<const std::size_t> n, std::span<const double> values,
                                double growth_tolerance, double absolute_floor);

/// "matrix,function,p,n,error" rows, 17 significant digits.
std::string to_csv(std::span<const ErrorCurve> curves);
std::string to_json(const RateFit& fit);
std::string to_json(const ClauseVerdict& verdict);

} // namespace trigapprox
