#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trigapprox/fourier.hpp"
#include "trigapprox/periodic.hpp"

namespace trigapprox {

/// Row (a_{n,k})_{k=0..n} of a lower-triangular nonnegative matrix.
/// Entries beyond n read as zero.
class SummabilityRow {
public:
  /// Throws on an empty row or on negative / non-finite entries.
  explicit SummabilityRow(std::vector<double> weights);

  std::size_t n() const noexcept { return weights_.size() - 1; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t k) const noexcept { return k < weights_.size() ? weights_[k] : 0.0; }

  /// Summed from k = n down to 0, the same order tail_weights uses.
  double row_sum() const noexcept { return row_sum_; }
  double row_sum_deviation() const noexcept { return std::abs(row_sum_ - 1.0); }

private:
  std::vector<double> weights_;
  double row_sum_;
};

namespace norlund {
struct Constant {};
struct Linear {};  // p_k = k + 1
struct Power {     // p_k = (k + 1)^exponent
  double exponent;
};
struct Geometric {  // p_k = ratio^k
  double ratio;
};
struct List {
  std::vector<double> values;
};
} // namespace norlund

using NorlundWeights =
    std::variant<norlund::Constant, norlund::Linear, norlund::Power, norlund::Geometric, norlund::List>;

enum class FamilyKind { cesaro, identity, norlund, custom, perturbed };

/// Immutable generator n -> SummabilityRow. Cheap to copy.
class MatrixFamily {
public:
  static MatrixFamily cesaro();
  static MatrixFamily identity();
  /// a_{n,k} = p_k / P_n. Rejects nonpositive weights.
  static MatrixFamily norlund(NorlundWeights weights);
  /// Row n must have n+1 nonnegative entries.
  static MatrixFamily custom(std::vector<SummabilityRow> rows);
  /// Rows of base scaled by 1 + (n+1)^{-alpha}.
  static MatrixFamily perturbed(const MatrixFamily& base, double alpha);

  FamilyKind kind() const noexcept;
  /// Canonical spec string, parseable by parse_family_spec (custom families
  /// print as "custom(<rows>)" and are not round-trippable).
  std::string id() const;
  /// Largest n available; empty for unbounded generators.
  std::optional<std::size_t> max_n() const;

  SummabilityRow row(std::size_t n) const;

  /// Norlund weight specification, when kind() == norlund.
  const NorlundWeights* norlund_weights() const noexcept;

  struct Impl;

private:
  explicit MatrixFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Parses "cesaro", "identity", "norlund(const)", "norlund(k+1)", "norlund((k+1)^b)",
/// "norlund(r^k)", "norlund(list:p0;p1;...)", "perturbed(<family>, alpha)",
/// "custom(<path>)".
MatrixFamily parse_family_spec(std::string_view text);

/// Plain-text matrix: line n holds n+1 whitespace-separated reals.
MatrixFamily load_custom_matrix(std::istream& in);
MatrixFamily load_custom_matrix_file(const std::string& path);

/// w_m = sum_{k=m}^{n} a_{n,k}, accumulated from k = n downward.
std::vector<double> tail_weights(const SummabilityRow& row);

/// T_n = sum_k a_{n,k} S_k via one synthesis with U_m scaled by w_m.
SampledPeriodicFunction matrix_mean(const FourierCoefficients& c, const SummabilityRow& row,
                                    const Grid& grid);

/// Literal sum_k a_{n,k} S_k with each S_k materialized. Reference path.
SampledPeriodicFunction matrix_mean_naive(const FourierCoefficients& c, const SummabilityRow& row,
                                          const Grid& grid);

/// K_n(u) = sum_k a_{n,k} sin((k+1/2)u) / (2 sin(u/2)) on [0, pi]; u = 0 gives the limit.
double kernel_eval(const SummabilityRow& row, double u);

struct KernelQuadrature {
  std::size_t initial_points = 64;
  double tolerance = 1e-6;
  std::size_t max_points = std::size_t{1} << 23;
};

struct KernelSplit {
  double near = 0.0;  // integral of |K_n| over [0, pi/n]
  double far = 0.0;   // integral of |K_n| over [pi/n, pi]
  std::size_t near_points = 0;
  std::size_t far_points = 0;
  bool converged = false;

  double total() const noexcept { return near + far; }
};

/// Composite midpoint rule, doubled until successive estimates differ by less
/// than the tolerance. Requires n >= 1 and initial_points >= 64.
KernelSplit kernel_l1_split(const SummabilityRow& row, const KernelQuadrature& quad = {});
/// Same, starting from quad_points panels on each side.
KernelSplit kernel_l1_split(const SummabilityRow& row, std::size_t quad_points);

struct RowDiagnostics {
  std::size_t n = 0;
  double head_weight = 0.0;  // (n+1) a_{n,0}
  double tail_weight = 0.0;  // (n+1) a_{n,n}
  double mid_weight = 0.0;   // (n+1) max{a_{n,0}, a_{n,r}}, r = floor(n/2)
  double var_rows = 0.0;     // sum_{k<n} |a_{n,k} - a_{n,k+1}|
  double var_means = 0.0;    // sum_{k<n} |A_{n,k} - A_{n,k+1}|
  std::vector<double> mean_row;  // A_{n,m} = (1/(m+1)) sum_{k<=m} a_{n,k}

  double mean(std::size_t m) const { return mean_row.at(m); }
};

RowDiagnostics row_diagnostics(const SummabilityRow& row);

} // namespace trigapprox
