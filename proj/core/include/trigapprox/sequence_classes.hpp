#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trigapprox {

/// How the finite data relate to the infinite sequence they stand for.
/// `row` appends the implicit terminal zero c_L = 0 (a_{n,k} = 0 for k > n);
/// `free` truncates tail sums at the last stored index.
enum class Semantics { free, row };

class FiniteSequence {
public:
  /// Throws on empty input or negative / non-finite entries.
  explicit FiniteSequence(std::vector<double> values, Semantics semantics = Semantics::free);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  Semantics semantics() const noexcept { return semantics_; }

private:
  std::vector<double> values_;
  Semantics semantics_;
};

/// Reads whitespace- or newline-separated nonnegative reals.
FiniteSequence parse_sequence(std::istream& in, Semantics semantics = Semantics::free);

/// C_m = (1/(m+1)) sum_{k<=m} c_k; keeps the semantics flag.
FiniteSequence mean_transform(const FiniteSequence& c);

using IndexPair = std::pair<std::size_t, std::size_t>;

struct MonotoneVerdict {
  bool nonincreasing = true;
  bool nondecreasing = true;
  std::optional<IndexPair> nonincreasing_witness;  // first (k, k+1) with c_k < c_{k+1}
  std::optional<IndexPair> nondecreasing_witness;  // first (k, k+1) with c_k > c_{k+1}
};

MonotoneVerdict monotone_test(const FiniteSequence& c);

/// Minimal class constant; infinity encodes "no finite constant".
struct ClassConstant {
  double value = 0.0;
  std::optional<IndexPair> witness;

  bool finite() const noexcept;
};

enum class Direction { decreasing, increasing };

/// decreasing: max_{n>=m} c_n / c_m. increasing: max_{n>=m} c_m / c_n.
/// Pairs 0/0 impose nothing; x/0 with x > 0 is infinite. Always >= 1.
/// Witness is (n, m) for the maximizing pair.
ClassConstant almost_monotone_constant(const FiniteSequence& c, Direction direction);

enum class VariationSide { rest, head };

/// rest: max_m sum_{k>=m} |c_k - c_{k+1}| / c_m, the sum running to the
/// terminal zero under row semantics and to L-2 otherwise.
/// head: max_{m<=N} sum_{k<m} |c_k - c_{k+1}| / c_m, N the last nonzero index.
/// Witness is (m, last summed index).
ClassConstant bounded_variation_constant(const FiniteSequence& c, VariationSide side);

enum class SequenceClass : std::size_t {
  NIS, NDS, AMDS, AMIS, RBVS, HBVS,
  NIMS, NDMS, AMDMS, AMIMS, RBVMS, HBVMS,
};

inline constexpr std::size_t kSequenceClassCount = 12;

std::string_view class_name(SequenceClass cls);

struct ClassVerdict {
  SequenceClass cls{};
  bool member = false;
  double constant = 0.0;  // minimal K; infinity when not a member
  std::optional<IndexPair> witness;
};

struct ClassReport {
  std::size_t length = 0;
  Semantics semantics = Semantics::free;
  std::array<ClassVerdict, kSequenceClassCount> verdicts{};

  const ClassVerdict& operator[](SequenceClass cls) const {
    return verdicts[static_cast<std::size_t>(cls)];
  }
};

/// Base classes on c, mean classes on mean_transform(c).
ClassReport classify(const FiniteSequence& c);

/// {"length":..,"semantics":..,"classes":[{"class","member","K","witness"}...]};
/// infinite K is written as null.
std::string to_json(const ClassReport& report);

struct EmbeddingViolation {
  std::string relation;
  std::size_t sample = 0;
  std::string detail;
};

struct EmbeddingReport {
  std::vector<EmbeddingViolation> violations;
  std::size_t checks = 0;
  /// Largest observed K(mean)/max(1, K^2) over the AM relations; <= 1 when the
  /// constant bound holds.
  double worst_constant_ratio = 0.0;
};

struct EmbeddingOptions {
  std::size_t sample_count = 1000;
  std::size_t max_len = 64;
  std::uint64_t seed = 1;
  double max_am_constant = 10.0;
};

/// Draws seeded members of each antecedent class and checks the inclusions
/// NIS->NIMS, NDS->NDMS, AMDS->AMDMS, AMIS->AMIMS (with the max(1, K^2)
/// constant bound) and the chains NIS->RBVS->AMDS, NDS->HBVS->AMIS.
EmbeddingReport embedding_harness(const EmbeddingOptions& options);

/// Seeded generators, exposed for tests. Lengths are uniform in [1, max_len].
namespace sampling {
std::vector<double> nonincreasing(std::uint64_t seed, std::size_t max_len);
std::vector<double> nondecreasing(std::uint64_t seed, std::size_t max_len);
/// Monotone base times noise in [1, sqrt(K)].
std::vector<double> almost_decreasing(std::uint64_t seed, std::size_t max_len, double max_k);
std::vector<double> almost_increasing(std::uint64_t seed, std::size_t max_len, double max_k);
} // namespace sampling

} // namespace trigapprox
