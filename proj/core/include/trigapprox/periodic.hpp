#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trigapprox {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic grid x_j = 2*pi*j/N on [0, 2*pi).
class Grid {
public:
  static constexpr std::size_t kMinSize = 8;

  /// Throws std::invalid_argument when size < kMinSize ("grid too coarse").
  explicit Grid(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(size_); }
  double node(std::size_t j) const noexcept {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(size_);
  }
  std::vector<double> nodes() const;

  bool operator==(const Grid&) const = default;

private:
  std::size_t size_;
};

Grid make_grid(std::size_t size);

/// Membership claim f in Lip(alpha, p). An empty exponent means "every p >= 1".
struct LipClass {
  double alpha = 1.0;
  std::optional<double> p;
};

class SampledPeriodicFunction {
public:
  SampledPeriodicFunction(Grid grid, std::vector<double> values, std::string label = {},
                          std::optional<LipClass> claimed_class = std::nullopt);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  const std::string& label() const noexcept { return label_; }
  const std::optional<LipClass>& claimed_class() const noexcept { return claimed_; }

private:
  Grid grid_;
  std::vector<double> values_;
  std::string label_;
  std::optional<LipClass> claimed_;
};

struct LpNormValue {
  double p;
  double value;
};

/// ((1/N) sum |v_j|^p)^(1/p): the normalized L^p norm under the rectangle rule.
double lp_norm(std::span<const double> values, double p);
LpNormValue lp_norm(const SampledPeriodicFunction& f, double p);

namespace zoo {

struct Sine {
  int k = 1;
};

/// constant + sum_k cos_terms[k-1] cos(kx) + sin_terms[k-1] sin(kx)
struct TrigPoly {
  double constant = 0.0;
  std::vector<double> cos_terms;
  std::vector<double> sin_terms;

  int degree() const noexcept;
};

struct Triangle {};
struct Square {};

/// sum_{j=0}^{levels} 2^{-j alpha} cos(2^j x)
struct Weierstrass {
  double alpha = 0.5;
  int levels = 8;
};

} // namespace zoo

using ZooSpec = std::variant<zoo::Sine, zoo::TrigPoly, zoo::Triangle, zoo::Square, zoo::Weierstrass>;

/// Samples a zoo member on the grid. Rejects specs that would alias on the grid.
SampledPeriodicFunction zoo_function(const ZooSpec& spec, const Grid& grid);

/// Parses "sine(3)", "trig_poly(c0, a1, b1, ...)", "constant(c)", "triangle", "square",
/// "weierstrass(alpha, J)".
ZooSpec parse_zoo_spec(std::string_view text);
std::string to_string(const ZooSpec& spec);

} // namespace trigapprox
