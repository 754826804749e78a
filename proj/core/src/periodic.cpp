#include "trigapprox/periodic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "spec_parse.hpp"

namespace trigapprox {

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("lp_norm: exponent p must be a finite real >= 1");
  }
}

} // namespace

Grid::Grid(std::size_t size) : size_(size) {
  if (size < kMinSize) {
    throw std::invalid_argument("grid too coarse: need at least 8 nodes, got " +
                                std::to_string(size));
  }
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(size_);
  for (std::size_t j = 0; j < size_; ++j) {
    x[j] = node(j);
  }
  return x;
}

Grid make_grid(std::size_t size) { return Grid(size); }

SampledPeriodicFunction::SampledPeriodicFunction(Grid grid, std::vector<double> values,
                                                 std::string label,
                                                 std::optional<LipClass> claimed_class)
    : grid_(grid), values_(std::move(values)), label_(std::move(label)),
      claimed_(std::move(claimed_class)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("sample count " + std::to_string(values_.size()) +
                                " does not match grid size " + std::to_string(grid_.size()));
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("sampled function '" + label_ + "' has non-finite values");
  }
}

double lp_norm(std::span<const double> values, double p) {
  require_p(p);
  if (values.empty()) {
    throw std::invalid_argument("lp_norm: empty sample");
  }
  double peak = 0.0;
  for (double v : values) {
    peak = std::max(peak, std::abs(v));
  }
  if (peak == 0.0) {
    return 0.0;
  }
  // Scaling by the peak keeps |v|^p representable for large p and makes
  // constants come out exactly.
  const auto count = static_cast<double>(values.size());
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : values) {
      acc += std::abs(v) / peak;
    }
    return peak * (acc / count);
  }
  if (p == 2.0) {
    for (double v : values) {
      const double s = v / peak;
      acc += s * s;
    }
    return peak * std::sqrt(acc / count);
  }
  for (double v : values) {
    acc += std::pow(std::abs(v) / peak, p);
  }
  return peak * std::pow(acc / count, 1.0 / p);
}

LpNormValue lp_norm(const SampledPeriodicFunction& f, double p) {
  return {p, lp_norm(f.values(), p)};
}

int zoo::TrigPoly::degree() const noexcept {
  return static_cast<int>(std::max(cos_terms.size(), sin_terms.size()));
}

namespace {

struct Sampler {
  const Grid& grid;

  SampledPeriodicFunction operator()(const zoo::Sine& s) const {
    if (s.k < 1) {
      throw std::invalid_argument("sine(k) needs k >= 1");
    }
    if (2 * static_cast<std::size_t>(s.k) >= grid.size()) {
      throw std::invalid_argument("sine(" + std::to_string(s.k) + ") aliases on a grid of " +
                                  std::to_string(grid.size()) + " nodes");
    }
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = std::sin(static_cast<double>(s.k) * grid.node(j));
    }
    return {grid, std::move(v), to_string(ZooSpec{s}), LipClass{1.0, std::nullopt}};
  }

  SampledPeriodicFunction operator()(const zoo::TrigPoly& t) const {
    if (2 * static_cast<std::size_t>(t.degree()) >= grid.size()) {
      throw std::invalid_argument("trig_poly of degree " + std::to_string(t.degree()) +
                                  " aliases on a grid of " + std::to_string(grid.size()) +
                                  " nodes");
    }
    std::vector<double> v(grid.size(), t.constant);
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double x = grid.node(j);
      for (std::size_t k = 0; k < t.cos_terms.size(); ++k) {
        v[j] += t.cos_terms[k] * std::cos(static_cast<double>(k + 1) * x);
      }
      for (std::size_t k = 0; k < t.sin_terms.size(); ++k) {
        v[j] += t.sin_terms[k] * std::sin(static_cast<double>(k + 1) * x);
      }
    }
    return {grid, std::move(v), to_string(ZooSpec{t}), LipClass{1.0, std::nullopt}};
  }

  SampledPeriodicFunction operator()(const zoo::Triangle&) const {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = 1.0 - 2.0 * std::abs(grid.node(j) - kPi) / kPi;
    }
    return {grid, std::move(v), "triangle", LipClass{1.0, std::nullopt}};
  }

  SampledPeriodicFunction operator()(const zoo::Square&) const {
    // +1 on [0, pi), -1 on [pi, 2pi); x_j < pi decided in integers.
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = (2 * j < grid.size()) ? 1.0 : -1.0;
    }
    return {grid, std::move(v), "square", LipClass{1.0, 1.0}};
  }

  SampledPeriodicFunction operator()(const zoo::Weierstrass& w) const {
    if (!(w.alpha > 0.0 && w.alpha < 1.0)) {
      throw std::invalid_argument("weierstrass needs 0 < alpha < 1");
    }
    if (w.levels < 0 || w.levels > 60) {
      throw std::invalid_argument("weierstrass level count out of range");
    }
    const std::size_t top = std::size_t{1} << w.levels;
    if (2 * top >= grid.size()) {
      throw std::invalid_argument("weierstrass(" + format_real(w.alpha) + ", " +
                                  std::to_string(w.levels) + ") aliases: need 2^J < N/2, N = " +
                                  std::to_string(grid.size()));
    }
    std::vector<double> v(grid.size(), 0.0);
    for (int level = 0; level <= w.levels; ++level) {
      const double amp = std::pow(2.0, -level * w.alpha);
      const std::size_t freq = std::size_t{1} << level;
      for (std::size_t j = 0; j < v.size(); ++j) {
        // Reduce freq*j mod N first so the argument stays in [0, 2pi).
        v[j] += amp * std::cos(grid.node((freq * j) % grid.size()));
      }
    }
    return {grid, std::move(v), to_string(ZooSpec{w}), LipClass{w.alpha, std::nullopt}};
  }
};

} // namespace

SampledPeriodicFunction zoo_function(const ZooSpec& spec, const Grid& grid) {
  return std::visit(Sampler{grid}, spec);
}

ZooSpec parse_zoo_spec(std::string_view text) {
  const auto call = detail::parse_call(text);
  const auto expect_args = [&](std::size_t count) {
    if (call.args.size() != count) {
      throw std::invalid_argument("zoo spec '" + std::string(text) + "' expects " +
                                  std::to_string(count) + " argument(s)");
    }
  };
  if (call.name == "sine") {
    if (!call.has_parens) {
      return zoo::Sine{1};
    }
    expect_args(1);
    return zoo::Sine{static_cast<int>(detail::parse_integer(call.args[0]))};
  }
  if (call.name == "constant") {
    expect_args(1);
    return zoo::TrigPoly{detail::parse_real(call.args[0]), {}, {}};
  }
  if (call.name == "trig_poly") {
    if (call.args.empty() || call.args.size() % 2 == 0) {
      throw std::invalid_argument("trig_poly expects c0 followed by (a_k, b_k) pairs");
    }
    zoo::TrigPoly t;
    t.constant = detail::parse_real(call.args[0]);
    for (std::size_t i = 1; i < call.args.size(); i += 2) {
      t.cos_terms.push_back(detail::parse_real(call.args[i]));
      t.sin_terms.push_back(detail::parse_real(call.args[i + 1]));
    }
    return t;
  }
  if (call.name == "triangle") {
    if (!call.args.empty()) {
      expect_args(0);
    }
    return zoo::Triangle{};
  }
  if (call.name == "square") {
    if (!call.args.empty()) {
      expect_args(0);
    }
    return zoo::Square{};
  }
  if (call.name == "weierstrass") {
    expect_args(2);
    return zoo::Weierstrass{detail::parse_real(call.args[0]),
                            static_cast<int>(detail::parse_integer(call.args[1]))};
  }
  throw std::invalid_argument("unknown zoo function '" + call.name +
                              "' (known: sine, trig_poly, constant, triangle, square, weierstrass)");
}

std::string to_string(const ZooSpec& spec) {
  struct Printer {
    std::string operator()(const zoo::Sine& s) const {
      return "sine(" + std::to_string(s.k) + ")";
    }
    std::string operator()(const zoo::TrigPoly& t) const {
      if (t.cos_terms.empty() && t.sin_terms.empty()) {
        return "constant(" + format_real(t.constant) + ")";
      }
      std::string out = "trig_poly(" + format_real(t.constant);
      for (int k = 0; k < t.degree(); ++k) {
        const auto idx = static_cast<std::size_t>(k);
        out += ", " + format_real(idx < t.cos_terms.size() ? t.cos_terms[idx] : 0.0);
        out += ", " + format_real(idx < t.sin_terms.size() ? t.sin_terms[idx] : 0.0);
      }
      return out + ")";
    }
    std::string operator()(const zoo::Triangle&) const { return "triangle"; }
    std::string operator()(const zoo::Square&) const { return "square"; }
    std::string operator()(const zoo::Weierstrass& w) const {
      return "weierstrass(" + format_real(w.alpha) + "," + std::to_string(w.levels) + ")";
    }
  };
  return std::visit(Printer{}, spec);
}

} // namespace trigapprox
