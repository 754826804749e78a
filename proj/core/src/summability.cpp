#include "trigapprox/summability.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "spec_parse.hpp"

namespace trigapprox {

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double backward_sum(std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t k = v.size(); k-- > 0;) {
    acc += v[k];
  }
  return acc;
}

struct CesaroRows {};
struct IdentityRows {};
struct NorlundRows {
  NorlundWeights weights;
};
struct CustomRows {
  std::vector<SummabilityRow> rows;
};
struct PerturbedRows {
  MatrixFamily base;
  double alpha;
};

std::vector<double> norlund_p(const NorlundWeights& weights, std::size_t n) {
  std::vector<double> p(n + 1);
  struct Fill {
    std::vector<double>& p;
    std::size_t n;
    void operator()(const norlund::Constant&) const { std::fill(p.begin(), p.end(), 1.0); }
    void operator()(const norlund::Linear&) const {
      for (std::size_t k = 0; k <= n; ++k) {
        p[k] = static_cast<double>(k + 1);
      }
    }
    void operator()(const norlund::Power& w) const {
      for (std::size_t k = 0; k <= n; ++k) {
        p[k] = std::pow(static_cast<double>(k + 1), w.exponent);
      }
    }
    void operator()(const norlund::Geometric& w) const {
      // Only ratios p_k / P_n matter, so scale by r^{-n} when r > 1 to stay finite.
      const bool grow = w.ratio > 1.0;
      for (std::size_t k = 0; k <= n; ++k) {
        const double e = grow ? static_cast<double>(k) - static_cast<double>(n)
                              : static_cast<double>(k);
        p[k] = std::pow(w.ratio, e);
      }
    }
    void operator()(const norlund::List& w) const {
      if (w.values.size() <= n) {
        throw std::out_of_range("norlund list has " + std::to_string(w.values.size()) +
                                " weights, row " + std::to_string(n) + " needs " +
                                std::to_string(n + 1));
      }
      std::copy_n(w.values.begin(), n + 1, p.begin());
    }
  };
  std::visit(Fill{p, n}, weights);
  return p;
}

std::string norlund_name(const NorlundWeights& weights) {
  struct Name {
    std::string operator()(const norlund::Constant&) const { return "const"; }
    std::string operator()(const norlund::Linear&) const { return "k+1"; }
    std::string operator()(const norlund::Power& w) const {
      return "(k+1)^" + format_real(w.exponent);
    }
    std::string operator()(const norlund::Geometric& w) const {
      return format_real(w.ratio) + "^k";
    }
    std::string operator()(const norlund::List& w) const {
      std::string out = "list:";
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        out += (i ? ";" : "") + format_real(w.values[i]);
      }
      return out;
    }
  };
  return std::visit(Name{}, weights);
}

void validate_norlund(const NorlundWeights& weights) {
  if (const auto* g = std::get_if<norlund::Geometric>(&weights)) {
    if (!(g->ratio > 0.0) || !std::isfinite(g->ratio)) {
      throw std::invalid_argument("norlund weights must be positive: ratio " +
                                  format_real(g->ratio));
    }
  }
  if (const auto* pw = std::get_if<norlund::Power>(&weights)) {
    if (!std::isfinite(pw->exponent)) {
      throw std::invalid_argument("norlund power exponent must be finite");
    }
  }
  if (const auto* l = std::get_if<norlund::List>(&weights)) {
    if (l->values.empty()) {
      throw std::invalid_argument("norlund list is empty");
    }
    for (std::size_t k = 0; k < l->values.size(); ++k) {
      if (!(l->values[k] > 0.0) || !std::isfinite(l->values[k])) {
        throw std::invalid_argument("norlund weights must be positive: p_" + std::to_string(k) +
                                    " = " + format_real(l->values[k]));
      }
    }
  }
}

NorlundWeights parse_norlund_weights(std::string_view arg) {
  arg = detail::trim(arg);
  if (arg == "const" || arg == "1") {
    return norlund::Constant{};
  }
  if (arg == "k+1") {
    return norlund::Linear{};
  }
  if (arg.starts_with("(k+1)^")) {
    return norlund::Power{detail::parse_real(arg.substr(6))};
  }
  if (arg.ends_with("^k")) {
    return norlund::Geometric{detail::parse_real(arg.substr(0, arg.size() - 2))};
  }
  if (arg.starts_with("list:")) {
    std::string body(arg.substr(5));
    std::replace(body.begin(), body.end(), ';', ' ');
    std::istringstream in(body);
    norlund::List list;
    std::string token;
    while (in >> token) {
      list.values.push_back(detail::parse_real(token));
    }
    return list;
  }
  throw std::invalid_argument("unknown norlund weight spec '" + std::string(arg) +
                              "' (use const, k+1, (k+1)^b, r^k or list:p0;p1;...)");
}

} // namespace

SummabilityRow::SummabilityRow(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("summability row must have at least one entry");
  }
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (!std::isfinite(weights_[k])) {
      throw std::invalid_argument("summability row entry " + std::to_string(k) + " is not finite");
    }
    if (weights_[k] < 0.0) {
      throw std::invalid_argument("summability row entry " + std::to_string(k) +
                                  " is negative (" + format_real(weights_[k]) + ")");
    }
  }
  row_sum_ = backward_sum(weights_);
}

struct MatrixFamily::Impl {
  std::variant<CesaroRows, IdentityRows, NorlundRows, CustomRows, PerturbedRows> rows;
};

MatrixFamily MatrixFamily::cesaro() {
  return MatrixFamily(std::make_shared<const Impl>(Impl{CesaroRows{}}));
}

MatrixFamily MatrixFamily::identity() {
  return MatrixFamily(std::make_shared<const Impl>(Impl{IdentityRows{}}));
}

MatrixFamily MatrixFamily::norlund(NorlundWeights weights) {
  validate_norlund(weights);
  return MatrixFamily(std::make_shared<const Impl>(Impl{NorlundRows{std::move(weights)}}));
}

MatrixFamily MatrixFamily::custom(std::vector<SummabilityRow> rows) {
  if (rows.empty()) {
    throw std::invalid_argument("custom matrix has no rows");
  }
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].n() != n) {
      throw std::invalid_argument("custom matrix row " + std::to_string(n) + " has " +
                                  std::to_string(rows[n].weights().size()) +
                                  " entries, expected " + std::to_string(n + 1));
    }
  }
  return MatrixFamily(std::make_shared<const Impl>(Impl{CustomRows{std::move(rows)}}));
}

MatrixFamily MatrixFamily::perturbed(const MatrixFamily& base, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("perturbation exponent must be positive");
  }
  return MatrixFamily(std::make_shared<const Impl>(Impl{PerturbedRows{base, alpha}}));
}

FamilyKind MatrixFamily::kind() const noexcept {
  return static_cast<FamilyKind>(impl_->rows.index());
}

const NorlundWeights* MatrixFamily::norlund_weights() const noexcept {
  const auto* rows = std::get_if<NorlundRows>(&impl_->rows);
  return rows ? &rows->weights : nullptr;
}

std::string MatrixFamily::id() const {
  struct Name {
    std::string operator()(const CesaroRows&) const { return "cesaro"; }
    std::string operator()(const IdentityRows&) const { return "identity"; }
    std::string operator()(const NorlundRows& r) const {
      return "norlund(" + norlund_name(r.weights) + ")";
    }
    std::string operator()(const CustomRows& r) const {
      return "custom(" + std::to_string(r.rows.size()) + " rows)";
    }
    std::string operator()(const PerturbedRows& r) const {
      return "perturbed(" + r.base.id() + "," + format_real(r.alpha) + ")";
    }
  };
  return std::visit(Name{}, impl_->rows);
}

std::optional<std::size_t> MatrixFamily::max_n() const {
  if (const auto* c = std::get_if<CustomRows>(&impl_->rows)) {
    return c->rows.size() - 1;
  }
  if (const auto* nr = std::get_if<NorlundRows>(&impl_->rows)) {
    if (const auto* l = std::get_if<norlund::List>(&nr->weights)) {
      return l->values.size() - 1;
    }
  }
  if (const auto* p = std::get_if<PerturbedRows>(&impl_->rows)) {
    return p->base.max_n();
  }
  return std::nullopt;
}

SummabilityRow MatrixFamily::row(std::size_t n) const {
  struct Gen {
    std::size_t n;
    SummabilityRow operator()(const CesaroRows&) const {
      return SummabilityRow(std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1)));
    }
    SummabilityRow operator()(const IdentityRows&) const {
      std::vector<double> w(n + 1, 0.0);
      w[n] = 1.0;
      return SummabilityRow(std::move(w));
    }
    SummabilityRow operator()(const NorlundRows& r) const {
      auto p = norlund_p(r.weights, n);
      double total = 0.0;
      for (double v : p) {
        total += v;
      }
      for (double& v : p) {
        v /= total;
      }
      return SummabilityRow(std::move(p));
    }
    SummabilityRow operator()(const CustomRows& r) const {
      if (n >= r.rows.size()) {
        throw std::out_of_range("custom matrix has no row " + std::to_string(n));
      }
      return r.rows[n];
    }
    SummabilityRow operator()(const PerturbedRows& r) const {
      const auto base = r.base.row(n);
      const double scale = 1.0 + std::pow(static_cast<double>(n + 1), -r.alpha);
      std::vector<double> w(base.weights().begin(), base.weights().end());
      for (double& v : w) {
        v *= scale;
      }
      return SummabilityRow(std::move(w));
    }
  };
  return std::visit(Gen{n}, impl_->rows);
}

MatrixFamily parse_family_spec(std::string_view text) {
  const auto call = detail::parse_call(text);
  if (call.name == "cesaro" && call.args.empty()) {
    return MatrixFamily::cesaro();
  }
  if (call.name == "identity" && call.args.empty()) {
    return MatrixFamily::identity();
  }
  if (call.name == "norlund" && call.args.size() == 1) {
    return MatrixFamily::norlund(parse_norlund_weights(call.args[0]));
  }
  if (call.name == "perturbed" && call.args.size() == 2) {
    return MatrixFamily::perturbed(parse_family_spec(call.args[0]),
                                   detail::parse_real(call.args[1]));
  }
  if (call.name == "custom" && call.args.size() == 1) {
    return load_custom_matrix_file(call.args[0]);
  }
  throw std::invalid_argument("cannot parse matrix family spec '" + std::string(text) + "'");
}

MatrixFamily load_custom_matrix(std::istream& in) {
  std::vector<SummabilityRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      try {
        values.push_back(detail::parse_real(token));
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse '" +
                                    token + "' as a real");
      }
    }
    if (values.size() != rows.size() + 1) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": row " +
                                  std::to_string(rows.size()) + " needs " +
                                  std::to_string(rows.size() + 1) + " entries, found " +
                                  std::to_string(values.size()));
    }
    try {
      rows.emplace_back(std::move(values));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return MatrixFamily::custom(std::move(rows));
}

MatrixFamily load_custom_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open matrix file '" + path + "'");
  }
  return load_custom_matrix(in);
}

std::vector<double> tail_weights(const SummabilityRow& row) {
  const auto a = row.weights();
  std::vector<double> w(a.size());
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) {
    acc += a[k];
    w[k] = acc;
  }
  return w;
}

SampledPeriodicFunction matrix_mean(const FourierCoefficients& c, const SummabilityRow& row,
                                    const Grid& grid) {
  if (row.n() > c.max_degree()) {
    throw std::invalid_argument("matrix_mean: row n = " + std::to_string(row.n()) +
                                " exceeds coefficient degree " + std::to_string(c.max_degree()));
  }
  return {grid, synthesize_weighted(c, tail_weights(row), grid), "T_" + std::to_string(row.n())};
}

SampledPeriodicFunction matrix_mean_naive(const FourierCoefficients& c, const SummabilityRow& row,
                                          const Grid& grid) {
  const std::size_t n = row.n();
  if (n > c.max_degree()) {
    throw std::invalid_argument("matrix_mean_naive: row n = " + std::to_string(n) +
                                " exceeds coefficient degree " + std::to_string(c.max_degree()));
  }
  const std::size_t size = grid.size();
  std::vector<double> partial(size, 0.5 * c.a0());  // S_0
  std::vector<double> out(size, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      for (std::size_t j = 0; j < size; ++j) {
        // Reduce k*j mod N so the phase stays in [0, 2pi).
        const double x = grid.node((k * j) % size);
        partial[j] += c.a(k) * std::cos(x) + c.b(k) * std::sin(x);
      }
    }
    const double a = row[k];
    for (std::size_t j = 0; j < size; ++j) {
      out[j] += a * partial[j];
    }
  }
  return {grid, std::move(out), "T_" + std::to_string(n) + "_naive"};
}

namespace {

// sum_k a_k sin((k+1/2)u) by rotating (cos, sin) of (k+1/2)u one step at a time.
double kernel_numerator(std::span<const double> a, double u, double cu, double su) {
  double s = std::sin(0.5 * u);
  double c = std::cos(0.5 * u);
  double acc = a[0] * s;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double s_next = s * cu + c * su;
    c = c * cu - s * su;
    s = s_next;
    acc += a[k] * s;
  }
  return acc;
}

class KernelEvaluator {
public:
  explicit KernelEvaluator(const SummabilityRow& row) : weights_(row.weights()) {
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (weights_[k] != 0.0) {
        support_.push_back(k);
      }
    }
    sparse_ = support_.size() * 8 < weights_.size();
  }

  double operator()(double u) const {
    double num = 0.0;
    if (sparse_) {
      for (std::size_t k : support_) {
        num += weights_[k] * std::sin((static_cast<double>(k) + 0.5) * u);
      }
    } else {
      num = kernel_numerator(weights_, u, std::cos(u), std::sin(u));
    }
    return num / (2.0 * std::sin(0.5 * u));
  }

private:
  std::span<const double> weights_;
  std::vector<std::size_t> support_;
  bool sparse_ = false;
};

double midpoint_abs(const KernelEvaluator& kernel, double lo, double hi, std::size_t panels) {
  const double h = (hi - lo) / static_cast<double>(panels);
  double acc = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    acc += std::abs(kernel(lo + h * (static_cast<double>(i) + 0.5)));
  }
  return acc * h;
}

struct Refined {
  double value;
  std::size_t points;
  bool converged;
};

Refined refine(const KernelEvaluator& kernel, double lo, double hi, const KernelQuadrature& quad) {
  std::size_t panels = quad.initial_points;
  double prev = midpoint_abs(kernel, lo, hi, panels);
  while (2 * panels <= quad.max_points) {
    panels *= 2;
    const double next = midpoint_abs(kernel, lo, hi, panels);
    if (std::abs(next - prev) < quad.tolerance) {
      return {next, panels, true};
    }
    prev = next;
  }
  return {prev, panels, false};
}

} // namespace

double kernel_eval(const SummabilityRow& row, double u) {
  if (!(u >= 0.0 && u <= kPi)) {
    throw std::invalid_argument("kernel_eval: u must lie in [0, pi]");
  }
  const auto a = row.weights();
  if (u == 0.0) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      acc += a[k] * (static_cast<double>(k) + 0.5);
    }
    return acc;
  }
  return KernelEvaluator(row)(u);
}

KernelSplit kernel_l1_split(const SummabilityRow& row, const KernelQuadrature& quad) {
  if (row.n() < 1) {
    throw std::invalid_argument("kernel_l1_split: needs n >= 1");
  }
  if (quad.initial_points < 64) {
    throw std::invalid_argument("kernel_l1_split: quad_points must be at least 64");
  }
  if (!(quad.tolerance > 0.0)) {
    throw std::invalid_argument("kernel_l1_split: tolerance must be positive");
  }
  const KernelEvaluator kernel(row);
  const double split = kPi / static_cast<double>(row.n());
  const auto near = refine(kernel, 0.0, split, quad);
  const auto far = refine(kernel, split, kPi, quad);
  return {near.value, far.value, near.points, far.points, near.converged && far.converged};
}

KernelSplit kernel_l1_split(const SummabilityRow& row, std::size_t quad_points) {
  KernelQuadrature quad;
  quad.initial_points = quad_points;
  return kernel_l1_split(row, quad);
}

RowDiagnostics row_diagnostics(const SummabilityRow& row) {
  const auto a = row.weights();
  const std::size_t n = row.n();
  const auto scale = static_cast<double>(n + 1);

  RowDiagnostics d;
  d.n = n;
  d.head_weight = scale * a[0];
  d.tail_weight = scale * a[n];
  d.mid_weight = scale * std::max(a[0], a[n / 2]);

  d.mean_row.resize(n + 1);
  double prefix = 0.0;
  for (std::size_t m = 0; m <= n; ++m) {
    prefix += a[m];
    d.mean_row[m] = prefix / static_cast<double>(m + 1);
  }
  for (std::size_t k = 0; k < n; ++k) {
    d.var_rows += std::abs(a[k] - a[k + 1]);
    d.var_means += std::abs(d.mean_row[k] - d.mean_row[k + 1]);
  }
  return d;
}

} // namespace trigapprox
