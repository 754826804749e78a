#include "trigapprox/rate_lab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "trigapprox/fourier.hpp"
#include "trigapprox/regression.hpp"
#include "trigapprox/sequence_classes.hpp"

namespace trigapprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') {
      out += '"';
    }
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

} // namespace

ErrorCurve error_curve(const MatrixFamily& family, const SampledPeriodicFunction& f, double p,
                       std::span<const std::size_t> n_list) {
  if (n_list.empty()) {
    throw std::invalid_argument("error_curve: empty n list");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("error_curve: n list must be strictly increasing");
    }
  }
  const std::size_t n_max = n_list.back();
  const std::size_t size = f.size();
  if (size < 4 * (n_max + 1)) {
    throw std::invalid_argument("grid too small: N = " + std::to_string(size) +
                                " but N >= 4(max n + 1) = " + std::to_string(4 * (n_max + 1)) +
                                " is required");
  }
  const auto coeffs = analyze(f);
  ErrorCurve curve;
  curve.family_id = family.id();
  curve.function_id = f.label();
  curve.p = p;
  curve.grid_size = size;
  curve.n.assign(n_list.begin(), n_list.end());
  curve.error.reserve(n_list.size());
  std::vector<double> diff(size);
  for (std::size_t n : n_list) {
    const auto mean = matrix_mean(coeffs, family.row(n), f.grid());
    for (std::size_t j = 0; j < size; ++j) {
      diff[j] = mean[j] - f[j];
    }
    curve.error.push_back(lp_norm(diff, p));
  }
  return curve;
}

std::vector<std::size_t> geometric_n_list(std::size_t first, std::size_t last,
                                          std::size_t per_octave) {
  if (first == 0 || last < first || per_octave == 0) {
    throw std::invalid_argument("geometric_n_list: need 1 <= first <= last, per_octave >= 1");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0;; ++i) {
    const double v = static_cast<double>(first) *
                     std::exp2(static_cast<double>(i) / static_cast<double>(per_octave));
    const auto n = static_cast<std::size_t>(std::llround(v));
    if (n > last) {
      break;
    }
    if (out.empty() || n != out.back()) {
      out.push_back(n);
    }
  }
  return out;
}

RateFit loglog_fit(const ErrorCurve& curve, std::size_t n_min_cut) {
  RateFit fit;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < curve.n.size(); ++i) {
    if (curve.n[i] < n_min_cut) {
      continue;
    }
    const double e = curve.error[i];
    if (!(e > 0.0) || !std::isfinite(e)) {
      std::ostringstream msg;
      msg << "dropped n = " << curve.n[i] << ": error " << e << " is not positive";
      fit.diagnostics.push_back(msg.str());
      continue;
    }
    x.push_back(std::log(static_cast<double>(curve.n[i])));
    y.push_back(std::log(e));
  }
  if (x.size() < 5) {
    throw std::invalid_argument("loglog_fit: only " + std::to_string(x.size()) +
                                " usable points after the cut; need 5");
  }
  const auto line = least_squares_line(x, y);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r2 = line.r2;
  fit.points = line.points;
  return fit;
}

double weighted_row_ratio(const MatrixFamily& family, double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("weighted_row_ratio: alpha must lie in (0, 1)");
  }
  const auto row = family.row(n);
  const auto top = static_cast<double>(n + 1);
  double acc = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    acc += row[k] * std::pow(top / static_cast<double>(k + 1), alpha);
  }
  return acc;
}

QuantityEvidence assess_bounded(std::string name, std::string inequality,
                                std::span<const std::size_t> n, std::span<const double> values,
                                double growth_tolerance, double absolute_floor) {
  if (n.size() != values.size() || n.size() < 2) {
    throw std::invalid_argument("assess_bounded: need matching n/value lists of length >= 2");
  }
  QuantityEvidence e;
  e.name = std::move(name);
  e.inequality = std::move(inequality);
  const double lo = static_cast<double>(std::max<std::size_t>(n.front(), 1));
  const double split = std::sqrt(lo * static_cast<double>(n.back()));
  bool finite = true;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      finite = false;
    }
    e.sup = std::max(e.sup, v);
    if (static_cast<double>(n[i]) <= split) {
      e.early_sup = std::max(e.early_sup, v);
    } else {
      e.late_sup = std::max(e.late_sup, v);
    }
  }
  e.bounded = finite && e.late_sup <= growth_tolerance * e.early_sup + absolute_floor;
  return e;
}

namespace {

bool regime(double p, double alpha, bool p_above_one, bool alpha_is_one) {
  const bool p_ok = p_above_one ? (p > 1.0) : (p == 1.0);
  const bool alpha_ok = alpha_is_one ? (alpha == 1.0) : (alpha > 0.0 && alpha < 1.0);
  return p_ok && alpha_ok;
}

struct RowSeries {
  std::vector<std::size_t> n;
  std::vector<double> head, tail, mid, var_rows_n, var_means_n;
  std::vector<double> amims, amdms, rbvs, deviation_scaled, deviation;
  std::vector<std::vector<double>> hbvs_beta;
  std::vector<bool> eta_nds;
  bool rows_nds = true;
  bool rows_nis = true;
};

RowSeries collect(const MatrixFamily& family, double alpha, const ClauseCheckOptions& opt) {
  RowSeries s;
  s.hbvs_beta.resize(opt.beta_grid.size());
  s.eta_nds.assign(opt.eta_grid.size(), true);
  for (std::size_t n = opt.n_first; n <= opt.n_last; ++n) {
    const auto row = family.row(n);
    const auto d = row_diagnostics(row);
    const auto nd = static_cast<double>(n);
    s.n.push_back(n);
    s.head.push_back(d.head_weight);
    s.tail.push_back(d.tail_weight);
    s.mid.push_back(d.mid_weight);
    s.var_rows_n.push_back(nd * d.var_rows);
    s.var_means_n.push_back(nd * d.var_means);

    const auto a = row.weights();
    const FiniteSequence seq(std::vector<double>(a.begin(), a.end()), Semantics::row);
    const auto means = mean_transform(seq);
    s.amims.push_back(almost_monotone_constant(means, Direction::increasing).value);
    s.amdms.push_back(almost_monotone_constant(means, Direction::decreasing).value);
    s.rbvs.push_back(bounded_variation_constant(seq, VariationSide::rest).value);

    const auto mono = monotone_test(seq);
    s.rows_nds = s.rows_nds && mono.nondecreasing;
    s.rows_nis = s.rows_nis && mono.nonincreasing;

    std::vector<double> scaled(a.size());
    for (std::size_t b = 0; b < opt.beta_grid.size(); ++b) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        scaled[k] = a[k] * std::pow(static_cast<double>(k + 1), -opt.beta_grid[b]);
      }
      const FiniteSequence weighted(scaled, Semantics::row);
      s.hbvs_beta[b].push_back(bounded_variation_constant(weighted, VariationSide::head).value);
    }
    for (std::size_t e = 0; e < opt.eta_grid.size(); ++e) {
      if (!s.eta_nds[e]) {
        continue;
      }
      for (std::size_t k = 0; k < a.size(); ++k) {
        scaled[k] = a[k] * std::pow(static_cast<double>(k + 1), opt.eta_grid[e]);
      }
      s.eta_nds[e] = monotone_test(FiniteSequence(scaled, Semantics::row)).nondecreasing;
    }

    s.deviation.push_back(row.row_sum_deviation());
    s.deviation_scaled.push_back(std::pow(nd + 1.0, alpha) * row.row_sum_deviation());
  }
  return s;
}

void finish(ClauseResult& r) {
  r.holds = !r.evidence.empty() &&
            std::all_of(r.evidence.begin(), r.evidence.end(),
                        [](const QuantityEvidence& e) { return e.bounded; });
  r.sup_constant = 0.0;
  for (const auto& e : r.evidence) {
    r.sup_constant = std::max(r.sup_constant, e.sup);
  }
}

ClauseResult make_clause(std::string id, std::string statement, bool applicable) {
  ClauseResult r;
  r.clause = std::move(id);
  r.statement = std::move(statement);
  r.applicable = applicable;
  return r;
}

std::string format_param(const char* symbol, double v) {
  std::ostringstream out;
  out << symbol << " = " << v;
  return out.str();
}

} // namespace

const ClauseResult& ClauseVerdict::at(std::string_view clause) const {
  for (const auto& c : clauses) {
    if (c.clause == clause) {
      return c;
    }
  }
  throw std::out_of_range("no clause '" + std::string(clause) + "' in verdict");
}

ClauseVerdict clause_check(const MatrixFamily& family, double p, double alpha,
                           const ClauseCheckOptions& options) {
  if (options.n_first < 1 || options.n_last < 4 * options.n_first) {
    throw std::invalid_argument("clause_check: need 1 <= n_first and n_last >= 4 n_first");
  }
  if (!(p >= 1.0)) {
    throw std::invalid_argument("clause_check: p must be >= 1");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("clause_check: alpha must lie in (0, 1]");
  }
  if (const auto top = family.max_n(); top && *top < options.n_last) {
    throw std::invalid_argument("clause_check: family has rows only up to n = " +
                                std::to_string(*top));
  }
  const auto s = collect(family, alpha, options);
  const auto bounded = [&](std::string name, std::string inequality,
                           const std::vector<double>& values) {
    return assess_bounded(std::move(name), std::move(inequality), s.n, values,
                          options.growth_tolerance, options.absolute_floor);
  };

  ClauseVerdict verdict;
  verdict.family_id = family.id();
  verdict.p = p;
  verdict.alpha = alpha;
  verdict.n_first = options.n_first;
  verdict.n_last = options.n_last;

  const auto head = bounded("(n+1)a_{n,0}", "(n+1) a_{n,0} = O(1)", s.head);
  const auto tail = bounded("(n+1)a_{n,n}", "(n+1) a_{n,n} = O(1)", s.tail);

  {
    ClauseResult r = make_clause("i", "p > 1, 0 < alpha < 1, (a_{n,k}) in AMIMS", regime(p, alpha, true, false));
    r.evidence.push_back(bounded("K_AMIMS", "sup_n K(AMIMS of row n) < inf", s.amims));
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("ii", "p > 1, 0 < alpha < 1, (a_{n,k}) in AMDMS, (n+1) a_{n,0} = O(1)",
                   regime(p, alpha, true, false));
    r.evidence.push_back(bounded("K_AMDMS", "sup_n K(AMDMS of row n) < inf", s.amdms));
    r.evidence.push_back(head);
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("iii", "p > 1, alpha = 1, sum_{k<n} |A_{n,k} - A_{n,k+1}| = O(1/n)",
                   regime(p, alpha, true, true));
    r.evidence.push_back(
        bounded("n*var_means", "n sum_{k<n} |Delta_k A_{n,k}| = O(1)", s.var_means_n));
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("iv",
                   "p = 1, 0 < alpha < 1, sum_{k<n} |a_{n,k} - a_{n,k+1}| = O(1/n), "
                   "(n+1) a_{n,n} = O(1)",
                   regime(p, alpha, false, false));
    r.evidence.push_back(
        bounded("n*var_rows", "n sum_{k<n} |Delta_k a_{n,k}| = O(1)", s.var_rows_n));
    r.evidence.push_back(tail);
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("v", "p = 1, 0 < alpha < 1, (a_{n,k}) in RBVS, (n+1) a_{n,0} = O(1)",
                   regime(p, alpha, false, false));
    r.evidence.push_back(bounded("K_RBVS", "sup_n K(RBVS of row n) < inf", s.rbvs));
    r.evidence.push_back(head);
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult best = make_clause("vi",
                      "p = alpha = 1, ((k+1)^{-beta} a_{n,k}) in HBVS for some beta > 0, "
                      "(n+1) a_{n,n} = O(1)",
                      regime(p, alpha, false, true));
    // Among verifying betas, keep the one with the smallest HBVS constant.
    std::optional<ClauseResult> chosen;
    ClauseResult last = best;
    last.evidence.push_back(tail);
    finish(last);
    for (std::size_t b = 0; b < options.beta_grid.size(); ++b) {
      ClauseResult r = best;
      r.evidence.push_back(bounded("K_HBVS(beta)",
                                   "sup_n K(HBVS of (k+1)^{-beta} a_{n,k}), " +
                                       format_param("beta", options.beta_grid[b]),
                                   s.hbvs_beta[b]));
      r.evidence.push_back(tail);
      finish(r);
      if (!r.holds) {
        last = std::move(r);
      } else if (!chosen || r.evidence[0].sup < chosen->evidence[0].sup) {
        r.parameter = options.beta_grid[b];
        chosen = std::move(r);
      }
    }
    best = chosen ? std::move(*chosen) : std::move(last);
    best.holds = chosen.has_value();
    verdict.clauses.push_back(std::move(best));
  }
  {
    ClauseResult r = make_clause("last_weight", "(n+1) p_n = O(P_n), i.e. (n+1) a_{n,n} = O(1)", p == 1.0);
    r.evidence.push_back(tail);
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("eta_monotone", "((k+1)^eta a_{n,k})_k in NDS for some eta > 0",
                   regime(p, alpha, false, true));
    for (std::size_t e = 0; e < options.eta_grid.size(); ++e) {
      if (s.eta_nds[e]) {
        r.holds = true;
        r.parameter = options.eta_grid[e];
        r.sup_constant = 1.0;
        break;
      }
    }
    QuantityEvidence ev;
    ev.name = "eta_nds";
    ev.inequality = r.holds ? "every row nondecreasing after weighting, " +
                                  format_param("eta", r.parameter)
                            : "no eta in the grid makes every row nondecreasing";
    ev.bounded = r.holds;
    ev.sup = r.sup_constant;
    r.evidence.push_back(std::move(ev));
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("mid_weight", "(n+1) max{a_{n,0}, a_{n,r}} = O(1), r = floor(n/2)",
                   regime(p, alpha, true, false));
    r.evidence.push_back(bounded("(n+1)max{a_{n,0},a_{n,r}}",
                                 "(n+1) max{a_{n,0}, a_{n,[n/2]}} = O(1)", s.mid));
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("row_monotone", "(a_{n,k}) in NDS or (a_{n,k}) in NIS", true);
    r.holds = s.rows_nds || s.rows_nis;
    r.sup_constant = r.holds ? 1.0 : kInf;
    QuantityEvidence ev;
    ev.name = "row_monotone";
    ev.inequality = s.rows_nds ? "every row nondecreasing"
                               : (s.rows_nis ? "every row nonincreasing" : "rows not monotone");
    ev.bounded = r.holds;
    ev.sup = r.sup_constant;
    r.evidence.push_back(std::move(ev));
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("stochastic", "sum_k a_{n,k} = 1 for every n (to round-off)", true);
    QuantityEvidence ev;
    ev.name = "|row_sum - 1|";
    ev.inequality = "max_n |sum_k a_{n,k} - 1| <= 1e-12";
    ev.sup = *std::max_element(s.deviation.begin(), s.deviation.end());
    ev.bounded = ev.sup <= 1e-12;
    r.evidence.push_back(std::move(ev));
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  {
    ClauseResult r = make_clause("row_sum", "|sum_k a_{n,k} - 1| = O(n^{-alpha})", true);
    r.evidence.push_back(bounded("(n+1)^alpha |row_sum - 1|",
                                 "(n+1)^alpha |sum_k a_{n,k} - 1| = O(1)", s.deviation_scaled));
    finish(r);
    verdict.clauses.push_back(std::move(r));
  }
  return verdict;
}

std::string to_csv(std::span<const ErrorCurve> curves) {
  std::ostringstream out;
  out << "matrix,function,p,n,error\n" << std::setprecision(17);
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.n.size(); ++i) {
      out << csv_field(c.family_id) << ',' << csv_field(c.function_id) << ',' << c.p << ','
          << c.n[i] << ',' << c.error[i] << '\n';
    }
  }
  return out.str();
}

std::string to_json(const RateFit& fit) {
  nlohmann::ordered_json doc;
  doc["slope"] = fit.slope;
  doc["intercept"] = fit.intercept;
  doc["r2"] = fit.r2;
  doc["points"] = fit.points;
  doc["diagnostics"] = fit.diagnostics;
  return doc.dump(2);
}

std::string to_json(const ClauseVerdict& verdict) {
  nlohmann::ordered_json doc;
  doc["family"] = verdict.family_id;
  doc["p"] = verdict.p;
  doc["alpha"] = verdict.alpha;
  doc["n_range"] = {verdict.n_first, verdict.n_last};
  auto clauses = nlohmann::ordered_json::array();
  for (const auto& c : verdict.clauses) {
    nlohmann::ordered_json entry;
    entry["clause"] = c.clause;
    entry["holds"] = c.holds;
    entry["applicable"] = c.applicable;
    entry["sup_constant"] = finite_or_null(c.sup_constant);
    entry["parameter"] = c.parameter;
    entry["statement"] = c.statement;
    auto evidence = nlohmann::ordered_json::array();
    for (const auto& e : c.evidence) {
      evidence.push_back({{"quantity", e.name},
                          {"inequality", e.inequality},
                          {"sup", finite_or_null(e.sup)},
                          {"early_sup", finite_or_null(e.early_sup)},
                          {"late_sup", finite_or_null(e.late_sup)},
                          {"bounded", e.bounded}});
    }
    entry["evidence"] = std::move(evidence);
    clauses.push_back(std::move(entry));
  }
  doc["clauses"] = std::move(clauses);
  return doc.dump(2);
}

} // namespace trigapprox
