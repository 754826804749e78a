// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: trigapprox_acceptance [id ...]   (no ids runs everything)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trigapprox/fourier.hpp"
#include "trigapprox/modulus.hpp"
#include "trigapprox/periodic.hpp"
#include "trigapprox/rate_lab.hpp"
#include "trigapprox/sequence_classes.hpp"
#include "trigapprox/summability.hpp"

using namespace trigapprox;

namespace {

// Tolerances and bands.
constexpr double kReproductionTol = 1e-10;
constexpr double kReproductionSeconds = 1.0;
constexpr double kFastPathTol = 1e-10;
constexpr double kFastPathSeconds = 30.0;
constexpr double kEmbeddingSeconds = 10.0;
constexpr double kRateSeconds = 60.0;
constexpr double kWeierstrassSlopeMin = -0.65;
constexpr double kWeierstrassSlopeMax = -0.35;
constexpr double kTriangleSlopeMin = -1.2;
constexpr double kTriangleSlopeMax = -0.8;
constexpr double kLogBandMin = 0.05;
constexpr double kLogBandMax = 5.0;
constexpr double kLogGrowthMin = 1.25;
constexpr double kNoLogGrowthMax = 3.0;
constexpr double kRowRatioSlack = 0.5;
constexpr double kKernelGrowthMax = 1.5;
constexpr double kSineModulusRelTol = 1e-6;
constexpr double kSquareModulusRelTol = 1e-3;
constexpr std::size_t kRateGrid = 4096;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

zoo::TrigPoly random_trig_poly(std::mt19937_64& rng, std::size_t degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  zoo::TrigPoly p;
  p.constant = u(rng);
  p.cos_terms.resize(degree);
  p.sin_terms.resize(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    p.cos_terms[k] = u(rng);
    p.sin_terms[k] = u(rng);
  }
  return p;
}

Outcome criterion_1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 13, 16, 31, 32, 64, 100, 127, 128, 200, 255, 256}) {
    const Grid grid(4 * (n + 1));
    for (std::size_t degree : {std::size_t{0}, n / 2, n}) {
      const auto f = zoo_function(random_trig_poly(rng, degree), grid);
      const auto c = analyze(f);
      worst = std::max(worst, max_abs_diff(partial_sum(c, n, grid).values(), f.values()));
      const auto identity_row = MatrixFamily::identity().row(n);
      worst = std::max(worst, max_abs_diff(matrix_mean(c, identity_row, grid).values(), f.values()));
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kReproductionTol && secs < kReproductionSeconds,
          std::to_string(cases) + " polynomials, max grid error " + fmt(worst) + " (tol " +
              fmt(kReproductionTol) + "), " + fmt(secs) + " s"};
}

Outcome criterion_2() {
  const auto t0 = Clock::now();
  const Grid grid(1024);
  std::mt19937_64 rng(2);
  const std::vector<ZooSpec> specs = {zoo::Sine{3}, zoo::Triangle{}, zoo::Square{},
                                      zoo::Weierstrass{0.5, 8}, random_trig_poly(rng, 40)};
  std::uniform_int_distribution<std::size_t> n_dist(0, 128);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  double worst = 0.0;
  std::size_t comparisons = 0;
  for (const auto& spec : specs) {
    const auto f = zoo_function(spec, grid);
    const auto c = analyze(f);
    for (int r = 0; r < 100; ++r) {
      std::vector<double> row(n_dist(rng) + 1);
      double total = 0.0;
      for (double& x : row) {
        x = w(rng);
        total += x;
      }
      for (double& x : row) {
        x /= total;
      }
      const SummabilityRow srow(row);
      worst = std::max(worst, max_abs_diff(matrix_mean(c, srow, grid).values(),
                                            matrix_mean_naive(c, srow, grid).values()));
      ++comparisons;
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kFastPathTol && secs < kFastPathSeconds,
          std::to_string(comparisons) + " row/function pairs, max difference " + fmt(worst) +
              " (tol " + fmt(kFastPathTol) + "), " + fmt(secs) + " s"};
}

Outcome criterion_3() {
  const auto t0 = Clock::now();
  EmbeddingOptions opt;
  opt.sample_count = 1000;
  opt.max_len = 64;
  opt.seed = 1;
  const auto report = embedding_harness(opt);
  const double secs = seconds_since(t0);
  std::string detail = std::to_string(report.checks) + " checks, " +
                       std::to_string(report.violations.size()) +
                       " violations, worst K(mean)/max(1,K^2) = " +
                       fmt(report.worst_constant_ratio) + ", " + fmt(secs) + " s";
  if (!report.violations.empty()) {
    detail += "; first: " + report.violations.front().relation + " " +
              report.violations.front().detail;
  }
  return {report.violations.empty() && report.worst_constant_ratio <= 1.0 &&
              secs < kEmbeddingSeconds,
          detail};
}

Outcome criterion_4() {
  std::size_t mismatches = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto values = oracle::random_sequence(seed, 64);
    const bool row = seed % 2 == 1;
    const auto fast = classify(FiniteSequence(values, row ? Semantics::row : Semantics::free));
    const auto brute = oracle::brute_classify(values, row);
    for (std::size_t i = 0; i < kSequenceClassCount; ++i) {
      const auto& v = fast.verdicts[i];
      const bool same_constant = (v.constant == brute.constant[i]) ||
                                 (std::isinf(v.constant) && std::isinf(brute.constant[i]));
      if (v.member != brute.member[i] || !same_constant) {
        if (first.empty()) {
          first = "seed " + std::to_string(seed) + " " + std::string(class_name(v.cls)) +
                  ": fast " + fmt(v.constant) + " brute " + fmt(brute.constant[i]);
        }
        ++mismatches;
      }
    }
  }
  return {mismatches == 0, "500 sequences x 12 classes, " + std::to_string(mismatches) +
                               " mismatches" + (first.empty() ? "" : "; " + first)};
}

RateFit rate_fit(const MatrixFamily& family, const ZooSpec& spec, double p) {
  const auto f = zoo_function(spec, Grid(kRateGrid));
  const auto n = geometric_n_list(16, 512);
  return loglog_fit(error_curve(family, f, p, n));
}

Outcome criterion_5() {
  const auto t0 = Clock::now();
  const auto weier = rate_fit(MatrixFamily::cesaro(), zoo::Weierstrass{0.5, 8}, 2.0);
  const auto tri = rate_fit(MatrixFamily::identity(), zoo::Triangle{}, 2.0);
  const double secs = seconds_since(t0);
  const bool a = weier.slope >= kWeierstrassSlopeMin && weier.slope <= kWeierstrassSlopeMax;
  const bool b = tri.slope >= kTriangleSlopeMin && tri.slope <= kTriangleSlopeMax;
  return {a && b && secs < kRateSeconds,
          std::string("cesaro/weierstrass slope ") + fmt(weier.slope) + (a ? " in " : " NOT in ") +
              "[" + fmt(kWeierstrassSlopeMin) + ", " + fmt(kWeierstrassSlopeMax) +
              "]; identity/triangle slope " + fmt(tri.slope) + (b ? " in " : " NOT in ") + "[" +
              fmt(kTriangleSlopeMin) + ", " + fmt(kTriangleSlopeMax) + "]; " + fmt(secs) + " s"};
}

Outcome criterion_6() {
  const auto t0 = Clock::now();
  const auto f = zoo_function(zoo::Square{}, Grid(kRateGrid));
  const auto n = geometric_n_list(16, 512);
  const auto ces = error_curve(MatrixFamily::cesaro(), f, 1.0, n);
  const auto nor = error_curve(MatrixFamily::norlund(norlund::Linear{}), f, 1.0, n);
  double band_lo = 1e300;
  double band_hi = 0.0;
  double ces_32 = 0.0;
  double ces_512 = 0.0;
  double nor_32 = 0.0;
  double nor_max = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double nd = static_cast<double>(n[i]);
    const double scaled = ces.error[i] * nd / std::log(nd + 1.0);
    band_lo = std::min(band_lo, scaled);
    band_hi = std::max(band_hi, scaled);
    if (n[i] == 32) {
      ces_32 = ces.error[i] * nd;
      nor_32 = nor.error[i] * nd;
    }
    if (n[i] == 512) {
      ces_512 = ces.error[i] * nd;
    }
    nor_max = std::max(nor_max, nor.error[i] * nd);
  }
  const double secs = seconds_since(t0);
  const bool band = band_lo >= kLogBandMin && band_hi <= kLogBandMax;
  const bool grows = ces_512 >= kLogGrowthMin * ces_32;
  const bool flat = nor_max <= kNoLogGrowthMax * nor_32;
  return {band && grows && flat && secs < kRateSeconds,
          "cesaro E*n/log(n+1) in [" + fmt(band_lo) + ", " + fmt(band_hi) + "]; cesaro E*n " +
              fmt(ces_32) + " -> " + fmt(ces_512) + " (x" + fmt(ces_512 / ces_32) +
              ", need >= " + fmt(kLogGrowthMin) + "); norlund(k+1) max E*n " + fmt(nor_max) +
              " vs " + fmt(kNoLogGrowthMax) + " x " + fmt(nor_32) + "; " + fmt(secs) + " s"};
}

Outcome criterion_7() {
  bool ok = true;
  std::string detail;
  for (double alpha : {0.25, 0.5, 0.75}) {
    double worst = 0.0;
    for (std::size_t n = 0; n <= 1024; ++n) {
      worst = std::max(worst, weighted_row_ratio(MatrixFamily::cesaro(), alpha, n));
    }
    const double bound = 1.0 / (1.0 - alpha) + kRowRatioSlack;
    ok = ok && worst <= bound;
    detail += "alpha " + fmt(alpha) + ": max " + fmt(worst) + " <= " + fmt(bound) + "; ";
  }
  bool exact = true;
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (std::size_t n = 0; n <= 1024; ++n) {
      exact = exact && weighted_row_ratio(MatrixFamily::identity(), alpha, n) == 1.0;
    }
  }
  detail += std::string("identity ratio ") + (exact ? "exactly 1" : "NOT exactly 1");
  return {ok && exact, detail};
}

Outcome criterion_8() {
  const auto nor = MatrixFamily::norlund(norlund::Linear{});
  const auto id = MatrixFamily::identity();
  std::vector<std::size_t> ns;
  for (std::size_t n = 8; n <= 512; n *= 2) {
    ns.push_back(n);
  }
  double near_32 = 0.0;
  double far_32 = 0.0;
  double near_max = 0.0;
  double far_max = 0.0;
  bool converged = true;
  std::vector<double> totals;
  for (std::size_t n : ns) {
    const auto a = kernel_l1_split(nor.row(n));
    const auto b = kernel_l1_split(id.row(n));
    converged = converged && a.converged && b.converged;
    if (n == 32) {
      near_32 = a.near;
      far_32 = a.far;
    }
    near_max = std::max(near_max, a.near);
    far_max = std::max(far_max, a.far);
    totals.push_back(b.total());
  }
  bool increasing = true;
  for (std::size_t i = 1; i < totals.size(); ++i) {
    increasing = increasing && totals[i] > totals[i - 1];
  }
  const bool flat = near_max <= kKernelGrowthMax * near_32 && far_max <= kKernelGrowthMax * far_32;
  return {flat && increasing && converged,
          "norlund(k+1) I1 max " + fmt(near_max) + " (n=32: " + fmt(near_32) + "), I2 max " +
              fmt(far_max) + " (n=32: " + fmt(far_32) + "); identity I1+I2 " + fmt(totals.front()) +
              " -> " + fmt(totals.back()) + (increasing ? " strictly increasing" : " NOT increasing")};
}

Outcome criterion_9() {
  const Grid grid(kRateGrid);
  const auto sine = zoo_function(zoo::Sine{1}, grid);
  const auto square = zoo_function(zoo::Square{}, grid);
  const auto weier = zoo_function(zoo::Weierstrass{0.5, 8}, grid);
  double sine_err = 0.0;
  for (double d = kPi / 64.0; d <= kPi * (1.0 + 1e-12); d *= 2.0) {
    const double expected = std::sqrt(2.0) * std::sin(d / 2.0);
    sine_err = std::max(sine_err, std::abs(modulus(sine, d, 2.0) - expected) / expected);
  }
  double square_err = 0.0;
  for (double d = kPi / 1024.0; d <= kPi / 8.0 * (1.0 + 1e-12); d *= 2.0) {
    const double expected = 2.0 * d / kPi;
    square_err = std::max(square_err, std::abs(modulus(square, d, 1.0) - expected) / expected);
  }
  const auto deltas = default_delta_grid();
  const double w1 = lip_exponent_fit(weier, 1.0, deltas).alpha_hat;
  const double w2 = lip_exponent_fit(weier, 2.0, deltas).alpha_hat;
  const double s1 = lip_exponent_fit(square, 1.0, deltas).alpha_hat;
  const double s2 = lip_exponent_fit(square, 2.0, deltas).alpha_hat;
  const auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  const bool ok = sine_err <= kSineModulusRelTol && square_err <= kSquareModulusRelTol &&
                  in(w1, 0.4, 0.6) && in(w2, 0.4, 0.6) && in(s2, 0.4, 0.6) && in(s1, 0.9, 1.1);
  return {ok, "sine rel err " + fmt(sine_err) + ", square rel err " + fmt(square_err) +
                  "; weierstrass alpha " + fmt(w1) + " (p=1), " + fmt(w2) + " (p=2); square alpha " +
                  fmt(s1) + " (p=1), " + fmt(s2) + " (p=2)"};
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

Outcome criterion_10() {
  std::ifstream in(std::string(TRIGAPPROX_FIXTURE_DIR) + "/clause_table.txt");
  if (!in) {
    return {false, "fixture clause_table.txt not found"};
  }
  std::map<std::string, ClauseVerdict> verdicts;
  std::size_t entries = 0;
  std::size_t mismatches = 0;
  std::string first;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line)[0] == '#') {
      continue;
    }
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string part;
    while (std::getline(ss, part, '|')) {
      parts.push_back(trim(part));
    }
    if (parts.size() < 3) {
      return {false, "malformed fixture line: " + line};
    }
    const auto& family = parts[0];
    if (!verdicts.count(family)) {
      verdicts.emplace(family, clause_check(parse_family_spec(family), 2.0, 0.5));
    }
    const bool expected = parts[2] == "T";
    const bool got = verdicts.at(family).at(parts[1]).holds;
    ++entries;
    if (got != expected) {
      ++mismatches;
      if (first.empty()) {
        first = family + " (" + parts[1] + "): expected " + parts[2] + ", got " + (got ? "T" : "F");
      }
    }
  }
  return {entries > 0 && mismatches == 0,
          std::to_string(entries) + " table entries, " + std::to_string(mismatches) + " mismatches" +
              (first.empty() ? "" : "; " + first)};
}

Outcome criterion_11() {
  const auto fit = rate_fit(MatrixFamily::perturbed(MatrixFamily::cesaro(), 0.5),
                            zoo::Weierstrass{0.5, 8}, 2.0);
  const bool ok = fit.slope >= kWeierstrassSlopeMin && fit.slope <= kWeierstrassSlopeMax;
  return {ok, "perturbed(cesaro,0.5)/weierstrass slope " + fmt(fit.slope) + " (r2 " + fmt(fit.r2) +
                  ") in [" + fmt(kWeierstrassSlopeMin) + ", " + fmt(kWeierstrassSlopeMax) + "]"};
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"1", "reproduction exactness", criterion_1},
      {"2", "fast-path equivalence", criterion_2},
      {"3", "class embedding properties", criterion_3},
      {"4", "class-engine oracle equivalence", criterion_4},
      {"5", "degree of approximation, p = 2", criterion_5},
      {"6", "log case, p = alpha = 1", criterion_6},
      {"7", "weighted row-sum ratio", criterion_7},
      {"8", "kernel L1 split", criterion_8},
      {"9", "modulus closed forms and exponent fits", criterion_9},
      {"10", "clause checker table", criterion_10},
      {"11", "non-stochastic perturbed rows", criterion_11},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
      continue;
    }
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %s (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
