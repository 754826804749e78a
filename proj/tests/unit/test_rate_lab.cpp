#include <cmath>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "trigapprox/rate_lab.hpp"

using namespace trigapprox;

namespace {

ErrorCurve synthetic(double exponent, double scale) {
  ErrorCurve c;
  c.family_id = "synthetic";
  c.function_id = "f";
  for (std::size_t n = 8; n <= 1024; n *= 2) {
    c.n.push_back(n);
    c.error.push_back(scale * std::pow(static_cast<double>(n), exponent));
  }
  return c;
}

} // namespace

TEST_SUITE("rate_lab") {

TEST_CASE("geometric n list") {
  CHECK(geometric_n_list(16, 512) ==
        std::vector<std::size_t>{16, 23, 32, 45, 64, 91, 128, 181, 256, 362, 512});
  CHECK(geometric_n_list(1, 4, 1) == std::vector<std::size_t>{1, 2, 4});
  CHECK_THROWS_AS(geometric_n_list(0, 4), std::invalid_argument);
}

TEST_CASE("log-log fit on exact power laws") {
  CHECK(loglog_fit(synthetic(-1.0, 3.0)).slope == doctest::Approx(-1.0).epsilon(1e-9));
  const auto half = loglog_fit(synthetic(-0.5, 0.2));
  CHECK(half.slope == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(half.intercept == doctest::Approx(std::log(0.2)).epsilon(1e-9));
  CHECK(half.r2 == doctest::Approx(1.0));
  CHECK(half.points == 7);  // n = 8 is below the default cut
}

TEST_CASE("log-log fit drops nonpositive errors") {
  auto c = synthetic(-1.0, 1.0);
  c.error[3] = 0.0;
  const auto fit = loglog_fit(c);
  CHECK(fit.diagnostics.size() == 1);
  CHECK(fit.points == 6);
  c.error[4] = c.error[5] = -1.0;
  CHECK_THROWS_AS(loglog_fit(c), std::invalid_argument);
}

TEST_CASE("error curve of cos x under Cesaro") {
  const auto f = zoo_function(parse_zoo_spec("trig_poly(0, 1, 0)"), Grid(256));
  const std::vector<std::size_t> n{1, 2, 5, 10, 40};
  const auto c = error_curve(MatrixFamily::cesaro(), f, 2.0, n);
  CHECK(c.grid_size == 256);
  CHECK(c.family_id == "cesaro");
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double expect = 1.0 / (static_cast<double>(n[i]) + 1.0) / std::sqrt(2.0);
    CHECK(c.error[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("error curve preconditions") {
  const auto f = zoo_function(zoo::Square{}, Grid(256));
  const std::vector<std::size_t> big{10, 70};
  CHECK_THROWS_WITH_AS(error_curve(MatrixFamily::cesaro(), f, 1.0, big),
                       doctest::Contains("grid too small"), std::invalid_argument);
  const std::vector<std::size_t> unsorted{10, 5};
  CHECK_THROWS_AS(error_curve(MatrixFamily::cesaro(), f, 1.0, unsorted), std::invalid_argument);
}

TEST_CASE("identity family reproduces trig polynomials") {
  const auto f = zoo_function(parse_zoo_spec("trig_poly(0.5, 1, -0.25, 0.5, 0.125, -1, 2)"), Grid(256));
  const std::vector<std::size_t> n{3, 4, 8, 16, 32};
  for (double e : error_curve(MatrixFamily::identity(), f, 2.0, n).error) {
    CHECK(e <= 1e-10);
  }
}

TEST_CASE("weighted row ratio") {
  CHECK(weighted_row_ratio(MatrixFamily::identity(), 0.3, 17) == 1.0);
  const double r = weighted_row_ratio(MatrixFamily::cesaro(), 0.5, 1024);
  CHECK(r == doctest::Approx(2.0).epsilon(0.05));
  CHECK(weighted_row_ratio(MatrixFamily::cesaro(), 0.25, 1024) <= 1.0 / 0.75 + 0.1);
  CHECK_THROWS_AS(weighted_row_ratio(MatrixFamily::cesaro(), 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(weighted_row_ratio(MatrixFamily::cesaro(), 0.0, 4), std::invalid_argument);
}

TEST_CASE("boundedness rule") {
  std::vector<std::size_t> n;
  std::vector<double> flat;
  std::vector<double> growing;
  for (std::size_t k = 1; k <= 256; ++k) {
    n.push_back(k);
    flat.push_back(2.0 - 1.0 / static_cast<double>(k));
    growing.push_back(std::log(static_cast<double>(k) + 1.0));
  }
  const auto a = assess_bounded("flat", "q = O(1)", n, flat, 1.5, 1e-9);
  CHECK(a.bounded);
  CHECK(a.sup == doctest::Approx(2.0 - 1.0 / 256));
  CHECK_FALSE(assess_bounded("log", "q = O(1)", n, growing, 1.5, 1e-9).bounded);
  flat[3] = INFINITY;
  CHECK_FALSE(assess_bounded("inf", "q = O(1)", n, flat, 1.5, 1e-9).bounded);
}

TEST_CASE("clause checker examples") {
  const auto ces = clause_check(MatrixFamily::cesaro(), 2.0, 0.7);
  CHECK(ces.at("i").holds);
  CHECK(ces.at("i").applicable);
  CHECK(ces.at("ii").holds);
  CHECK(ces.at("iii").holds);
  CHECK(ces.at("iii").sup_constant < 1e-12);
  CHECK_FALSE(ces.at("iii").applicable);

  const auto ces1 = clause_check(MatrixFamily::cesaro(), 1.0, 0.5);
  CHECK(ces1.at("v").holds);
  CHECK(ces1.at("v").applicable);
  CHECK(ces1.at("v").evidence[0].sup == doctest::Approx(1.0));
  CHECK(ces1.at("v").evidence[1].sup == doctest::Approx(1.0));

  const auto nor = clause_check(MatrixFamily::norlund(norlund::Linear{}), 1.0, 1.0);
  CHECK(nor.at("vi").holds);
  CHECK(nor.at("vi").applicable);
  CHECK(nor.at("vi").parameter == 1.0);
  CHECK(nor.at("vi").sup_constant == doctest::Approx(2.0).epsilon(0.01));

  const auto geo = clause_check(MatrixFamily::norlund(norlund::Geometric{2.0}), 1.0, 1.0);
  CHECK_FALSE(geo.at("last_weight").holds);
  CHECK_THROWS_AS(geo.at("vii"), std::out_of_range);
}

TEST_CASE("clause checker regimes and row sums") {
  const auto v = clause_check(MatrixFamily::perturbed(MatrixFamily::cesaro(), 0.5), 2.0, 0.5);
  CHECK_FALSE(v.at("stochastic").holds);
  CHECK(v.at("row_sum").holds);
  CHECK(v.at("i").applicable);
  CHECK_FALSE(v.at("iv").applicable);
  CHECK(v.at("mid_weight").applicable);
  const auto w = clause_check(MatrixFamily::perturbed(MatrixFamily::cesaro(), 0.25), 2.0, 0.5);
  CHECK_FALSE(w.at("row_sum").holds);
  ClauseCheckOptions bad;
  bad.n_last = 2;
  CHECK_THROWS_AS(clause_check(MatrixFamily::cesaro(), 2.0, 0.5, bad), std::invalid_argument);
  CHECK_THROWS_AS(clause_check(MatrixFamily::cesaro(), 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("serialization keys") {
  ErrorCurve c = synthetic(-1.0, 1.0);
  c.family_id = "perturbed(cesaro,0.5)";
  c.function_id = "weierstrass(0.5,8)";
  c.p = 2.0;
  const std::vector<ErrorCurve> curves{c};
  const auto csv = to_csv(curves);
  CHECK(csv.rfind("matrix,function,p,n,error\n", 0) == 0);
  CHECK(csv.find("\"perturbed(cesaro,0.5)\",\"weierstrass(0.5,8)\",2,8,0.125\n") != std::string::npos);

  const auto fit = nlohmann::json::parse(to_json(loglog_fit(c)));
  CHECK(fit.contains("slope"));
  CHECK(fit.contains("intercept"));
  CHECK(fit.contains("r2"));

  const auto doc = nlohmann::json::parse(to_json(clause_check(MatrixFamily::identity(), 1.0, 1.0)));
  CHECK(doc["family"] == "identity");
  const auto& first = doc["clauses"][0];
  CHECK(first.contains("clause"));
  CHECK(first.contains("holds"));
  CHECK(first.contains("sup_constant"));
  CHECK(first["evidence"][0].contains("inequality"));
  bool saw_null = false;
  for (const auto& cl : doc["clauses"]) {
    saw_null = saw_null || cl["sup_constant"].is_null();
  }
  CHECK(saw_null);  // identity has an infinite AMDMS constant
}

}
