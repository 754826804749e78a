#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "trigapprox/periodic.hpp"
#include "trigapprox/regression.hpp"

using namespace trigapprox;

TEST_SUITE("periodic") {

TEST_CASE("grid nodes and spacing") {
  const Grid g(16);
  CHECK(g.size() == 16);
  CHECK(g.spacing() == doctest::Approx(kTwoPi / 16));
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(8) == doctest::Approx(kPi));
  CHECK(g.nodes().size() == 16);
  CHECK_THROWS_AS(Grid(4), std::invalid_argument);
}

TEST_CASE("lp norm of constants and sine") {
  const std::vector<double> ones(64, 3.0);
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    CHECK(lp_norm(ones, p) == doctest::Approx(3.0).epsilon(1e-15));
  }
  const auto s = zoo_function(zoo::Sine{1}, Grid(256));
  CHECK(lp_norm(s, 2.0).value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(lp_norm(s, 1.0).value == doctest::Approx(2.0 / kPi).epsilon(1e-4));
  const std::vector<double> zeros(32, 0.0);
  CHECK(lp_norm(zeros, 2.0) == 0.0);
  CHECK_THROWS_AS(lp_norm(ones, 0.5), std::invalid_argument);
}

TEST_CASE("lp norm is monotone in p under the normalized measure") {
  const auto w = zoo_function(zoo::Weierstrass{0.5, 6}, Grid(512));
  double prev = 0.0;
  for (double p : {1.0, 1.25, 2.0, 4.0, 8.0}) {
    const double v = lp_norm(w, p).value;
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("zoo sampling") {
  const Grid g(64);
  const auto tri = zoo_function(zoo::Triangle{}, g);
  CHECK(tri[0] == doctest::Approx(-1.0));
  CHECK(tri[32] == doctest::Approx(1.0));
  CHECK(tri[16] == doctest::Approx(0.0).epsilon(1e-15));

  const auto sq = zoo_function(zoo::Square{}, g);
  CHECK(sq[0] == 1.0);
  CHECK(sq[31] == 1.0);
  CHECK(sq[32] == -1.0);

  const auto w = zoo_function(zoo::Weierstrass{0.5, 3}, g);
  double expected = 0.0;
  for (int j = 0; j <= 3; ++j) {
    expected += std::pow(2.0, -0.5 * j) * std::cos(std::exp2(j) * g.node(5));
  }
  CHECK(w[5] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(w.claimed_class()->alpha == 0.5);
  CHECK_FALSE(w.claimed_class()->p.has_value());
  CHECK(sq.claimed_class()->p == 1.0);
}

TEST_CASE("zoo rejects aliasing specs") {
  CHECK_THROWS_AS(zoo_function(zoo::Sine{32}, Grid(64)), std::invalid_argument);
  CHECK_THROWS_AS(zoo_function(zoo::Weierstrass{0.5, 5}, Grid(64)), std::invalid_argument);
  CHECK_THROWS_AS(zoo_function(zoo::Weierstrass{1.5, 2}, Grid(64)), std::invalid_argument);
  zoo::TrigPoly p;
  p.cos_terms.assign(40, 1.0);
  CHECK_THROWS_AS(zoo_function(p, Grid(64)), std::invalid_argument);
}

TEST_CASE("zoo spec parsing round-trips") {
  for (const char* text : {"sine", "sine(3)", "triangle", "square", "weierstrass(0.5,8)",
                           "constant(2)", "trig_poly(1, 0.5, -0.25)"}) {
    const auto spec = parse_zoo_spec(text);
    CHECK(to_string(parse_zoo_spec(to_string(spec))) == to_string(spec));
  }
  CHECK(to_string(parse_zoo_spec(" weierstrass( 0.5 , 8 ) ")) == "weierstrass(0.5,8)");
  const auto c = zoo_function(parse_zoo_spec("constant(2)"), Grid(16));
  CHECK(c[7] == 2.0);
  for (const char* bad : {"", "sin", "sine(", "sine(x)", "weierstrass(0.5)", "square(1)",
                          "trig_poly(1, 2)"}) {
    CHECK_THROWS_AS(parse_zoo_spec(bad), std::invalid_argument);
  }
}

TEST_CASE("least squares line") {
  const std::vector<double> x{0, 1, 2, 3, 4};
  const std::vector<double> y{1, 3, 5, 7, 9};
  const auto fit = least_squares_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.points == 5);
  const std::vector<double> flat{2, 2, 2, 2, 2};
  CHECK(least_squares_line(x, flat).r2 == 1.0);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(least_squares_line(one, one), std::invalid_argument);
  CHECK_THROWS_AS(least_squares_line(flat, y), std::invalid_argument);
}

}
