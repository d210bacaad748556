// test_series.cpp — truncated-series arithmetic, analytic maps, Hirota derivative
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gtl/series.hpp"

using gtl::SeriesFn;

namespace {

// series of exp(rate * t) about 0, through the given order
SeriesFn exp_rate(double rate, std::size_t order) {
  std::vector<double> c(order + 1);
  c[0] = 1.0;
  for (std::size_t k = 1; k <= order; ++k) c[k] = c[k - 1] * rate / static_cast<double>(k);
  return SeriesFn(0.0, std::move(c));
}

// series of exp(s * t^2) about 0, through the given order
SeriesFn exp_quadratic(double s, std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  if (order >= 2) c[2] = s;
  SeriesFn arg(0.0, std::move(c));
  return gtl::exp(arg);
}

// coefficients drawn from {-8,...,8}/16: products and small sums stay exact in binary
SeriesFn dyadic_series(std::mt19937_64& rng, std::size_t order) {
  std::uniform_int_distribution<int> d(-8, 8);
  std::vector<double> c(order + 1);
  for (double& x : c) x = static_cast<double>(d(rng)) / 16.0;
  if (c[0] == 0.0) c[0] = 0.5;
  return SeriesFn(0.0, std::move(c));
}

double max_diff(const SeriesFn& a, const SeriesFn& b) {
  return gtl::max_abs_coeff(a - b);
}

}  // namespace

TEST_CASE("series arithmetic and calculus", "[series]") {
  SeriesFn f(0.0, {1.0, 2.0, 3.0});
  SeriesFn g(0.0, {0.5, -1.0, 0.25, 7.0});

  SECTION("binary ops truncate to the smaller valid order") {
    CHECK((f + g).order() == 2);
    CHECK((f * g).order() == 2);
    CHECK((f + g).c[1] == 1.0);
    // (1 + 2t + 3t^2)(0.5 - t + 0.25t^2) = 0.5 + 0t + (0.25 - 2 + 1.5)t^2 + ...
    SeriesFn p = f * g;
    CHECK(p.c[0] == 0.5);
    CHECK(p.c[1] == 0.0);
    CHECK(p.c[2] == -0.25);
  }

  SECTION("derivative and antiderivative invert each other") {
    SeriesFn df = derivative(g);
    CHECK(df.order() == 2);
    CHECK(df.c[0] == -1.0);
    CHECK(df.c[1] == 0.5);
    CHECK(df.c[2] == 21.0);
    SeriesFn back = antiderivative(df, g.c[0]);
    CHECK(max_diff(back, g) == 0.0);
  }

  SECTION("evaluation uses the expansion point") {
    SeriesFn h(1.0, {2.0, 3.0, 4.0});
    CHECK(h.eval(1.0) == 2.0);
    CHECK(h.eval(2.0) == Catch::Approx(9.0));
  }

  SECTION("mismatched expansion points are rejected") {
    SeriesFn h(1.0, {2.0, 3.0});
    CHECK_THROWS_AS(f + h, std::invalid_argument);
  }
}

TEST_CASE("analytic maps satisfy their defining identities", "[series]") {
  std::mt19937_64 rng(20260814u);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> c(13);
    for (double& x : c) x = u(rng);
    c[0] = 1.5 + std::abs(c[0]);  // keep log/sqrt in their domain
    SeriesFn a(0.0, std::move(c));

    CHECK(max_diff(gtl::exp(gtl::log(a)), a) < 1e-13);
    CHECK(max_diff(gtl::sqrt(a) * gtl::sqrt(a), a) < 1e-13);
    CHECK(max_diff(gtl::div(a, a), SeriesFn::constant(1.0, a)) < 1e-14);
    CHECK(max_diff(a * gtl::inv(a), SeriesFn::constant(1.0, a)) < 1e-13);
    // d/dt log a = a'/a
    CHECK(max_diff(derivative(gtl::log(a)), gtl::div(derivative(a), a.truncated(11))) < 1e-12);
  }
  CHECK_THROWS_AS(gtl::log(SeriesFn(0.0, {-1.0, 2.0})), std::domain_error);
  CHECK_THROWS_AS(gtl::sqrt(SeriesFn(0.0, {0.0, 2.0})), std::domain_error);
  CHECK_THROWS_AS(gtl::div(SeriesFn(0.0, {1.0}), SeriesFn(0.0, {0.0})), std::domain_error);
}

TEST_CASE("Hirota derivative on closed-form exponentials", "[series][hirota]") {
  SECTION("order zero is the plain product") {
    SeriesFn f = exp_rate(1.0, 8), g = exp_rate(2.0, 8);
    CHECK(max_diff(gtl::hirota_dt(0, f, g), f * g) == 0.0);
  }

  SECTION("D_t exp(t).exp(2t) = -exp(3t)") {
    SeriesFn f = exp_rate(1.0, 12), g = exp_rate(2.0, 12);
    SeriesFn want = -1.0 * exp_rate(3.0, 11);
    CHECK(max_diff(gtl::hirota_dt(1, f, g), want) < 1e-12);
  }

  SECTION("D_t^2 exp(t^2/2).exp(t^2/2) = 2 exp(t^2)") {
    SeriesFn f = exp_quadratic(0.5, 12);
    SeriesFn want = 2.0 * exp_quadratic(1.0, 10);
    CHECK(max_diff(gtl::hirota_dt(2, f, f), want) < 1e-12);
  }

  SECTION("operator order above series order is rejected") {
    SeriesFn f = exp_rate(1.0, 3);
    CHECK_THROWS_AS(gtl::hirota_dt(4, f, f), std::invalid_argument);
  }
}

TEST_CASE("Hirota derivative symmetry, exact on dyadic data", "[series][hirota]") {
  std::mt19937_64 rng(99u);
  for (int rep = 0; rep < 20; ++rep) {
    SeriesFn f = dyadic_series(rng, 9), g = dyadic_series(rng, 9);
    // D^m f.g = (-1)^m D^m g.f, bit-exact because every intermediate is dyadic
    for (int m : {1, 3}) {
      SeriesFn lhs = gtl::hirota_dt(m, f, g);
      SeriesFn rhs = -1.0 * gtl::hirota_dt(m, g, f);
      CHECK(max_diff(lhs, rhs) == 0.0);
    }
    for (int m : {2, 4}) {
      CHECK(max_diff(gtl::hirota_dt(m, f, g), gtl::hirota_dt(m, g, f)) == 0.0);
    }
    // odd-order D on f.f vanishes identically
    CHECK(gtl::max_abs_coeff(gtl::hirota_dt(1, f, f)) == 0.0);
    CHECK(gtl::max_abs_coeff(gtl::hirota_dt(3, f, f)) == 0.0);
  }
}
