// test_dynamics.cpp — flow right-hand sides against frozen values and the Lax oracle
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gtl/dynamics.hpp"
#include "gtl/states.hpp"

using namespace gtl;

namespace {

std::mt19937 seeded(unsigned s) { return std::mt19937(s); }

N3State random_n3(std::mt19937& rng, bool positive = false) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  N3State s;
  for (auto& x : s.p) x = dist(rng);
  for (auto& x : s.a) x = positive ? pos(rng) : dist(rng);
  s.u = positive ? pos(rng) : dist(rng);
  if (std::abs(s.u) < 0.1) s.u = 0.1;
  return s;
}

GtlState random_gtl(std::mt19937& rng, int N, bool classic) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  GtlState s;
  s.N = N;
  s.p.resize(2 * N + 1);
  s.a.resize(2 * N);
  s.b.resize(2 * N);
  for (auto& x : s.p) x = dist(rng);
  for (auto& x : s.a) x = dist(rng);
  for (auto& x : s.b) x = dist(rng);
  s.u = classic ? 0.0 : dist(rng);
  s.v = classic ? 0.0 : dist(rng);
  return s;
}

double max_field_diff(const N3State& x, const N3State& y) {
  double m = std::abs(x.u - y.u);
  for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(x.p[i] - y.p[i]));
  for (int i = 0; i < 2; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

}  // namespace

TEST_CASE("chain flow in positions and momenta, frozen") {
  TodaState s;
  s.q = {0.0, 0.0};
  s.p = {0.0, 0.0};
  const TodaState d = rhs(s);
  CHECK(d.q == std::vector<double>{0.0, 0.0});
  CHECK(d.p[0] == -1.0);
  CHECK(d.p[1] == 1.0);

  s.boundary = Boundary::periodic;
  s.q = {0.0, 0.0, 0.0};
  s.p = {0.5, 0.5, 0.5};
  const TodaState dp = rhs(s);
  for (double x : dp.p) CHECK(x == 0.0);  // equal gaps balance around the ring
  CHECK(dp.q == s.p);
}

TEST_CASE("flaschka flows, frozen and consistent with the chain flow") {
  SECTION("frozen one-bond values") {
    FlaschkaState f;
    f.variant = FlaschkaVariant::alpha_beta;
    f.first = {2.0};
    f.second = {3.0, -1.0};
    const FlaschkaState d = rhs(f);
    CHECK(d.first[0] == 8.0);
    CHECK(d.second[0] == -2.0);
    CHECK(d.second[1] == 2.0);

    FlaschkaState h;
    h.variant = FlaschkaVariant::a_b;
    h.first = {0.5};
    h.second = {-1.5, 0.5};
    const FlaschkaState e = rhs(h);
    CHECK(e.first[0] == 1.0);
    CHECK(e.second[0] == 0.5);
    CHECK(e.second[1] == -0.5);
  }
  SECTION("images of the chain flow under both charts") {
    auto rng = seeded(1021);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int rep = 0; rep < 10; ++rep) {
      TodaState s;
      for (int i = 0; i < 5; ++i) {
        s.q.push_back(dist(rng));
        s.p.push_back(dist(rng));
      }
      const TodaState ds = rhs(s);
      const FlaschkaState ab = flaschka_from_qp(s, FlaschkaVariant::alpha_beta);
      const FlaschkaState dab = rhs(ab);
      const FlaschkaState hb = flaschka_from_qp(s, FlaschkaVariant::a_b);
      const FlaschkaState dhb = rhs(hb);
      for (int i = 0; i < 4; ++i) {
        // chain rule through alpha = exp(gap), a = exp(gap/2)/2
        CHECK(dab.first[i] ==
              Catch::Approx(ab.first[i] * (s.p[i] - s.p[i + 1])).margin(1e-13));
        CHECK(dhb.first[i] ==
              Catch::Approx(0.5 * hb.first[i] * (s.p[i] - s.p[i + 1])).margin(1e-13));
      }
      for (int i = 0; i < 5; ++i) {
        CHECK(dab.second[i] == Catch::Approx(ds.p[i]).margin(1e-13));
        CHECK(dhb.second[i] == Catch::Approx(-0.5 * ds.p[i]).margin(1e-13));
      }
    }
  }
}

TEST_CASE("three-site flow, frozen") {
  N3State s;
  s.p = {0.0, 0.0, 0.0};
  s.a = {1.0, 1.0};
  s.u = 0.5;
  const N3State d = rhs(s);
  CHECK(d.p[0] == -2.5);
  CHECK(d.p[1] == 0.0);
  CHECK(d.p[2] == 2.5);
  CHECK(d.a[0] == -1.0);
  CHECK(d.a[1] == 1.0);
  CHECK(d.u == 0.0);
}

TEST_CASE("three-site flow equals its commutator projection") {
  auto rng = seeded(1201);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const N3State s = random_n3(rng);
    worst = std::max(worst, max_field_diff(rhs(s), rhs_from_lax(s)));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("banded flow properties") {
  auto rng = seeded(1301);
  SECTION("momentum rates telescope to zero") {
    for (int rep = 0; rep < 10; ++rep) {
      const GtlState s = random_gtl(rng, 2, false);
      const GtlState d = rhs(s);
      double sum = 0.0;
      for (double x : d.p) sum += x;
      CHECK(std::abs(sum) < 1e-13);
    }
  }
  SECTION("narrow chain agrees with the three-site flow") {
    for (int rep = 0; rep < 10; ++rep) {
      const N3State s = random_n3(rng);
      const GtlState d = rhs(gtl_from_n3(s));
      const N3State dn = rhs(s);
      for (int i = 0; i < 3; ++i) CHECK(d.p[i] == Catch::Approx(dn.p[i]).margin(1e-13));
      for (int i = 0; i < 2; ++i) {
        CHECK(d.a[i] == Catch::Approx(dn.a[i]).margin(1e-13));
        CHECK(d.b[i] == Catch::Approx(dn.a[i]).margin(1e-13));
      }
      CHECK(d.u == Catch::Approx(dn.u).margin(1e-13));
      CHECK(d.v == Catch::Approx(dn.u).margin(1e-13));
    }
  }
  SECTION("corner rates couple the sites adjacent to the corner") {
    for (int rep = 0; rep < 10; ++rep) {
      const GtlState s = random_gtl(rng, 2, false);
      const GtlState d = rhs(s);
      const double rate = s.p[s.idx(-1)] - s.p[s.idx(1)];
      CHECK(d.u == Catch::Approx(rate * s.u).margin(1e-13));
      CHECK(d.v == Catch::Approx(rate * s.v).margin(1e-13));
    }
  }
}

TEST_CASE("verbatim corner rate lines") {
  auto rng = seeded(1409);
  SECTION("too narrow a chain is rejected") {
    const GtlState s = random_gtl(rng, 1, false);
    CHECK_THROWS_AS(rhs_as_printed(s), std::invalid_argument);
  }
  SECTION("width two coincides with the projection") {
    for (int rep = 0; rep < 5; ++rep) {
      const GtlState s = random_gtl(rng, 2, false);
      const GtlState a = rhs_as_printed(s);
      const GtlState b = rhs(s);
      CHECK(a.u == Catch::Approx(b.u).margin(1e-14));
      CHECK(a.v == Catch::Approx(b.v).margin(1e-14));
    }
  }
  SECTION("width three does not") {
    GtlState s = random_gtl(rng, 3, false);
    s.p = {0.9, 0.8, 0.7, 0.1, 0.5, 0.4, 0.3};  // unequal gaps expose the indexing
    s.u = 1.0;
    s.v = 1.0;
    const GtlState a = rhs_as_printed(s);
    const GtlState b = rhs(s);
    CHECK(a.u == Catch::Approx(s.p[1] - s.p[3]).margin(1e-14));
    CHECK(b.u == Catch::Approx(s.p[s.idx(-1)] - s.p[s.idx(1)]).margin(1e-13));
    CHECK(std::abs(a.u - b.u) > 0.01);
  }
}

TEST_CASE("classic reduction agrees with the hand-coded tridiagonal flow") {
  auto rng = seeded(1511);
  for (int rep = 0; rep < 10; ++rep) {
    const GtlState s = random_gtl(rng, 2, true);
    CHECK(reduction_check(s) < 1e-13);
  }
  GtlState bad = random_gtl(rng, 1, false);
  bad.u = 0.5;
  CHECK_THROWS_AS(reduction_check(bad), std::invalid_argument);
}

TEST_CASE("half-time-squared flow variants") {
  CdwState s;
  s.c = {1.0, 2.0, 3.0};
  s.d2 = 4.0;
  s.d3 = 9.0;
  s.w = 0.25;

  SECTION("frozen verbatim values") {
    const CdwState d = rhs(s);  // printed variant is the default
    CHECK(d.c[0] == -4.25);
    CHECK(d.c[1] == -5.0);
    CHECK(d.c[2] == 9.25);
    CHECK(d.d2 == Catch::Approx(-4.0 - 2.0 * std::sqrt(0.25 * 9.0)).margin(1e-14));
    CHECK(d.d3 == Catch::Approx(-9.0 + 2.0 * std::sqrt(0.25 * 4.0)).margin(1e-14));
    CHECK(d.w == Catch::Approx(-2.0 * 0.25).margin(1e-15));
  }
  SECTION("all variants coincide when the corner weight vanishes") {
    CdwState z = s;
    z.w = 0.0;
    const CdwState a = rhs(z, CdwVariant::printed);
    const CdwState b = rhs(z, CdwVariant::half_time_n3);
    const CdwState c = rhs(z, CdwVariant::tau_consistent);
    CHECK(a.d2 == b.d2);
    CHECK(a.d3 == b.d3);
    CHECK(b.d2 == c.d2);
    CHECK(b.d3 == c.d3);
  }
  SECTION("they differ once it does not") {
    const CdwState a = rhs(s, CdwVariant::printed);
    const CdwState b = rhs(s, CdwVariant::half_time_n3);
    CHECK(std::abs(a.d2 - b.d2) > 0.1);
  }
  SECTION("negative radicands are rejected with the offending product named") {
    CdwState neg = s;
    neg.w = -1.0;
    CHECK_THROWS_WITH(rhs(neg), Catch::Matchers::ContainsSubstring("sqrt"));
  }
}

TEST_CASE("half-time squaring of the three-site flow") {
  auto rng = seeded(1601);
  for (int rep = 0; rep < 20; ++rep) {
    const N3State s = random_n3(rng, true);  // positive fields fix the root branch
    const N3State ds = rhs(s);
    const CdwState image = cdw_from_n3(s);
    const CdwState d = rhs(image, CdwVariant::half_time_n3);
    // chain rule through c = p(t/2), d = a^2(t/2), w = u^2(t/2)
    for (int i = 0; i < 3; ++i) CHECK(d.c[i] == Catch::Approx(0.5 * ds.p[i]).margin(1e-12));
    CHECK(d.d2 == Catch::Approx(s.a[0] * ds.a[0]).margin(1e-12));
    CHECK(d.d3 == Catch::Approx(s.a[1] * ds.a[1]).margin(1e-12));
    CHECK(d.w == Catch::Approx(s.u * ds.u).margin(1e-12));
  }
  SECTION("the verbatim variant passes the same audit only without the corner") {
    for (int rep = 0; rep < 10; ++rep) {
      N3State s = random_n3(rng, true);
      s.u = 0.0;
      const N3State ds = rhs(s);
      const CdwState d = rhs(cdw_from_n3(s), CdwVariant::printed);
      CHECK(d.d2 == Catch::Approx(s.a[0] * ds.a[0]).margin(1e-12));
      CHECK(d.d3 == Catch::Approx(s.a[1] * ds.a[1]).margin(1e-12));
    }
  }
}

TEST_CASE("half-time-squared pair does not close under either commutator order") {
  CdwState s;
  s.c = {1.0, 2.0, 3.0};
  s.d2 = 4.0;
  s.d3 = 9.0;
  s.w = 0.25;
  CHECK_THROWS_WITH(rhs_from_lax(s, CommutatorOrder::LM),
                    Catch::Matchers::ContainsSubstring("(1,0)"));
  CHECK_THROWS_WITH(rhs_from_lax(s, CommutatorOrder::ML),
                    Catch::Matchers::ContainsSubstring("sparsity"));
  CHECK_THROWS_AS(rhs_from_lax(s), std::runtime_error);
}

TEST_CASE("position-chart three-site flow") {
  N3QState s;
  s.q = {0.3, -0.1, 0.4};
  s.p = {0.2, 0.5, -0.6};
  s.p4 = 1.5;
  s.q4 = -0.25;

  SECTION("matches the symmetric flow through the exponential map") {
    const N3QState d = rhs(s);
    N3State m;
    m.p = s.p;
    const double e12 = std::exp(s.q[0] - s.q[1]);
    const double e23 = std::exp(s.q[1] - s.q[2]);
    m.a = {e12 * s.p4, e23 * s.q4};
    m.u = s.u();
    const N3State dm = rhs(m);
    for (int i = 0; i < 3; ++i) {
      CHECK(d.q[i] == s.p[i]);
      CHECK(d.p[i] == Catch::Approx(dm.p[i]).margin(1e-13));
    }
    const double a1_dot = e12 * ((s.p[0] - s.p[1]) * s.p4 + d.p4);
    const double a2_dot = e23 * ((s.p[1] - s.p[2]) * s.q4 + d.q4);
    CHECK(a1_dot == Catch::Approx(dm.a[0]).margin(1e-13));
    CHECK(a2_dot == Catch::Approx(dm.a[1]).margin(1e-13));
  }
  SECTION("a rescaled corner prefactor breaks the equivalence") {
    N3QState scaled = s;
    scaled.u0 = 2.0;
    const N3QState d = rhs(scaled);
    N3State m;
    m.p = scaled.p;
    const double e12 = std::exp(s.q[0] - s.q[1]);
    const double e23 = std::exp(s.q[1] - s.q[2]);
    m.a = {e12 * scaled.p4, e23 * scaled.q4};
    m.u = scaled.u();
    const N3State dm = rhs(m);
    const double a2_dot = e23 * ((s.p[1] - s.p[2]) * s.q4 + d.q4);
    CHECK(std::abs(a2_dot - dm.a[1]) > 0.01);
  }
  SECTION("second-order reduction of the auxiliary pair") {
    const N3QState d = rhs(s);
    const double e12 = std::exp(s.q[0] - s.q[1]);
    const double e13 = std::exp(s.q[0] - s.q[2]);
    const double lhs = 2.0 * e12 * e12 * (2.0 * (d.q[0] - d.q[1]) * s.p4 + d.p4);
    const double rhs_val =
        4.0 * ((s.p[0] - s.p[1]) * s.p4 * e12 * e12 - s.q4 * e13 * e13);
    CHECK(lhs == Catch::Approx(rhs_val).margin(1e-13));
  }
}
