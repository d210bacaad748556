// test_model.cpp — state containers, coordinate maps, JSON round trips
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gtl/json_io.hpp"
#include "gtl/states.hpp"

using namespace gtl;

namespace {

TodaState make_toda(std::vector<double> q, std::vector<double> p,
                    Boundary b = Boundary::open) {
  TodaState s;
  s.q = std::move(q);
  s.p = std::move(p);
  s.boundary = b;
  return s;
}

}  // namespace

TEST_CASE("state validation rejects malformed containers") {
  TodaState t = make_toda({0.0, 1.0}, {0.0});
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = make_toda({0.0}, {0.0});
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = make_toda({0.0, 1.0}, {2.0, 3.0});
  CHECK_NOTHROW(t.validate());

  FlaschkaState f;
  f.variant = FlaschkaVariant::alpha_beta;
  f.first = {1.0, 2.0};
  f.second = {0.0, 0.0};  // needs 3 diagonal entries for 2 bonds
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.second = {0.0, 0.0, 0.0};
  CHECK_NOTHROW(f.validate());

  GtlState g;
  g.N = 0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g.N = 1;
  g.p = {1.0, 2.0, 3.0};
  g.a = {1.0};  // needs 2N bonds
  g.b = {1.0, 1.0};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g.a = {1.0, 1.0};
  CHECK_NOTHROW(g.validate());
  CHECK(g.dim() == 3);
  CHECK(g.idx(-1) == 0);
  CHECK(g.idx(0) == 1);
  CHECK(g.idx(1) == 2);
  g.u = 0.5;
  CHECK_FALSE(g.is_classic());
  g.u = 0.0;
  g.v = 0.0;
  CHECK(g.is_classic());
}

TEST_CASE("exponential-gap map, frozen examples") {
  SECTION("alpha-beta chart") {
    const TodaState s = make_toda({std::log(2.0), 0.0}, {3.0, -1.0});
    const FlaschkaState f = flaschka_from_qp(s, FlaschkaVariant::alpha_beta);
    REQUIRE(f.first.size() == 1);
    REQUIRE(f.second.size() == 2);
    CHECK(f.first[0] == Catch::Approx(2.0).margin(1e-15));
    CHECK(f.second[0] == 3.0);
    CHECK(f.second[1] == -1.0);
  }
  SECTION("half-exponential chart") {
    const TodaState s = make_toda({0.0, 0.0}, {3.0, -1.0});
    const FlaschkaState f = flaschka_from_qp(s, FlaschkaVariant::a_b);
    REQUIRE(f.first.size() == 1);
    CHECK(f.first[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(f.second[0] == -1.5);
    CHECK(f.second[1] == 0.5);
  }
  SECTION("both charts invert on seeded random chains") {
    std::mt19937 rng(571);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
      TodaState s;
      for (int i = 0; i < 5; ++i) {
        s.q.push_back(dist(rng));
        s.p.push_back(dist(rng));
      }
      const FlaschkaState ab = flaschka_from_qp(s, FlaschkaVariant::alpha_beta);
      const FlaschkaState hb = flaschka_from_qp(s, FlaschkaVariant::a_b);
      for (int i = 0; i < 4; ++i) {
        const double gap = s.q[i] - s.q[i + 1];
        CHECK(std::log(ab.first[i]) == Catch::Approx(gap).margin(1e-13));
        CHECK(2.0 * std::log(2.0 * hb.first[i]) == Catch::Approx(gap).margin(1e-13));
        CHECK(ab.second[i] == s.p[i]);
        CHECK(hb.second[i] == -0.5 * s.p[i]);
      }
    }
  }
}

TEST_CASE("position from tau-ratio") {
  CHECK(qn_from_tau(2.0, 4.0) == Catch::Approx(std::log(0.5)).margin(1e-16));
  CHECK(qn_from_tau(1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(qn_from_tau(3.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(qn_from_tau(-1.0, 2.0), std::domain_error);
}

TEST_CASE("three-site state embeddings") {
  N3State s;
  s.p = {1.0, 2.0, 3.0};
  s.a = {2.0, 3.0};
  s.u = 0.5;

  SECTION("square map to the half-time coordinates") {
    const CdwState c = cdw_from_n3(s);
    CHECK(c.c[0] == 1.0);
    CHECK(c.c[1] == 2.0);
    CHECK(c.c[2] == 3.0);
    CHECK(c.d2 == 4.0);
    CHECK(c.d3 == 9.0);
    CHECK(c.w == 0.25);
  }
  SECTION("embedding into the symmetric banded chain") {
    const GtlState g = gtl_from_n3(s);
    CHECK(g.N == 1);
    REQUIRE(g.p.size() == 3);
    REQUIRE(g.a.size() == 2);
    REQUIRE(g.b.size() == 2);
    for (int i = 0; i < 3; ++i) CHECK(g.p[i] == s.p[i]);
    for (int i = 0; i < 2; ++i) {
      CHECK(g.a[i] == s.a[i]);
      CHECK(g.b[i] == s.a[i]);
    }
    CHECK(g.u == 0.5);
    CHECK(g.v == 0.5);
    CHECK_NOTHROW(g.validate());
  }
}

TEST_CASE("json round trips preserve every field") {
  SECTION("open and periodic chains") {
    for (Boundary b : {Boundary::open, Boundary::periodic}) {
      const TodaState s = make_toda({0.25, -1.5, 2.0}, {1.0, 0.0, -3.0}, b);
      const TodaState r = toda_from_json(to_json(s));
      CHECK(r.q == s.q);
      CHECK(r.p == s.p);
      CHECK(r.boundary == s.boundary);
    }
  }
  SECTION("both flaschka charts") {
    for (FlaschkaVariant v : {FlaschkaVariant::alpha_beta, FlaschkaVariant::a_b}) {
      FlaschkaState s;
      s.variant = v;
      s.first = {0.5, 0.25};
      s.second = {1.0, -1.0, 2.0};
      const FlaschkaState r = flaschka_from_json(to_json(s));
      CHECK(r.variant == s.variant);
      CHECK(r.first == s.first);
      CHECK(r.second == s.second);
    }
  }
  SECTION("banded chain") {
    GtlState s;
    s.N = 2;
    s.p = {0.1, 0.2, 0.3, 0.4, 0.5};
    s.a = {1.0, 2.0, 3.0, 4.0};
    s.b = {-1.0, -2.0, -3.0, -4.0};
    s.u = 0.7;
    s.v = -0.3;
    const GtlState r = gtl_from_json(to_json(s));
    CHECK(r.N == 2);
    CHECK(r.p == s.p);
    CHECK(r.a == s.a);
    CHECK(r.b == s.b);
    CHECK(r.u == s.u);
    CHECK(r.v == s.v);
  }
  SECTION("three-site charts") {
    N3State s;
    s.p = {1.0, -2.0, 0.5};
    s.a = {0.25, 4.0};
    s.u = -0.125;
    const N3State r = n3_from_json(to_json(s));
    CHECK(r.p == s.p);
    CHECK(r.a == s.a);
    CHECK(r.u == s.u);

    N3QState sq;
    sq.q = {0.1, 0.2, 0.3};
    sq.p = {-0.1, -0.2, -0.3};
    sq.p4 = 0.5;
    sq.q4 = -0.5;
    sq.u0 = 2.0;
    sq.alpha = 0.25;
    const N3QState rq = n3q_from_json(to_json(sq));
    CHECK(rq.q == sq.q);
    CHECK(rq.p == sq.p);
    CHECK(rq.p4 == sq.p4);
    CHECK(rq.q4 == sq.q4);
    CHECK(rq.u0 == sq.u0);
    CHECK(rq.alpha == sq.alpha);

    CdwState sc;
    sc.c = {1.0, 2.0, 3.0};
    sc.d2 = 4.0;
    sc.d3 = 9.0;
    sc.w = 0.25;
    const CdwState rc = cdw_from_json(to_json(sc));
    CHECK(rc.c == sc.c);
    CHECK(rc.d2 == sc.d2);
    CHECK(rc.d3 == sc.d3);
    CHECK(rc.w == sc.w);

    PqState sp;
    sp.P = {1.0, 2.0, 3.0, 4.0};
    sp.Q = {-1.0, -2.0, -3.0, -4.0};
    const PqState rp = pq_from_json(to_json(sp));
    CHECK(rp.P == sp.P);
    CHECK(rp.Q == sp.Q);
  }
  SECTION("series") {
    const SeriesFn s(2.0, {1.0, 0.5, -0.25});
    const SeriesFn r = series_from_json(to_json(s));
    CHECK(r.t0 == s.t0);
    CHECK(r.c == s.c);
  }
}

TEST_CASE("json parsing reports the violated field") {
  json j = to_json([] {
    N3State s;
    s.p = {1.0, 2.0, 3.0};
    s.a = {1.0, 1.0};
    s.u = 0.5;
    return s;
  }());
  CHECK(state_kind(j) == "n3");
  j.erase("u");
  CHECK_THROWS_WITH(n3_from_json(j), Catch::Matchers::ContainsSubstring("'u'"));

  json bad = {{"kind", "n3q"},
              {"q", {0.0, 0.0, 0.0}},
              {"p", {0.0, 0.0, 0.0}},
              {"p4", 1.0},
              {"q4", 2.0}};
  const N3QState s = n3q_from_json(bad);
  CHECK(s.u0 == 1.0);  // defaults apply when optional keys are absent
  CHECK(s.alpha == 0.0);
}

TEST_CASE("matrix json helpers") {
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const Eigen::MatrixXd r = matrix_from_json(matrix_to_json(m));
  REQUIRE(r.rows() == 2);
  REQUIRE(r.cols() == 3);
  CHECK((r - m).cwiseAbs().maxCoeff() == 0.0);

  json ragged = json::array({json::array({1.0, 2.0}), json::array({3.0})});
  CHECK_THROWS_AS(matrix_from_json(ragged), std::invalid_argument);
}
