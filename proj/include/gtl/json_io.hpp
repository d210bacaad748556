// json_io.hpp — JSON (de)serialization for states, series, and matrices
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <json.hpp>
#include <string>
#include <vector>

#include "gtl/series.hpp"
#include "gtl/states.hpp"

namespace gtl {

using json = nlohmann::json;

namespace detail {
inline std::vector<double> get_vec(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("state json: missing field '") + key + "'");
  return j.at(key).get<std::vector<double>>();
}
inline double get_num(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("state json: missing field '") + key + "'");
  return j.at(key).get<double>();
}
inline double get_num_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}
}  // namespace detail

// ----------------------------- matrices -----------------------------

inline json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix json: expected array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols)
      throw std::invalid_argument("matrix json: ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
  }
  return m;
}

// ----------------------------- states -----------------------------

inline json to_json(const TodaState& s) {
  return json{{"kind", "toda"},
              {"q", s.q},
              {"p", s.p},
              {"boundary", s.boundary == Boundary::open ? "open" : "periodic"}};
}

inline json to_json(const FlaschkaState& s) {
  if (s.variant == FlaschkaVariant::alpha_beta)
    return json{{"kind", "flaschka"}, {"variant", "alpha_beta"}, {"alpha", s.first}, {"beta", s.second}};
  return json{{"kind", "flaschka"}, {"variant", "a_b"}, {"a", s.first}, {"b", s.second}};
}

inline json to_json(const GtlState& s) {
  return json{{"kind", "gtl"}, {"N", s.N}, {"p", s.p}, {"a", s.a}, {"b", s.b}, {"u", s.u}, {"v", s.v}};
}

inline json to_json(const N3State& s) {
  return json{{"kind", "n3"}, {"p", {s.p[0], s.p[1], s.p[2]}}, {"a", {s.a[0], s.a[1]}}, {"u", s.u}};
}

inline json to_json(const N3QState& s) {
  return json{{"kind", "n3q"},    {"q", {s.q[0], s.q[1], s.q[2]}}, {"p", {s.p[0], s.p[1], s.p[2]}},
              {"p4", s.p4},       {"q4", s.q4},                    {"u0", s.u0},
              {"alpha", s.alpha}};
}

inline json to_json(const CdwState& s) {
  return json{{"kind", "cdw"}, {"c", {s.c[0], s.c[1], s.c[2]}}, {"d2", s.d2}, {"d3", s.d3}, {"w", s.w}};
}

inline json to_json(const PqState& s) {
  return json{{"kind", "pq"},
              {"P", {s.P[0], s.P[1], s.P[2], s.P[3]}},
              {"Q", {s.Q[0], s.Q[1], s.Q[2], s.Q[3]}}};
}

inline TodaState toda_from_json(const json& j) {
  TodaState s;
  s.q = detail::get_vec(j, "q");
  s.p = detail::get_vec(j, "p");
  const std::string b = j.value("boundary", "open");
  if (b == "open")
    s.boundary = Boundary::open;
  else if (b == "periodic")
    s.boundary = Boundary::periodic;
  else
    throw std::invalid_argument("state json: boundary must be 'open' or 'periodic'");
  s.validate();
  return s;
}

inline FlaschkaState flaschka_from_json(const json& j) {
  FlaschkaState s;
  const std::string v = j.value("variant", "alpha_beta");
  if (v == "alpha_beta") {
    s.variant = FlaschkaVariant::alpha_beta;
    s.first = detail::get_vec(j, "alpha");
    s.second = detail::get_vec(j, "beta");
  } else if (v == "a_b") {
    s.variant = FlaschkaVariant::a_b;
    s.first = detail::get_vec(j, "a");
    s.second = detail::get_vec(j, "b");
  } else {
    throw std::invalid_argument("state json: variant must be 'alpha_beta' or 'a_b'");
  }
  s.validate();
  return s;
}

inline GtlState gtl_from_json(const json& j) {
  GtlState s;
  s.N = j.contains("N") ? j.at("N").get<int>() : 1;
  s.p = detail::get_vec(j, "p");
  s.a = detail::get_vec(j, "a");
  s.b = detail::get_vec(j, "b");
  s.u = detail::get_num(j, "u");
  s.v = detail::get_num(j, "v");
  s.validate();
  return s;
}

inline N3State n3_from_json(const json& j) {
  N3State s;
  const auto p = detail::get_vec(j, "p");
  const auto a = detail::get_vec(j, "a");
  if (p.size() != 3 || a.size() != 2)
    throw std::invalid_argument("state json: n3 expects 3 momenta and 2 bond values");
  std::copy(p.begin(), p.end(), s.p.begin());
  std::copy(a.begin(), a.end(), s.a.begin());
  s.u = detail::get_num(j, "u");
  return s;
}

inline N3QState n3q_from_json(const json& j) {
  N3QState s;
  const auto q = detail::get_vec(j, "q");
  const auto p = detail::get_vec(j, "p");
  if (q.size() != 3 || p.size() != 3)
    throw std::invalid_argument("state json: n3q expects 3 positions and 3 momenta");
  std::copy(q.begin(), q.end(), s.q.begin());
  std::copy(p.begin(), p.end(), s.p.begin());
  s.p4 = detail::get_num(j, "p4");
  s.q4 = detail::get_num(j, "q4");
  s.u0 = detail::get_num_or(j, "u0", 1.0);
  s.alpha = detail::get_num_or(j, "alpha", 0.0);
  return s;
}

inline CdwState cdw_from_json(const json& j) {
  CdwState s;
  const auto c = detail::get_vec(j, "c");
  if (c.size() != 3) throw std::invalid_argument("state json: cdw expects 3 diagonal values");
  std::copy(c.begin(), c.end(), s.c.begin());
  s.d2 = detail::get_num(j, "d2");
  s.d3 = detail::get_num(j, "d3");
  s.w = detail::get_num(j, "w");
  return s;
}

inline PqState pq_from_json(const json& j) {
  PqState s;
  const auto P = detail::get_vec(j, "P");
  const auto Q = detail::get_vec(j, "Q");
  if (P.size() != 4 || Q.size() != 4)
    throw std::invalid_argument("state json: pq expects 4 P values and 4 Q values");
  std::copy(P.begin(), P.end(), s.P.begin());
  std::copy(Q.begin(), Q.end(), s.Q.begin());
  return s;
}

inline std::string state_kind(const json& j) {
  if (!j.contains("kind")) throw std::invalid_argument("state json: missing 'kind'");
  return j.at("kind").get<std::string>();
}

// ----------------------------- series -----------------------------

inline json to_json(const SeriesFn& s) {
  return json{{"t0", s.t0}, {"coeffs", s.c}};
}

inline SeriesFn series_from_json(const json& j) {
  return SeriesFn(detail::get_num_or(j, "t0", 0.0), detail::get_vec(j, "coeffs"));
}

}  // namespace gtl
