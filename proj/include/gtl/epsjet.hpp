// epsjet.hpp — truncated power series in a bookkeeping parameter over t-series
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gtl/series.hpp"

namespace gtl {

// coefficients share one expansion point and one t-order; arithmetic follows the
// Cauchy rule in the bookkeeping parameter with t-series coefficient arithmetic
struct EpsJet {
  std::vector<SeriesFn> c;

  EpsJet() : c{SeriesFn()} {}
  explicit EpsJet(std::vector<SeriesFn> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) throw std::invalid_argument("EpsJet: needs at least one coefficient");
    for (const SeriesFn& s : c) {
      if (s.t0 != c.front().t0)
        throw std::invalid_argument("EpsJet: mismatched expansion points");
      if (s.order() != c.front().order())
        throw std::invalid_argument("EpsJet: coefficients must share one t-order");
    }
  }

  static EpsJet constant(const SeriesFn& s, std::size_t eps_order) {
    std::vector<SeriesFn> v(eps_order + 1, SeriesFn::constant(0.0, s));
    v[0] = s;
    return EpsJet(std::move(v));
  }

  std::size_t eps_order() const { return c.size() - 1; }
  std::size_t t_order() const { return c.front().order(); }
  double t0() const { return c.front().t0; }

  SeriesFn coeff(std::size_t k) const {  // zero beyond the stored orders
    return k < c.size() ? c[k] : SeriesFn::constant(0.0, c.front());
  }
};

namespace detail {
inline void check_compatible(const EpsJet& a, const EpsJet& b, const char* fn) {
  if (a.t0() != b.t0()) throw std::invalid_argument(std::string(fn) + ": mismatched expansion points");
}
}  // namespace detail

inline EpsJet operator+(const EpsJet& a, const EpsJet& b) {
  detail::check_compatible(a, b, "EpsJet+");
  const std::size_t n = std::min(a.eps_order(), b.eps_order());
  std::vector<SeriesFn> d;
  for (std::size_t k = 0; k <= n; ++k) d.push_back(a.c[k] + b.c[k]);
  return EpsJet(std::move(d));
}

inline EpsJet operator-(const EpsJet& a, const EpsJet& b) {
  detail::check_compatible(a, b, "EpsJet-");
  const std::size_t n = std::min(a.eps_order(), b.eps_order());
  std::vector<SeriesFn> d;
  for (std::size_t k = 0; k <= n; ++k) d.push_back(a.c[k] - b.c[k]);
  return EpsJet(std::move(d));
}

inline EpsJet operator-(const EpsJet& a) {
  std::vector<SeriesFn> d;
  for (const SeriesFn& s : a.c) d.push_back(-s);
  return EpsJet(std::move(d));
}

inline EpsJet operator*(double s, const EpsJet& a) {
  std::vector<SeriesFn> d;
  for (const SeriesFn& x : a.c) d.push_back(s * x);
  return EpsJet(std::move(d));
}

inline EpsJet operator*(const EpsJet& a, double s) { return s * a; }

inline EpsJet operator+(const EpsJet& a, double s) {
  EpsJet d = a;
  d.c[0] = d.c[0] + s;
  return d;
}

inline EpsJet operator+(double s, const EpsJet& a) { return a + s; }
inline EpsJet operator-(const EpsJet& a, double s) { return a + (-s); }
inline EpsJet operator-(double s, const EpsJet& a) { return (-a) + s; }

inline EpsJet operator*(const EpsJet& a, const EpsJet& b) {
  detail::check_compatible(a, b, "EpsJet*");
  const std::size_t n = std::min(a.eps_order(), b.eps_order());
  std::vector<SeriesFn> d;
  for (std::size_t m = 0; m <= n; ++m) {
    SeriesFn acc = a.c[0] * b.c[m];
    for (std::size_t k = 1; k <= m; ++k) acc = acc + a.c[k] * b.c[m - k];
    d.push_back(acc);
  }
  return EpsJet(std::move(d));
}

// coefficient-wise t-derivative (drops one t-order, keeps the jet depth)
inline EpsJet derivative(const EpsJet& a) {
  std::vector<SeriesFn> d;
  for (const SeriesFn& s : a.c) d.push_back(derivative(s));
  return EpsJet(std::move(d));
}

inline EpsJet derivative(const EpsJet& a, int m) {
  EpsJet d = a;
  for (int i = 0; i < m; ++i) d = derivative(d);
  return d;
}

// quotient by forward substitution; the base coefficient must be invertible
inline EpsJet div(const EpsJet& a, const EpsJet& b) {
  detail::check_compatible(a, b, "EpsJet div");
  const std::size_t n = std::min(a.eps_order(), b.eps_order());
  std::vector<SeriesFn> d;
  for (std::size_t m = 0; m <= n; ++m) {
    SeriesFn num = a.c[m];
    for (std::size_t k = 1; k <= m; ++k) num = num - b.c[k] * d[m - k];
    d.push_back(div(num, b.c[0]));
  }
  return EpsJet(std::move(d));
}

// log through the jet: L_m = (a_m - (1/m) sum_{k<m} k L_k a_{m-k}) / a_0
inline EpsJet log(const EpsJet& a) {
  std::vector<SeriesFn> d;
  d.push_back(log(a.c[0]));
  for (std::size_t m = 1; m <= a.eps_order(); ++m) {
    SeriesFn num = a.c[m];
    for (std::size_t k = 1; k < m; ++k)
      num = num - (static_cast<double>(k) / m) * (d[k] * a.c[m - k]);
    d.push_back(div(num, a.c[0]));
  }
  return EpsJet(std::move(d));
}

// exp through the jet: E_m = (1/m) sum_{k=1..m} k a_k E_{m-k}
inline EpsJet exp(const EpsJet& a) {
  std::vector<SeriesFn> d;
  d.push_back(exp(a.c[0]));
  for (std::size_t m = 1; m <= a.eps_order(); ++m) {
    SeriesFn acc = SeriesFn::constant(0.0, a.c[0]);
    for (std::size_t k = 1; k <= m; ++k)
      acc = acc + (static_cast<double>(k) / m) * (a.c[k] * d[m - k]);
    d.push_back(acc);
  }
  return EpsJet(std::move(d));
}

// collapse the jet at a concrete parameter value
inline SeriesFn eval_eps(const EpsJet& a, double eps) {
  SeriesFn acc = a.c.back();
  for (std::size_t k = a.c.size() - 1; k-- > 0;) acc = eps * acc + a.c[k];
  return acc;
}

inline double max_abs_coeff(const EpsJet& a) {
  double m = 0.0;
  for (const SeriesFn& s : a.c) m = std::max(m, max_abs_coeff(s));
  return m;
}

// hooks that let one formula run over plain series and over jets
inline SeriesFn lift_series(const SeriesFn& s, const SeriesFn& like) {
  detail::check_same_t0(s, like, "lift_series");
  return s;
}

inline EpsJet lift_series(const SeriesFn& s, const EpsJet& like) {
  if (s.t0 != like.t0())
    throw std::invalid_argument("lift_series: mismatched expansion points");
  return EpsJet::constant(s, like.eps_order());
}

}  // namespace gtl
