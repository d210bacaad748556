// series.hpp — truncated Taylor series in one variable with order-validity bookkeeping
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtl {

// A polynomial jet sum_k c[k] (t - t0)^k, valid through order c.size()-1.
// Binary operations align expansion points and truncate to the smaller valid
// order; analytic maps (exp, log, sqrt, inverse) preserve the valid order.
struct SeriesFn {
  double t0 = 0.0;
  std::vector<double> c;

  SeriesFn() : c{0.0} {}
  SeriesFn(double t0_, std::vector<double> coeffs) : t0(t0_), c(std::move(coeffs)) {
    if (c.empty()) throw std::invalid_argument("SeriesFn: empty coefficient list");
  }

  std::size_t order() const { return c.size() - 1; }

  double operator[](std::size_t k) const { return k < c.size() ? c[k] : 0.0; }

  // constant v carried at the same expansion point and order as `like`
  static SeriesFn constant(double v, const SeriesFn& like) {
    std::vector<double> d(like.c.size(), 0.0);
    d[0] = v;
    return SeriesFn(like.t0, std::move(d));
  }
  static SeriesFn constant(double v, std::size_t order, double t0 = 0.0) {
    std::vector<double> d(order + 1, 0.0);
    d[0] = v;
    return SeriesFn(t0, std::move(d));
  }

  // value at t by Horner evaluation of the jet
  double eval(double t) const {
    const double x = t - t0;
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  }

  SeriesFn truncated(std::size_t order) const {
    if (order >= c.size())
      throw std::invalid_argument("SeriesFn::truncated: requested order exceeds valid order");
    std::vector<double> d(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(order + 1));
    return SeriesFn(t0, std::move(d));
  }
};

namespace detail {
inline void check_same_t0(const SeriesFn& a, const SeriesFn& b, const char* fn) {
  if (a.t0 != b.t0)
    throw std::invalid_argument(std::string(fn) + ": mismatched expansion points");
}
}  // namespace detail

// ----------------------------- linear arithmetic -----------------------------

inline SeriesFn operator+(const SeriesFn& a, const SeriesFn& b) {
  detail::check_same_t0(a, b, "SeriesFn+");
  const std::size_t n = std::min(a.c.size(), b.c.size());
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = a.c[k] + b.c[k];
  return SeriesFn(a.t0, std::move(d));
}

inline SeriesFn operator-(const SeriesFn& a, const SeriesFn& b) {
  detail::check_same_t0(a, b, "SeriesFn-");
  const std::size_t n = std::min(a.c.size(), b.c.size());
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = a.c[k] - b.c[k];
  return SeriesFn(a.t0, std::move(d));
}

inline SeriesFn operator-(const SeriesFn& a) {
  std::vector<double> d(a.c);
  for (double& x : d) x = -x;
  return SeriesFn(a.t0, std::move(d));
}

inline SeriesFn operator*(double s, const SeriesFn& a) {
  std::vector<double> d(a.c);
  for (double& x : d) x *= s;
  return SeriesFn(a.t0, std::move(d));
}
inline SeriesFn operator*(const SeriesFn& a, double s) { return s * a; }

inline SeriesFn operator+(const SeriesFn& a, double s) {
  std::vector<double> d(a.c);
  d[0] += s;
  return SeriesFn(a.t0, std::move(d));
}
inline SeriesFn operator+(double s, const SeriesFn& a) { return a + s; }
inline SeriesFn operator-(const SeriesFn& a, double s) { return a + (-s); }
inline SeriesFn operator-(double s, const SeriesFn& a) { return (-a) + s; }

// Cauchy product, truncated to the smaller valid order
inline SeriesFn operator*(const SeriesFn& a, const SeriesFn& b) {
  detail::check_same_t0(a, b, "SeriesFn*");
  const std::size_t n = std::min(a.c.size(), b.c.size());
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n && j < b.c.size(); ++j) d[i + j] += a.c[i] * b.c[j];
  return SeriesFn(a.t0, std::move(d));
}

// ----------------------------- calculus -----------------------------

// term-by-term derivative; valid order drops by one
inline SeriesFn derivative(const SeriesFn& a) {
  if (a.order() == 0) return SeriesFn(a.t0, {0.0});
  std::vector<double> d(a.c.size() - 1);
  for (std::size_t k = 1; k < a.c.size(); ++k) d[k - 1] = static_cast<double>(k) * a.c[k];
  return SeriesFn(a.t0, std::move(d));
}

inline SeriesFn derivative(const SeriesFn& a, int m) {
  if (m < 0) throw std::invalid_argument("derivative: negative order");
  SeriesFn r = a;
  for (int i = 0; i < m; ++i) r = derivative(r);
  return r;
}

// antiderivative with value c0 at t0; valid order grows by one
inline SeriesFn antiderivative(const SeriesFn& a, double c0 = 0.0) {
  std::vector<double> d(a.c.size() + 1);
  d[0] = c0;
  for (std::size_t k = 0; k < a.c.size(); ++k) d[k + 1] = a.c[k] / static_cast<double>(k + 1);
  return SeriesFn(a.t0, std::move(d));
}

// ----------------------------- analytic maps -----------------------------

// log: from a * (log a)' = a', needs a[0] > 0
inline SeriesFn log(const SeriesFn& a) {
  if (a.c[0] <= 0.0) throw std::domain_error("log: series has nonpositive constant term");
  std::vector<double> d(a.c.size());
  d[0] = std::log(a.c[0]);
  for (std::size_t m = 1; m < a.c.size(); ++m) {
    double s = 0.0;
    for (std::size_t k = 1; k < m; ++k) s += static_cast<double>(k) * d[k] * a.c[m - k];
    d[m] = (a.c[m] - s / static_cast<double>(m)) / a.c[0];
  }
  return SeriesFn(a.t0, std::move(d));
}

// exp: from e' = a' e
inline SeriesFn exp(const SeriesFn& a) {
  std::vector<double> d(a.c.size());
  d[0] = std::exp(a.c[0]);
  for (std::size_t m = 1; m < a.c.size(); ++m) {
    double s = 0.0;
    for (std::size_t k = 1; k <= m; ++k) s += static_cast<double>(k) * a.c[k] * d[m - k];
    d[m] = s / static_cast<double>(m);
  }
  return SeriesFn(a.t0, std::move(d));
}

// sqrt: from s*s = a, needs a[0] > 0
inline SeriesFn sqrt(const SeriesFn& a) {
  if (a.c[0] <= 0.0) throw std::domain_error("sqrt: series has nonpositive constant term");
  std::vector<double> d(a.c.size());
  d[0] = std::sqrt(a.c[0]);
  for (std::size_t m = 1; m < a.c.size(); ++m) {
    double s = 0.0;
    for (std::size_t k = 1; k < m; ++k) s += d[k] * d[m - k];
    d[m] = (a.c[m] - s) / (2.0 * d[0]);
  }
  return SeriesFn(a.t0, std::move(d));
}

// quotient a/b by forward substitution, needs b[0] != 0
inline SeriesFn div(const SeriesFn& a, const SeriesFn& b) {
  detail::check_same_t0(a, b, "div");
  if (b.c[0] == 0.0) throw std::domain_error("div: divisor has zero constant term");
  const std::size_t n = std::min(a.c.size(), b.c.size());
  std::vector<double> d(n);
  for (std::size_t m = 0; m < n; ++m) {
    double s = a.c[m];
    for (std::size_t k = 1; k <= m; ++k) s -= b.c[k] * d[m - k];
    d[m] = s / b.c[0];
  }
  return SeriesFn(a.t0, std::move(d));
}

inline SeriesFn inv(const SeriesFn& b) { return div(SeriesFn::constant(1.0, b), b); }

inline SeriesFn pow(const SeriesFn& a, int n) {
  if (n < 0) return inv(pow(a, -n));
  SeriesFn r = SeriesFn::constant(1.0, a);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

// ----------------------------- Hirota bilinear derivative -----------------------------

// D_t^m f.g = sum_j (-1)^j C(m,j) f^{(m-j)} g^{(j)}; valid order drops by m
inline SeriesFn hirota_dt(int m, const SeriesFn& f, const SeriesFn& g) {
  detail::check_same_t0(f, g, "hirota_dt");
  if (m < 0) throw std::invalid_argument("hirota_dt: negative operator order");
  const std::size_t kmin = std::min(f.order(), g.order());
  if (static_cast<std::size_t>(m) > kmin)
    throw std::invalid_argument("hirota_dt: operator order exceeds series order");
  std::vector<SeriesFn> df{f}, dg{g};
  for (int i = 0; i < m; ++i) {
    df.push_back(derivative(df.back()));
    dg.push_back(derivative(dg.back()));
  }
  // binomial row C(m, j)
  std::vector<double> binom(static_cast<std::size_t>(m) + 1, 1.0);
  for (int j = 1; j <= m; ++j)
    binom[static_cast<std::size_t>(j)] =
        binom[static_cast<std::size_t>(j - 1)] * static_cast<double>(m - j + 1) / static_cast<double>(j);
  const std::size_t out_order = kmin - static_cast<std::size_t>(m);
  SeriesFn acc = SeriesFn::constant(0.0, out_order, f.t0);
  for (int j = 0; j <= m; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    SeriesFn term = df[static_cast<std::size_t>(m - j)] * dg[static_cast<std::size_t>(j)];
    acc = acc + sign * binom[static_cast<std::size_t>(j)] * term;
  }
  return acc;
}

// largest |coefficient|, the natural residual norm for series identities
inline double max_abs_coeff(const SeriesFn& a) {
  double m = 0.0;
  for (double x : a.c) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace gtl
