// grid2.hpp — complex-valued functions sampled on a uniform two-time lattice
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gtl {

using cplx = std::complex<double>;

// row-major samples v[i1*n2+i2] at (t1_0 + i1 h1, t2_0 + i2 h2); the outermost
// two rings on each axis are stencil margin, so interior indices run [2, n-3]
struct GridFn2 {
  int n1 = 0, n2 = 0;
  double t1_0 = 0.0, t2_0 = 0.0, h1 = 0.0, h2 = 0.0;
  std::vector<cplx> v;

  GridFn2() = default;
  GridFn2(int n1_, int n2_, double t1_0_, double t2_0_, double h1_, double h2_)
      : n1(n1_), n2(n2_), t1_0(t1_0_), t2_0(t2_0_), h1(h1_), h2(h2_),
        v(static_cast<std::size_t>(n1_ > 0 ? n1_ : 0) *
          static_cast<std::size_t>(n2_ > 0 ? n2_ : 0)) {
    if (n1 < 5 || n2 < 5)
      throw std::invalid_argument("GridFn2: need at least 5 points per axis");
    if (!(h1 > 0.0) || !(h2 > 0.0))
      throw std::invalid_argument("GridFn2: spacings must be positive");
  }

  static GridFn2 sample(int n1, int n2, double t1_0, double t2_0, double h1, double h2,
                        const std::function<cplx(double, double)>& fn) {
    GridFn2 g(n1, n2, t1_0, t2_0, h1, h2);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) g.at(i, j) = fn(g.t1(i), g.t2(j));
    return g;
  }

  double t1(int i1) const { return t1_0 + h1 * i1; }
  double t2(int i2) const { return t2_0 + h2 * i2; }

  cplx& at(int i1, int i2) {
    check_index(i1, i2);
    return v[static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2) +
             static_cast<std::size_t>(i2)];
  }
  const cplx& at(int i1, int i2) const {
    check_index(i1, i2);
    return v[static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2) +
             static_cast<std::size_t>(i2)];
  }

  bool interior(int i1, int i2) const {
    return i1 >= 2 && i1 <= n1 - 3 && i2 >= 2 && i2 <= n2 - 3;
  }

 private:
  void check_index(int i1, int i2) const {
    if (i1 < 0 || i1 >= n1 || i2 < 0 || i2 >= n2)
      throw std::invalid_argument("GridFn2: index outside the grid");
  }
};

namespace detail {
inline void check_same_grid(const GridFn2& a, const GridFn2& b, const char* fn) {
  if (a.n1 != b.n1 || a.n2 != b.n2 || a.t1_0 != b.t1_0 || a.t2_0 != b.t2_0 ||
      a.h1 != b.h1 || a.h2 != b.h2)
    throw std::invalid_argument(std::string(fn) + ": grids do not match");
}
inline void check_interior(const GridFn2& g, int i1, int i2, const char* fn) {
  if (!g.interior(i1, i2))
    throw std::invalid_argument(std::string(fn) + ": node is in the stencil margin");
}
}  // namespace detail

// ----------------------------- fourth-order stencils -----------------------------

inline cplx d1(const GridFn2& f, int i1, int i2) {
  detail::check_interior(f, i1, i2, "d1");
  return (-f.at(i1 + 2, i2) + 8.0 * f.at(i1 + 1, i2) - 8.0 * f.at(i1 - 1, i2) +
          f.at(i1 - 2, i2)) /
         (12.0 * f.h1);
}

inline cplx d11(const GridFn2& f, int i1, int i2) {
  detail::check_interior(f, i1, i2, "d11");
  return (-f.at(i1 + 2, i2) + 16.0 * f.at(i1 + 1, i2) - 30.0 * f.at(i1, i2) +
          16.0 * f.at(i1 - 1, i2) - f.at(i1 - 2, i2)) /
         (12.0 * f.h1 * f.h1);
}

inline cplx d2(const GridFn2& f, int i1, int i2) {
  detail::check_interior(f, i1, i2, "d2");
  return (-f.at(i1, i2 + 2) + 8.0 * f.at(i1, i2 + 1) - 8.0 * f.at(i1, i2 - 1) +
          f.at(i1, i2 - 2)) /
         (12.0 * f.h2);
}

// ----------------------------- two-variable Hirota combinations -----------------------------

inline cplx hirota_d1sq(const GridFn2& f, const GridFn2& g, int i1, int i2) {
  detail::check_same_grid(f, g, "hirota_d1sq");
  return d11(f, i1, i2) * g.at(i1, i2) - 2.0 * d1(f, i1, i2) * d1(g, i1, i2) +
         f.at(i1, i2) * d11(g, i1, i2);
}

inline cplx hirota_d2(const GridFn2& f, const GridFn2& g, int i1, int i2) {
  detail::check_same_grid(f, g, "hirota_d2");
  return d2(f, i1, i2) * g.at(i1, i2) - f.at(i1, i2) * d2(g, i1, i2);
}

inline double max_abs_interior(const GridFn2& f) {
  double m = 0.0;
  for (int i = 2; i <= f.n1 - 3; ++i)
    for (int j = 2; j <= f.n2 - 3; ++j) m = std::max(m, std::abs(f.at(i, j)));
  return m;
}

}  // namespace gtl
