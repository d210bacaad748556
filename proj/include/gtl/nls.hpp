// nls.hpp — two-time bilinear pair and the field equation it generates
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "gtl/grid2.hpp"

namespace gtl {

// coefficient of z^n in exp(sum_k d_k z^k); the arguments are the pre-divided
// operator symbols (first, second/2, third/3, ...)
inline cplx schur_h(int n, const std::vector<cplx>& d) {
  if (n < 0) throw std::invalid_argument("schur_h: negative order");
  if (static_cast<int>(d.size()) < n)
    throw std::invalid_argument("schur_h: need at least n symbols");
  std::vector<cplx> h(static_cast<std::size_t>(n) + 1);
  h[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    cplx acc = 0.0;
    for (int k = 1; k <= m; ++k)
      acc += static_cast<double>(k) * d[static_cast<std::size_t>(k - 1)] *
             h[static_cast<std::size_t>(m - k)];
    h[static_cast<std::size_t>(m)] = acc / static_cast<double>(m);
  }
  return h[static_cast<std::size_t>(n)];
}

// ----------------------------- bilinear pair -----------------------------

struct NlsBilinearResidual {
  GridFn2 r1, r2;
};

// first line couples neighboring functions through both times, second line is
// the one-site constraint; interior nodes are filled, the margin stays zero
inline NlsBilinearResidual nls_bilinear_residual(const GridFn2& tau_m1,
                                                 const GridFn2& tau_0,
                                                 const GridFn2& tau_p1) {
  detail::check_same_grid(tau_m1, tau_0, "nls_bilinear_residual");
  detail::check_same_grid(tau_p1, tau_0, "nls_bilinear_residual");
  NlsBilinearResidual out{GridFn2(tau_0.n1, tau_0.n2, tau_0.t1_0, tau_0.t2_0,
                                  tau_0.h1, tau_0.h2),
                          GridFn2(tau_0.n1, tau_0.n2, tau_0.t1_0, tau_0.t2_0,
                                  tau_0.h1, tau_0.h2)};
  for (int i = 2; i <= tau_0.n1 - 3; ++i)
    for (int j = 2; j <= tau_0.n2 - 3; ++j) {
      out.r1.at(i, j) = hirota_d2(tau_p1, tau_0, i, j) - hirota_d1sq(tau_p1, tau_0, i, j);
      out.r2.at(i, j) = hirota_d1sq(tau_0, tau_0, i, j) -
                        2.0 * tau_p1.at(i, j) * tau_m1.at(i, j);
    }
  return out;
}

// ----------------------------- field equation -----------------------------

// i phi_t2 + phi_t1t1 + 2 phi^2 phibar on interior nodes; the conjugate field
// is supplied separately because it arises as its own quotient of neighbors
inline GridFn2 nlse_residual(const GridFn2& phi, const GridFn2& phibar) {
  detail::check_same_grid(phi, phibar, "nlse_residual");
  GridFn2 out(phi.n1, phi.n2, phi.t1_0, phi.t2_0, phi.h1, phi.h2);
  const cplx iu(0.0, 1.0);
  for (int i = 2; i <= phi.n1 - 3; ++i)
    for (int j = 2; j <= phi.n2 - 3; ++j) {
      const cplx p = phi.at(i, j);
      out.at(i, j) = iu * d2(phi, i, j) + d11(phi, i, j) + 2.0 * p * p * phibar.at(i, j);
    }
  return out;
}

}  // namespace gtl
