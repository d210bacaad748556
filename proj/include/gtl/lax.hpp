// lax.hpp — Lax-pair builders, commutators, discrete compatibility residual, and spectra
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtl/states.hpp"

namespace gtl {

enum class LaxRep { TL_2x2, GTL_BANDED, N3_SYM, N3_Q, N3_PQ, CDW };

inline const char* lax_rep_name(LaxRep r) {
  switch (r) {
    case LaxRep::TL_2x2: return "tl_2x2";
    case LaxRep::GTL_BANDED: return "gtl_banded";
    case LaxRep::N3_SYM: return "n3_sym";
    case LaxRep::N3_Q: return "n3_q";
    case LaxRep::N3_PQ: return "n3_pq";
    case LaxRep::CDW: return "cdw";
  }
  return "?";
}

struct LaxPair {
  Eigen::MatrixXd L;
  Eigen::MatrixXd M;  // zero matrix for representations whose companion is not given
  LaxRep rep = LaxRep::N3_SYM;
  std::optional<double> lambda;
};

// ----------------------------- builders -----------------------------

// first-site 2x2 chain pair at spectral parameter params.lambda (default 0)
inline LaxPair build_lax(const TodaState& s, const RepParams& params = {}) {
  s.validate();
  const double lambda = params.lambda.value_or(0.0);
  LaxPair out;
  out.rep = LaxRep::TL_2x2;
  out.lambda = lambda;
  const double q = s.q[0], p = s.p[0];
  out.L.setZero(2, 2);
  out.M.setZero(2, 2);
  out.L << p + lambda, std::exp(q), -std::exp(-q), 0.0;
  out.M << 0.0, -std::exp(q), std::exp(-q), lambda;
  return out;
}

// banded (2N+1)x(2N+1) pair: tridiagonal plus the corner couplings v (above) and u (below)
inline LaxPair build_lax(const GtlState& s) {
  s.validate();
  const int n = s.dim();
  LaxPair out;
  out.rep = LaxRep::GTL_BANDED;
  out.L.setZero(n, n);
  out.M.setZero(n, n);
  for (int k = -s.N; k <= s.N; ++k) out.L(s.idx(k), s.idx(k)) = s.p[s.idx(k)];
  for (int k = -s.N; k < s.N; ++k) {
    const int i = s.idx(k);
    out.L(i, i + 1) = s.a[i];
    out.L(i + 1, i) = s.b[i];
    out.M(i, i + 1) = s.a[i];
    out.M(i + 1, i) = -s.b[i];
  }
  out.L(s.idx(-1), s.idx(1)) = s.v;
  out.L(s.idx(1), s.idx(-1)) = s.u;
  out.M(s.idx(-1), s.idx(1)) = s.v;
  out.M(s.idx(1), s.idx(-1)) = -s.u;
  return out;
}

// symmetric three-site pair: L symmetric, M antisymmetric
inline LaxPair build_lax(const N3State& s) {
  LaxPair out;
  out.rep = LaxRep::N3_SYM;
  out.L.setZero(3, 3);
  out.M.setZero(3, 3);
  out.L << s.p[0], s.a[0], s.u,
           s.a[0], s.p[1], s.a[1],
           s.u,    s.a[1], s.p[2];
  out.M << 0.0,     s.a[0], s.u,
           -s.a[0], 0.0,    s.a[1],
           -s.u,    -s.a[1], 0.0;
  return out;
}

// asymmetric three-site L in position coordinates; only L is given for this
// representation, so M is returned as the zero matrix
inline LaxPair build_lax(const N3QState& s, const RepParams& params = {}) {
  if (params.d1 == 0.0 || params.d2 == 0.0)
    throw std::invalid_argument("build_lax: d1 and d2 must be nonzero for the asymmetric representation");
  const double e12 = std::exp(s.q[0] - s.q[1]);
  const double e23 = std::exp(s.q[1] - s.q[2]);
  const double e13 = std::exp(s.q[0] - s.q[2]);
  LaxPair out;
  out.rep = LaxRep::N3_Q;
  out.M.setZero(3, 3);
  out.L.setZero(3, 3);
  out.L << s.p[0],                     e12 * s.p4, e13,
           params.d1 * e12 * s.p4,     s.p[1],     e23 * s.q4,
           params.d1 * params.d2 * e13, params.d2 * e23 * s.q4, s.p[2];
  return out;
}

// canonical-pair three-site L; only L is given for this representation
inline LaxPair build_lax(const PqState& s, const RepParams& params = {}) {
  if (params.d1 == 0.0 || params.d2 == 0.0)
    throw std::invalid_argument("build_lax: d1 and d2 must be nonzero for the asymmetric representation");
  const double e1 = std::exp(s.Q[0]);
  const double e2 = std::exp(s.Q[1]);
  const double e12 = std::exp(s.Q[0] + s.Q[1]);
  LaxPair out;
  out.rep = LaxRep::N3_PQ;
  out.M.setZero(3, 3);
  out.L.setZero(3, 3);
  out.L << s.P[0],                     e1 * s.P[2],            e12,
           params.d1 * e1 * s.P[3],    s.P[1] - s.P[0],        e2 * s.Q[2],
           params.d1 * params.d2 * e12, params.d2 * e2 * s.Q[3], -s.P[1];
  return out;
}

// half-time-squared variables: lower-unit tridiagonal L with corner w, upper-triangular M
inline LaxPair build_lax(const CdwState& s) {
  LaxPair out;
  out.rep = LaxRep::CDW;
  out.L.setZero(3, 3);
  out.M.setZero(3, 3);
  out.L << s.c[0], s.d2, s.w,
           1.0,    s.c[1], s.d3,
           0.0,    1.0,    s.c[2];
  out.M << s.c[0], 1.0,    0.0,
           0.0,    s.c[1], 1.0,
           0.0,    0.0,    s.c[2];
  return out;
}

// ----------------------------- commutator -----------------------------

inline Eigen::MatrixXd commutator(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw std::invalid_argument("commutator: matrices must be square and of equal dimension");
  return A * B - B * A;
}

// ----------------------------- discrete compatibility residual -----------------------------

// Residual of the chain compatibility identity Ldot_n + L_n M_n - M_{n+1} L_n = 0.
// The companion matrix as printed fails the identity for every chain (its lower-left
// entry would force q_n = q_{n+1}); the unique repair keeping the printed L_n shifts
// that entry one site back, M_n = [[0, -e^{q_n}], [e^{-q_{n-1}}, lambda]], after which
// the identity holds exactly for the chain flow with the site order reversed. The
// residual therefore evaluates the corrected pair on the reversed chain, so candidate
// derivatives taken from the classic flow on the original chain yield zero.
inline double discrete_lax_residual(const TodaState& s, double lambda,
                                    const std::vector<double>& qdot,
                                    const std::vector<double>& pdot,
                                    bool companion_as_printed = false) {
  s.validate();
  if (s.boundary != Boundary::open)
    throw std::invalid_argument("discrete_lax_residual: open chains only");
  if (qdot.size() != s.sites() || pdot.size() != s.sites())
    throw std::invalid_argument("discrete_lax_residual: derivative lengths must match the chain");
  const int n = static_cast<int>(s.sites());
  // reversed chain: site i (1-based) carries original site n+1-i
  auto q = [&](int i) { return s.q[static_cast<std::size_t>(n - i)]; };
  auto p = [&](int i) { return s.p[static_cast<std::size_t>(n - i)]; };
  auto dq = [&](int i) { return qdot[static_cast<std::size_t>(n - i)]; };
  auto dp = [&](int i) { return pdot[static_cast<std::size_t>(n - i)]; };

  auto L_at = [&](int i) {
    Eigen::Matrix2d L;
    L << p(i) + lambda, std::exp(q(i)), -std::exp(-q(i)), 0.0;
    return L;
  };
  // companion at site i; boundary convention: the sub-diagonal exponential vanishes
  // below site 1 and the super-diagonal one above site n
  auto M_at = [&](int i) {
    Eigen::Matrix2d M;
    const double up = (i <= n) ? -std::exp(q(i)) : 0.0;
    double down;
    if (companion_as_printed)
      down = (i <= n) ? std::exp(-q(i)) : 0.0;
    else
      down = (i >= 2 && i <= n + 1) ? std::exp(-q(i - 1)) : 0.0;
    M << 0.0, up, down, lambda;
    return M;
  };

  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    Eigen::Matrix2d Ldot;
    Ldot << dp(i), dq(i) * std::exp(q(i)), dq(i) * std::exp(-q(i)), 0.0;
    const Eigen::Matrix2d R = Ldot + L_at(i) * M_at(i) - M_at(i + 1) * L_at(i);
    worst = std::max(worst, R.cwiseAbs().maxCoeff());
  }
  return worst;
}

// ----------------------------- spectra -----------------------------

enum class SpectrumMethod { charpoly3, symmetric_qr };

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (real, imag)
  SpectrumMethod method = SpectrumMethod::charpoly3;

  bool is_real(double tol = 1e-10) const {
    for (const auto& z : eigenvalues)
      if (std::abs(z.imag()) > tol) return false;
    return true;
  }
};

namespace detail {

inline void sort_eigenvalues(std::vector<std::complex<double>>& ev) {
  std::sort(ev.begin(), ev.end(), [](const std::complex<double>& x, const std::complex<double>& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

// roots of the monic cubic x^3 + b x^2 + c x + d
inline std::vector<std::complex<double>> cubic_roots(double b, double c, double d, bool force_real) {
  const double p = c - b * b / 3.0;
  const double qq = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  std::vector<std::complex<double>> roots;
  const double disc = qq * qq / 4.0 + p * p * p / 27.0;  // < 0 means three real roots
  if (force_real || disc <= 0.0) {
    const double pm = std::min(p, 0.0);
    if (pm == 0.0) {
      roots.assign(3, std::complex<double>(shift, 0.0));
      return roots;
    }
    const double r = 2.0 * std::sqrt(-pm / 3.0);
    double arg = 3.0 * qq / (pm * r);  // = cos(theta), clamped against roundoff
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg);
    for (int k = 0; k < 3; ++k)
      roots.emplace_back(shift + r * std::cos((theta - 2.0 * M_PI * k) / 3.0), 0.0);
    return roots;
  }
  const double root = std::sqrt(disc);
  // pick the large-magnitude cube root to avoid cancellation
  const double big = -qq / 2.0 - std::copysign(root, qq);
  const double Acr = std::cbrt(big);
  const double Bcr = (Acr != 0.0) ? -p / (3.0 * Acr) : 0.0;
  roots.emplace_back(shift + Acr + Bcr, 0.0);
  roots.emplace_back(shift - (Acr + Bcr) / 2.0, std::sqrt(3.0) / 2.0 * (Acr - Bcr));
  roots.emplace_back(shift - (Acr + Bcr) / 2.0, -std::sqrt(3.0) / 2.0 * (Acr - Bcr));
  return roots;
}

inline bool is_symmetric(const Eigen::MatrixXd& A, double tol) {
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, A.cwiseAbs().maxCoeff());
}

// cyclic Jacobi rotations; returns sorted eigenvalues of a symmetric matrix
inline std::vector<std::complex<double>> jacobi_eigenvalues(Eigen::MatrixXd A) {
  const Eigen::Index n = A.rows();
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off = std::max(off, std::abs(A(i, j)));
    if (off <= 1e-13 * scale) {
      std::vector<std::complex<double>> ev;
      for (Eigen::Index i = 0; i < n; ++i) ev.emplace_back(A(i, i), 0.0);
      sort_eigenvalues(ev);
      return ev;
    }
    for (Eigen::Index pp = 0; pp < n; ++pp) {
      for (Eigen::Index qq = pp + 1; qq < n; ++qq) {
        if (std::abs(A(pp, qq)) <= 1e-300) continue;
        const double theta = (A(qq, qq) - A(pp, pp)) / (2.0 * A(pp, qq));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n);
        G(pp, pp) = cs;
        G(qq, qq) = cs;
        G(pp, qq) = sn;
        G(qq, pp) = -sn;
        A = G.transpose() * A * G;
      }
    }
  }
  std::ostringstream msg;
  msg << "spectrum: iterative diagonalization did not converge after " << max_sweeps << " sweeps";
  throw std::runtime_error(msg.str());
}

}  // namespace detail

// eigenvalues sorted by (real, imag); 2x2 and 3x3 use the closed-form characteristic
// polynomial, larger symmetric matrices the iterative orthogonal-rotation method
// (tagged symmetric_qr); larger nonsymmetric matrices are unsupported
inline Spectrum spectrum(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols() || L.rows() < 2)
    throw std::invalid_argument("spectrum: need a square matrix of dimension >= 2");
  Spectrum out;
  const Eigen::Index n = L.rows();
  if (n == 2) {
    out.method = SpectrumMethod::charpoly3;
    const double tr = L(0, 0) + L(1, 1);
    const double det = L(0, 0) * L(1, 1) - L(0, 1) * L(1, 0);
    const double disc = tr * tr / 4.0 - det;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      out.eigenvalues = {{tr / 2.0 - r, 0.0}, {tr / 2.0 + r, 0.0}};
    } else {
      const double r = std::sqrt(-disc);
      out.eigenvalues = {{tr / 2.0, -r}, {tr / 2.0, r}};
    }
  } else if (n == 3) {
    out.method = SpectrumMethod::charpoly3;
    const double tr = L.trace();
    const double m01 = L(0, 0) * L(1, 1) - L(0, 1) * L(1, 0);
    const double m02 = L(0, 0) * L(2, 2) - L(0, 2) * L(2, 0);
    const double m12 = L(1, 1) * L(2, 2) - L(1, 2) * L(2, 1);
    const double det = L.determinant();
    // characteristic polynomial: x^3 - tr x^2 + (sum of principal minors) x - det
    out.eigenvalues = detail::cubic_roots(-tr, m01 + m02 + m12, -det,
                                          detail::is_symmetric(L, 1e-13));
  } else {
    if (!detail::is_symmetric(L, 1e-12))
      throw std::invalid_argument("spectrum: nonsymmetric matrices above 3x3 are unsupported");
    out.method = SpectrumMethod::symmetric_qr;
    out.eigenvalues = detail::jacobi_eigenvalues(L);
  }
  detail::sort_eigenvalues(out.eigenvalues);
  return out;
}

inline const char* spectrum_method_name(SpectrumMethod m) {
  return m == SpectrumMethod::charpoly3 ? "charpoly3" : "symmetric_qr";
}

}  // namespace gtl
