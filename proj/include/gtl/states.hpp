// states.hpp — state containers for every coordinate representation and the exact maps between them
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gtl {

// ----------------------------- classic chain -----------------------------

enum class Boundary { open, periodic };

// positions/momenta of the classic exponential chain
struct TodaState {
  std::vector<double> q;
  std::vector<double> p;
  Boundary boundary = Boundary::open;

  std::size_t sites() const { return q.size(); }
  void validate() const {
    if (q.size() != p.size()) throw std::invalid_argument("TodaState: q and p lengths differ");
    if (q.size() < 2) throw std::invalid_argument("TodaState: need at least two sites");
  }
};

enum class FlaschkaVariant { alpha_beta, a_b };

// tridiagonal-flow variables; `first` is the off-diagonal family (alpha_n or a_n,
// length N-1 on an open chain), `second` the diagonal family (beta_n or b_n, length N)
struct FlaschkaState {
  FlaschkaVariant variant = FlaschkaVariant::alpha_beta;
  std::vector<double> first;
  std::vector<double> second;

  void validate() const {
    if (first.size() + 1 != second.size())
      throw std::invalid_argument("FlaschkaState: expected N-1 off-diagonal and N diagonal entries");
  }
};

// ----------------------------- generalized lattice -----------------------------

// sites k = -N..N; p per site, bond variables a_k (above) and b_k (below) for
// k = -N..N-1, and the corner pair (u below, v above) coupling sites -1 and +1
struct GtlState {
  int N = 1;
  std::vector<double> p;  // length 2N+1
  std::vector<double> a;  // length 2N
  std::vector<double> b;  // length 2N
  double u = 0.0;
  double v = 0.0;

  int dim() const { return 2 * N + 1; }
  // storage index of site k
  int idx(int k) const { return k + N; }
  bool is_classic() const { return u == 0.0 && v == 0.0; }
  void validate() const {
    if (N < 1) throw std::invalid_argument("GtlState: N must be at least 1");
    if (static_cast<int>(p.size()) != 2 * N + 1 || static_cast<int>(a.size()) != 2 * N ||
        static_cast<int>(b.size()) != 2 * N)
      throw std::invalid_argument("GtlState: field lengths inconsistent with N");
  }
};

// symmetric three-site specialization (b_k = a_k, v = u)
struct N3State {
  std::array<double, 3> p{};
  std::array<double, 2> a{};
  double u = 0.0;
};

// three-site system in position coordinates plus the auxiliary (p4, q4) pair;
// u is reconstructed as u0 * exp(q1 - q3)
struct N3QState {
  std::array<double, 3> q{};
  std::array<double, 3> p{};
  double p4 = 0.0;
  double q4 = 0.0;
  double u0 = 1.0;
  double alpha = 0.0;  // constant in the diagnostic quantity C4

  double u() const { return u0 * std::exp(q[0] - q[2]); }
};

// half-time-squared variables; c[0..2] are the diagonal entries in matrix order
struct CdwState {
  std::array<double, 3> c{};
  double d2 = 0.0;
  double d3 = 0.0;
  double w = 0.0;
};

// canonical pairs {P_i, Q_j} = delta_ij of the alternative three-site Lax matrix
struct PqState {
  std::array<double, 4> P{};
  std::array<double, 4> Q{};
};

// constants entering the asymmetric Lax representations; lambda is the spectral
// parameter of the 2x2 chain pair
struct RepParams {
  double d1 = 1.0;
  double d2 = 1.0;
  double d3 = 1.0;
  std::optional<double> lambda;
};

// ----------------------------- coordinate maps -----------------------------

// alpha_n = exp(q_n - q_{n+1}), beta_n = p_n; or a_n = exp((q_n - q_{n+1})/2)/2, b_n = -p_n/2
inline FlaschkaState flaschka_from_qp(const TodaState& s, FlaschkaVariant variant) {
  s.validate();
  FlaschkaState out;
  out.variant = variant;
  const std::size_t n = s.sites();
  out.first.resize(n - 1);
  out.second.resize(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double gap = s.q[k] - s.q[k + 1];
    out.first[k] = (variant == FlaschkaVariant::alpha_beta) ? std::exp(gap) : 0.5 * std::exp(0.5 * gap);
  }
  for (std::size_t k = 0; k < n; ++k)
    out.second[k] = (variant == FlaschkaVariant::alpha_beta) ? s.p[k] : -0.5 * s.p[k];
  return out;
}

// position from adjacent tau values: q_n = ln(tau_{n-1} / tau_n)
inline double qn_from_tau(double tau_prev, double tau_n) {
  if (tau_prev <= 0.0 || tau_n <= 0.0)
    throw std::domain_error("qn_from_tau: tau values must be positive");
  return std::log(tau_prev / tau_n);
}

// pointwise squaring map c_k = p_k, d_{k+1} = a_k^2, w = u^2; the t -> t/2
// rescaling is the caller's contract and is verified at the trajectory level
inline CdwState cdw_from_n3(const N3State& s) {
  CdwState out;
  out.c = s.p;
  out.d2 = s.a[0] * s.a[0];
  out.d3 = s.a[1] * s.a[1];
  out.w = s.u * s.u;
  return out;
}

// embed the symmetric three-site case into the general container (b = a, v = u)
inline GtlState gtl_from_n3(const N3State& s) {
  GtlState out;
  out.N = 1;
  out.p = {s.p[0], s.p[1], s.p[2]};
  out.a = {s.a[0], s.a[1]};
  out.b = {s.a[0], s.a[1]};
  out.u = s.u;
  out.v = s.u;
  return out;
}

}  // namespace gtl
