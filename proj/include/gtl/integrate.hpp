// integrate.hpp — fixed and adaptive Runge-Kutta steppers with trajectory capture
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtl/poisson.hpp"
#include "gtl/states.hpp"

namespace gtl {

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

struct IntegratorStats {
  long steps = 0;    // accepted
  long rejects = 0;  // attempted but repeated with a smaller step
  long evals = 0;    // right-hand-side calls
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> y;
  IntegratorStats stats;
};

struct IntegratorConfig {
  double t_end = 1.0;
  double dt = 1e-2;       // fixed-step size
  bool adaptive = false;  // switch to the embedded 5(4) pair
  double atol = 1e-10;
  double rtol = 1e-10;

  void validate() const {
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    const auto tol_ok = [](double x) { return x >= 1e-14 && x <= 1e-2; };
    if (adaptive && (!tol_ok(atol) || !tol_ok(rtol)))
      throw std::invalid_argument("integrate: tolerances must lie in [1e-14, 1e-2]");
  }
};

// ----------------------------- fixed step -----------------------------

inline Trajectory rk4_fixed(const OdeRhs& f, const Eigen::VectorXd& y0, double t0,
                            double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_fixed: dt must be positive");
  if (!(t_end > t0)) throw std::invalid_argument("rk4_fixed: t_end must exceed t0");
  Trajectory tr;
  tr.t.push_back(t0);
  tr.y.push_back(y0);
  double t = t0;
  Eigen::VectorXd y = y0;
  while (t < t_end) {
    const double h = std::min(dt, t_end - t);
    const Eigen::VectorXd k1 = f(t, y);
    const Eigen::VectorXd k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = (t_end - t <= dt) ? t_end : t + h;
    tr.stats.steps += 1;
    tr.stats.evals += 4;
    tr.t.push_back(t);
    tr.y.push_back(y);
  }
  return tr;
}

// ----------------------------- embedded 5(4) pair -----------------------------

// Dormand–Prince coefficients; the last stage evaluates at the accepted point and
// seeds the next step (first-same-as-last)
inline Trajectory rk45(const OdeRhs& f, const Eigen::VectorXd& y0, double t0,
                       double t_end, double atol = 1e-10, double rtol = 1e-10,
                       double h0 = 0.0) {
  if (!(t_end > t0)) throw std::invalid_argument("rk45: t_end must exceed t0");
  const auto tol_ok = [](double x) { return x >= 1e-14 && x <= 1e-2; };
  if (!tol_ok(atol) || !tol_ok(rtol))
    throw std::invalid_argument("rk45: tolerances must lie in [1e-14, 1e-2]");

  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640,
                      e5 = -2187.0 / 6784 + 92097.0 / 339200, e6 = 11.0 / 84 - 187.0 / 2100,
                      e7 = -1.0 / 40;

  Trajectory tr;
  tr.t.push_back(t0);
  tr.y.push_back(y0);
  double t = t0;
  Eigen::VectorXd y = y0;
  double h = h0 > 0.0 ? h0 : (t_end - t0) / 100.0;
  Eigen::VectorXd k1 = f(t, y);
  tr.stats.evals += 1;
  long attempts = 0;
  while (t < t_end) {
    if (++attempts > 50'000'000) throw std::runtime_error("rk45: step limit exceeded");
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw std::runtime_error("rk45: step size underflow");
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;
    const Eigen::VectorXd k2 = f(t + c2 * h, y + h * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 =
        f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd ynew =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = f(t + h, ynew);
    tr.stats.evals += 6;
    const Eigen::VectorXd err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (int i = 0; i < y.size(); ++i)
      err = std::max(err, std::abs(err_vec[i]) / (atol + rtol * std::abs(ynew[i])));
    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      t = last ? t_end : t + h;
      y = ynew;
      k1 = k7;  // first-same-as-last
      tr.stats.steps += 1;
      tr.t.push_back(t);
      tr.y.push_back(y);
    } else {
      tr.stats.rejects += 1;
    }
    h *= factor;
  }
  return tr;
}

// ----------------------------- state packing -----------------------------
// pack/unpack define the canonical component order used by trajectories and
// column headers; parameters that the flow leaves fixed are not packed

inline Eigen::VectorXd pack(const TodaState& s) {
  Eigen::VectorXd x(2 * s.sites());
  for (std::size_t i = 0; i < s.sites(); ++i) {
    x[static_cast<int>(i)] = s.q[i];
    x[static_cast<int>(i + s.sites())] = s.p[i];
  }
  return x;
}

inline TodaState unpack(const TodaState& like, const Eigen::VectorXd& x) {
  TodaState s = like;
  const int n = static_cast<int>(like.sites());
  if (x.size() != 2 * n) throw std::invalid_argument("unpack: component count mismatch");
  for (int i = 0; i < n; ++i) {
    s.q[i] = x[i];
    s.p[i] = x[i + n];
  }
  return s;
}

inline Eigen::VectorXd pack(const FlaschkaState& s) {
  Eigen::VectorXd x(static_cast<int>(s.first.size() + s.second.size()));
  int at = 0;
  for (double v : s.first) x[at++] = v;
  for (double v : s.second) x[at++] = v;
  return x;
}

inline FlaschkaState unpack(const FlaschkaState& like, const Eigen::VectorXd& x) {
  FlaschkaState s = like;
  if (x.size() != static_cast<int>(s.first.size() + s.second.size()))
    throw std::invalid_argument("unpack: component count mismatch");
  int at = 0;
  for (double& v : s.first) v = x[at++];
  for (double& v : s.second) v = x[at++];
  return s;
}

inline Eigen::VectorXd pack(const N3State& s) { return flatten(s); }
inline N3State unpack(const N3State& like, const Eigen::VectorXd& x) {
  return unflatten(like, x);
}

inline Eigen::VectorXd pack(const GtlState& s) { return flatten(s); }
inline GtlState unpack(const GtlState& like, const Eigen::VectorXd& x) {
  return unflatten(like, x);
}

inline Eigen::VectorXd pack(const N3QState& s) {
  Eigen::VectorXd x(8);
  x << s.q[0], s.q[1], s.q[2], s.p[0], s.p[1], s.p[2], s.p4, s.q4;
  return x;
}

inline N3QState unpack(const N3QState& like, const Eigen::VectorXd& x) {
  if (x.size() != 8) throw std::invalid_argument("unpack: component count mismatch");
  N3QState s = like;  // keeps u0 and alpha
  for (int i = 0; i < 3; ++i) {
    s.q[i] = x[i];
    s.p[i] = x[i + 3];
  }
  s.p4 = x[6];
  s.q4 = x[7];
  return s;
}

inline Eigen::VectorXd pack(const CdwState& s) {
  Eigen::VectorXd x(6);
  x << s.c[0], s.c[1], s.c[2], s.d2, s.d3, s.w;
  return x;
}

inline CdwState unpack(const CdwState&, const Eigen::VectorXd& x) {
  if (x.size() != 6) throw std::invalid_argument("unpack: component count mismatch");
  CdwState s;
  s.c = {x[0], x[1], x[2]};
  s.d2 = x[3];
  s.d3 = x[4];
  s.w = x[5];
  return s;
}

// ----------------------------- flow integration -----------------------------

template <class State>
struct FlowTrajectory {
  std::vector<double> t;
  std::vector<State> states;
  IntegratorStats stats;
};

// drives an autonomous state-space flow given as State -> State through either
// stepper; the trajectory holds one state per accepted step
template <class State, class RhsFn>
FlowTrajectory<State> integrate_flow(const State& s0, RhsFn&& rhsfn,
                                     const IntegratorConfig& cfg) {
  cfg.validate();
  OdeRhs f = [&](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return pack(rhsfn(unpack(s0, x)));
  };
  const Trajectory tr = cfg.adaptive
                            ? rk45(f, pack(s0), 0.0, cfg.t_end, cfg.atol, cfg.rtol)
                            : rk4_fixed(f, pack(s0), 0.0, cfg.t_end, cfg.dt);
  FlowTrajectory<State> out;
  out.t = tr.t;
  out.stats = tr.stats;
  out.states.reserve(tr.y.size());
  for (const auto& x : tr.y) out.states.push_back(unpack(s0, x));
  return out;
}

// max deviation of a scalar observable from its initial value along the way
template <class State, class Fn>
double max_drift(const FlowTrajectory<State>& tr, Fn&& observable) {
  if (tr.states.empty()) throw std::invalid_argument("max_drift: empty trajectory");
  const double ref = observable(tr.states.front());
  double worst = 0.0;
  for (const State& s : tr.states) worst = std::max(worst, std::abs(observable(s) - ref));
  return worst;
}

// componentwise version for vector observables such as sorted spectra
template <class State, class Fn>
double max_vector_drift(const FlowTrajectory<State>& tr, Fn&& observable) {
  if (tr.states.empty()) throw std::invalid_argument("max_vector_drift: empty trajectory");
  const Eigen::VectorXd ref = observable(tr.states.front());
  double worst = 0.0;
  for (const State& s : tr.states) {
    const Eigen::VectorXd cur = observable(s);
    if (cur.size() != ref.size())
      throw std::invalid_argument("max_vector_drift: observable changed length");
    worst = std::max(worst, (cur - ref).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace gtl
