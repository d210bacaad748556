// checks.hpp — named verification suites, report serialization, and the live
// discrepancy ledger comparing printed readings against their oracles
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtl/dynamics.hpp"
#include "gtl/lax.hpp"
#include "gtl/poisson.hpp"
#include "gtl/rmatrix.hpp"
#include "gtl/series.hpp"
#include "gtl/states.hpp"
#include "gtl/tau.hpp"

namespace gtl {

using ojson = nlohmann::ordered_json;

// ----------------------------- report types -----------------------------

// status is "pass" or "fail" for asserted suites; a "measured" row records its
// number without judging it and never fails a run
struct CheckResult {
  std::string name;
  std::string status;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
};

// one discrepancy between a printed reading and the reading its oracle
// validates; the two values give the discrepant quantity under each reading on
// the fixture described in the verdict
struct ErratumEntry {
  std::string name;
  std::string printed;
  std::string resolved;
  double printed_value = 0.0;
  double resolved_value = 0.0;
  std::string verdict;
};

struct CheckReport {
  std::vector<CheckResult> checks;
  std::vector<ErratumEntry> errata;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
};

inline ojson to_json(const CheckResult& r) {
  ojson j;
  j["name"] = r.name;
  j["status"] = r.status;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["note"] = r.note;
  return j;
}

inline ojson to_json(const ErratumEntry& e) {
  ojson j;
  j["name"] = e.name;
  j["printed"] = e.printed;
  j["resolved"] = e.resolved;
  j["printed_value"] = e.printed_value;
  j["resolved_value"] = e.resolved_value;
  j["verdict"] = e.verdict;
  return j;
}

inline ojson to_json(const CheckReport& rep) {
  ojson j;
  j["checks"] = ojson::array();
  for (const auto& c : rep.checks) j["checks"].push_back(to_json(c));
  j["errata"] = ojson::array();
  for (const auto& e : rep.errata) j["errata"].push_back(to_json(e));
  j["all_passed"] = rep.all_passed();
  return j;
}

namespace detail {

inline std::string fmt_g(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

inline N3State random_n3(std::mt19937& gen) {
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  N3State s;
  for (auto& x : s.p) x = box(gen);
  for (auto& x : s.a) x = box(gen);
  do { s.u = box(gen); } while (std::abs(s.u) < 0.1);
  return s;
}

inline GtlState random_gtl(std::mt19937& gen, int N, bool classic) {
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  GtlState s;
  s.N = N;
  s.p.resize(2 * N + 1);
  s.a.resize(2 * N);
  s.b.resize(2 * N);
  for (auto& x : s.p) x = box(gen);
  for (auto& x : s.a) x = box(gen);
  for (auto& x : s.b) x = box(gen);
  if (!classic) {
    do { s.u = box(gen); } while (std::abs(s.u) < 0.1);
    do { s.v = box(gen); } while (std::abs(s.v) < 0.1);
  }
  return s;
}

inline double max_diff(const N3State& x, const N3State& y) {
  double worst = std::abs(x.u - y.u);
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(x.p[i] - y.p[i]));
  for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(x.a[i] - y.a[i]));
  return worst;
}

inline double max_diff(const CdwState& x, const CdwState& y) {
  double worst = std::max(std::abs(x.d2 - y.d2), std::abs(x.d3 - y.d3));
  worst = std::max(worst, std::abs(x.w - y.w));
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(x.c[i] - y.c[i]));
  return worst;
}

// quadratic exponential tau(t) = exp(t^2/2) as a truncated series at t0 = 0
inline SeriesFn exp_quadratic(int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  if (order >= 2) c[2] = 0.5;
  return exp(SeriesFn(0.0, c));
}

// dyadic random series: coefficients in {-8..8}/16 make ring identities bit-exact
inline SeriesFn random_dyadic(std::mt19937& gen, int order) {
  std::uniform_int_distribution<int> num(-8, 8);
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  for (auto& x : c) x = num(gen) / 16.0;
  return SeriesFn(0.0, c);
}

inline CheckResult make_result(std::string name, double residual, double tol,
                               std::string note) {
  CheckResult r;
  r.name = std::move(name);
  r.status = residual <= tol ? "pass" : "fail";
  r.residual = residual;
  r.tolerance = tol;
  r.note = std::move(note);
  return r;
}

}  // namespace detail

// ----------------------------- asserted suites -----------------------------

// explicit three-site rates against the symmetric commutator on seeded states
inline CheckResult check_lax_residuals(unsigned seed) {
  std::mt19937 gen(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const N3State s = detail::random_n3(gen);
    worst = std::max(worst, detail::max_diff(rhs(s), rhs_from_lax(s)));
  }
  return detail::make_result("lax", worst, 1e-12,
                             "100 seeded three-site states, explicit rates vs commutator");
}

// commutator projection at u = v = 0 against the hand-coded tridiagonal flow
inline CheckResult check_reduction(unsigned seed) {
  std::mt19937 gen(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial)
    worst = std::max(worst, reduction_check(detail::random_gtl(gen, 2, true)));
  return detail::make_result("reduction", worst, 1e-13,
                             "100 seeded classic width-two states vs tridiagonal flow");
}

// the quadratic invariant generates the flow at the resolved bond-bond
// coefficient and fails to at the printed one
inline CheckResult check_poisson_consistency(unsigned seed) {
  std::mt19937 gen(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    worst = std::max(worst, ham_flow_residual(detail::random_n3(gen), 1.0));
    worst = std::max(worst, ham_flow_residual(detail::random_gtl(gen, 1, false), 2.0));
  }
  N3State fix;
  fix.a = {0.0, 1.0};
  fix.u = 1.0;
  const double printed = ham_flow_residual(fix, 2.0);
  CheckResult r = detail::make_result(
      "poisson", worst, 1e-12,
      "resolved coefficients generate the flow; printed three-site coefficient leaves " +
          detail::fmt_g(printed) + " on the witness state");
  if (printed < 0.1) {
    r.status = "fail";
    r.note += " (expected the printed coefficient to fail by at least 0.1)";
  }
  return r;
}

// pairwise brackets of the first four trace invariants with analytic gradients
inline CheckResult check_involution(unsigned seed) {
  std::mt19937 gen(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    worst = std::max(worst,
                     involution_matrix(detail::random_n3(gen), 4).cwiseAbs().maxCoeff());
    worst = std::max(
        worst, involution_matrix(detail::random_gtl(gen, 1, false), 4).cwiseAbs().maxCoeff());
  }
  return detail::make_result("involution", worst, 1e-9,
                             "max |{H_i,H_j}|, i,j <= 4, on 20 seeded states per chart");
}

// chain bilinear identities and the reduced tau machinery
inline CheckResult check_bilinear(unsigned seed) {
  double worst = 0.0;
  // the quadratic exponential solves the quadratic-free variant exactly
  const SeriesFn tau = detail::exp_quadratic(12);
  worst = std::max(
      worst, max_abs_coeff(toda_bilinear_residual(tau, tau, tau, BilinearVariant::as_printed)));
  // the vacuum solves the standard variant exactly
  const SeriesFn one = SeriesFn::constant(1.0, 8, 0.0);
  worst = std::max(
      worst, max_abs_coeff(toda_bilinear_residual(one, one, one, BilinearVariant::standard)));
  // the hyperbolic form is twice the standard one on random series
  std::mt19937 gen(seed);
  for (int trial = 0; trial < 20; ++trial) {
    const SeriesFn m = detail::random_dyadic(gen, 6);
    const SeriesFn c = detail::random_dyadic(gen, 6);
    const SeriesFn p = detail::random_dyadic(gen, 6);
    const SeriesFn gap =
        sinh_form_residual(m, c, p) -
        2.0 * toda_bilinear_residual(m, c, p, BilinearVariant::standard);
    worst = std::max(worst, max_abs_coeff(gap));
  }
  // the generated seed annihilates the reduced residual lines
  const TauTriple seed_triple = exact_tau_seed(12);
  for (const SeriesFn& r : gtl_tau_residual(seed_triple))
    worst = std::max(worst, max_abs_coeff(r));
  for (const SeriesFn& r : gtl_tau_residual_59(seed_triple))
    worst = std::max(worst, max_abs_coeff(r));
  return detail::make_result("bilinear", worst, 1e-12,
                             "chain variants, hyperbolic doubling, and the reduced seed");
}

// ----------------------------- measured suite -----------------------------

// classical-limit tensor bracket against both published right-hand sides; the
// split value is reported as-is and never asserted
inline CheckResult check_rmatrix() {
  GtlState one;
  one.N = 1;
  one.p = {0.0, 0.0, 0.0};
  one.a = {1.0, 1.0};
  one.b = {1.0, 1.0};
  GtlState two;
  two.N = 2;
  two.p = {0.0, 0.0, 0.0, 0.0, 0.0};
  two.a = {1.0, 1.0, 1.0, 1.0};
  two.b = {1.0, 1.0, 1.0, 1.0};
  const double split1 = r_matrix_residual(one, gtl_table(), RMatrixForm::split);
  const double split2 = r_matrix_residual(two, gtl_table(), RMatrixForm::split);
  const double sym = std::max(r_matrix_residual(one, gtl_table(), RMatrixForm::symmetric_sum),
                              r_matrix_residual(two, gtl_table(), RMatrixForm::symmetric_sum));
  CheckResult r;
  r.name = "rmatrix";
  r.status = "measured";
  r.residual = split1;
  r.tolerance = 0.0;
  r.note = "split form leaves " + detail::fmt_g(split1) + " (width one) and " +
           detail::fmt_g(split2) + " (width two); symmetric form leaves " + detail::fmt_g(sym);
  return r;
}

// ----------------------------- dispatch -----------------------------

inline std::vector<std::string> check_suite_names() {
  return {"lax", "reduction", "poisson", "involution", "rmatrix", "bilinear"};
}

inline std::vector<ErratumEntry> errata_entries();

inline CheckReport run_checks(const std::vector<std::string>& names, unsigned seed) {
  if (names.empty()) throw std::invalid_argument("run_checks: empty check list");
  CheckReport rep;
  for (const auto& name : names) {
    if (name == "lax")
      rep.checks.push_back(check_lax_residuals(seed));
    else if (name == "reduction")
      rep.checks.push_back(check_reduction(seed));
    else if (name == "poisson")
      rep.checks.push_back(check_poisson_consistency(seed));
    else if (name == "involution")
      rep.checks.push_back(check_involution(seed));
    else if (name == "rmatrix")
      rep.checks.push_back(check_rmatrix());
    else if (name == "bilinear")
      rep.checks.push_back(check_bilinear(seed));
    else
      throw std::invalid_argument("run_checks: unknown check '" + name + "'");
  }
  rep.errata = errata_entries();
  return rep;
}

// ----------------------------- discrepancy ledger -----------------------------

// each entry evaluates the printed reading and the resolved reading of one
// discrepant quantity on a fixed witness state; nothing here is asserted, the
// ledger is generated output
inline std::vector<ErratumEntry> errata_entries() {
  std::vector<ErratumEntry> out;

  // --- chain charts ---
  {
    TodaState s;
    s.q = {0.4, -0.3};
    s.p = {0.6, 0.2};
    const double alpha = std::exp(s.q[0] - s.q[1]);
    const double a1 = 0.5 * std::exp(0.5 * (s.q[0] - s.q[1]));
    const double oracle = -0.5 * rhs(s).p[0];  // chain rule through b = -p/2
    ErratumEntry e;
    e.name = "momentum_rate_symbol";
    e.printed = "diagonal rate written 2(alpha_n^2 - alpha_{n-1}^2) in the half-variable chart";
    e.resolved = "2(a_n^2 - a_{n-1}^2), the squares of that chart's own bond variables";
    e.printed_value = 2.0 * alpha * alpha;
    e.resolved_value = 2.0 * a1 * a1;
    e.verdict = "first diagonal rate on a two-site witness: the chain rule through the "
                "position flow gives " +
                detail::fmt_g(oracle) + ", matching the resolved reading to " +
                detail::fmt_g(std::abs(oracle - e.resolved_value), 3) +
                "; the printed symbol belongs to the unscaled chart";
    out.push_back(e);
  }
  {
    TodaState s;
    s.q = {0.3, -0.2, 0.5};
    s.p = {0.1, -0.4, 0.2};
    const TodaState d = rhs(s);
    ErratumEntry e;
    e.name = "companion_matrix_compatibility";
    e.printed = "companion matrix with corner entries exp(-q_n) and exp(q_n) at the same site";
    e.resolved = "lower-left corner shifted one site back, exp(-q_{n-1})";
    e.printed_value = discrete_lax_residual(s, 1.0, d.q, d.p, true);
    e.resolved_value = discrete_lax_residual(s, 1.0, d.q, d.p, false);
    e.verdict = "discrete compatibility residual along the open-chain flow on a three-site "
                "witness; only the shifted corner closes the relation";
    out.push_back(e);
  }
  {
    const SeriesFn one = SeriesFn::constant(1.0, 8, 0.0);
    const SeriesFn tau = detail::exp_quadratic(12);
    ErratumEntry e;
    e.name = "chain_bilinear_variant";
    e.printed = "second-derivative bilinear identity without the squared-function term";
    e.resolved = "standard variant with the squared-function term restored";
    e.printed_value =
        toda_bilinear_residual(one, one, one, BilinearVariant::as_printed)[0];
    e.resolved_value =
        toda_bilinear_residual(one, one, one, BilinearVariant::standard)[0];
    e.verdict = "residual of the vacuum under each variant; the quadratic exponential solves "
                "the printed variant instead, with residual " +
                detail::fmt_g(max_abs_coeff(toda_bilinear_residual(
                                  tau, tau, tau, BilinearVariant::as_printed)),
                              3) +
                "; both variants are implemented and selectable";
    out.push_back(e);
  }

  // --- general lattice ---
  {
    GtlState s;
    s.N = 3;
    s.p = {0.9, 0.8, 0.7, 0.1, 0.5, 0.4, 0.3};
    s.a = {0.2, 0.5, -0.3, 0.4, 0.6, -0.2};
    s.b = {0.7, -0.4, 0.5, 0.3, -0.6, 0.2};
    s.u = 0.8;
    s.v = -0.5;
    ErratumEntry e;
    e.name = "corner_rate_site_labels";
    e.printed = "corner rates read the second and fourth storage sites regardless of width";
    e.resolved = "corner rates read the two sites the corner couples, first and last";
    e.printed_value = rhs_as_printed(s).u;
    e.resolved_value = rhs(s).u;
    e.verdict = "corner rate on a width-three witness: the commutator matches the resolved "
                "reading; the two readings coincide only at width two";
    out.push_back(e);
  }
  {
    N3State s;
    s.p = {0.3, -0.2, 0.5};
    s.a = {0.8, 0.6};
    s.u = 0.4;
    const double psum = (s.p[0] * s.p[0] * s.p[0] + s.p[1] * s.p[1] * s.p[1] +
                         s.p[2] * s.p[2] * s.p[2]) / 3.0;
    const double a1s = s.a[0] * s.a[0], a2s = s.a[1] * s.a[1], us = s.u * s.u;
    // printed bracket is site-free under the outer sum and references the bonds
    // and sites a3, a4, p4, p5 beyond the chain; those evaluate to zero here
    const double bracket = a1s * s.p[0] + (a1s + a2s + us) * s.p[1] + a2s * s.p[2];
    ErratumEntry e;
    e.name = "hamiltonian_expansion_sites";
    e.printed = "cubic invariant expanded as a site-free bracket summed over the chain, "
                "referencing bonds and sites beyond it";
    e.resolved = "one third of the trace of the cube of the Lax matrix";
    e.printed_value = psum + 3.0 * bracket;
    e.resolved_value = hamiltonian(s, 3);
    e.verdict = "three-site witness, out-of-range symbols evaluated as zero and the outer sum "
                "kept; the trace expansion generates the flow and stays conserved; the "
                "general-chart expansion shares the defect";
    out.push_back(e);
  }
  {
    GtlState s;
    s.N = 1;
    s.p = {0.0, 0.0, 0.0};
    s.a = {1.0, 1.0};
    s.b = {1.0, 1.0};
    ErratumEntry e;
    e.name = "r_matrix_identity_form";
    e.printed = "bracket of the two Lax factors written with a transposed action on the "
                "second factor";
    e.resolved = "commutator of the r-matrix with the symmetric sum of the two factors";
    e.printed_value = r_matrix_residual(s, gtl_table(), RMatrixForm::split);
    e.resolved_value = r_matrix_residual(s, gtl_table(), RMatrixForm::symmetric_sum);
    e.verdict = "max entry gap to the tensor bracket on the classical unit chain; the "
                "symmetric form annihilates it, the split form does not";
    out.push_back(e);
  }

  // --- symmetric three-site system ---
  {
    N3State fix;
    fix.a = {0.0, 1.0};
    fix.u = 1.0;
    ErratumEntry e;
    e.name = "bracket_corner_coefficient";
    e.printed = "bond-bond bracket {a1, a2} = 2u";
    e.resolved = "{a1, a2} = u";
    e.printed_value = ham_flow_residual(fix, 2.0);
    e.resolved_value = ham_flow_residual(fix, 1.0);
    e.verdict = "worst gap between the explicit flow and the bracket flow of the quadratic "
                "invariant on the witness state, per coefficient; the antisymmetry identity "
                "holds for either, only the resolved one generates the flow";
    out.push_back(e);
  }
  {
    N3State s;
    s.p = {0.3, -0.2, 0.5};
    s.a = {0.8, 0.6};
    s.u = 0.4;
    const N3State d = rhs(s);
    auto drift = [&](double c) {
      return std::abs((d.a[0] * s.a[1] + s.a[0] * d.a[1]) / s.u -
                      s.a[0] * s.a[1] * d.u / (s.u * s.u) - c * d.p[1]);
    };
    ErratumEntry e;
    e.name = "casimir_coefficient";
    e.printed = "quadratic invariant written a1 a2 / u - 2 p2";
    e.resolved = "a1 a2 / u - p2";
    e.printed_value = drift(2.0);
    e.resolved_value = drift(1.0);
    e.verdict = "time derivative along the flow on a generic witness; only the unit "
                "coefficient is conserved";
    out.push_back(e);
  }
  {
    N3QState s;
    s.q = {0.3, -0.1, 0.4};
    s.p = {0.2, 0.5, -0.6};
    s.u0 = 0.5;
    const double gap = std::exp(s.q[0] - s.q[2]);
    const double rate = s.p[0] - s.p[2];
    ErratumEntry e;
    e.name = "corner_reconstruction_form";
    e.printed = "corner reconstructed additively, u = u0 + exp(q1 - q3)";
    e.resolved = "multiplicative form u = u0 exp(q1 - q3)";
    e.printed_value = std::abs(gap * rate - rate * (s.u0 + gap));
    e.resolved_value = std::abs(s.u0 * gap * rate - rate * s.u0 * gap);
    e.verdict = "defect of the corner rate identity udot = (p1 - p3) u under each form on a "
                "generic witness; the additive form satisfies it only at u0 = 0";
    out.push_back(e);
  }
  {
    N3State s;
    s.p = {0.3, -0.2, 0.5};
    s.a = {0.8, 0.6};
    s.u = 0.4;
    const double dup = s.a[1] * (s.p[1] - s.p[2]) + 2.0 * s.u * s.a[0];
    ErratumEntry e;
    e.name = "canonical_pair_rate_table";
    e.printed = "canonical-pair rate table lists the same right-hand side twice for one "
                "coordinate, none for two others, and writes rates in the other chart's "
                "variables";
    e.resolved = "no flow table adopted; only the canonical-pair matrix builder is used";
    e.printed_value = dup;
    e.resolved_value = dup;
    e.verdict = "the duplicated right-hand side evaluated on a three-site witness (identical "
                "both times); the table underdetermines a flow, so the library exposes the "
                "matrix builder alone";
    out.push_back(e);
  }

  // --- reduced half-time system ---
  {
    N3State s;
    s.p = {0.6, 0.1, -0.4};
    s.a = {0.9, 0.7};
    s.u = 0.5;
    const N3State d = rhs(s);
    CdwState image;
    image.c = {0.5 * d.p[0], 0.5 * d.p[1], 0.5 * d.p[2]};
    image.d2 = s.a[0] * d.a[0];
    image.d3 = s.a[1] * d.a[1];
    image.w = s.u * d.u;
    const CdwState x = cdw_from_n3(s);
    ErratumEntry printed_terms;
    printed_terms.name = "reduced_flow_coupling_terms";
    printed_terms.printed = "bond couplings -2 sqrt(w d3) and +2 sqrt(w d2)";
    printed_terms.resolved = "-2 sqrt(w d2 d3) and +2 sqrt(w d2 d3), the half-time image of "
                             "the three-site flow";
    printed_terms.printed_value = detail::max_diff(rhs(x, CdwVariant::printed), image);
    printed_terms.resolved_value = detail::max_diff(rhs(x, CdwVariant::half_time_n3), image);
    printed_terms.verdict = "worst field gap to the chain-rule image of the three-site flow "
                            "on a positive witness; all variants agree once the corner "
                            "weight vanishes";
    out.push_back(printed_terms);

    ErratumEntry consistency;
    consistency.name = "reduced_vs_half_time_consistency";
    consistency.printed = "the residual identities of the tau representation taken as the "
                          "flow, couplings -+ 2 sqrt(w d2)";
    consistency.resolved = "the half-time image itself; the two coincide only at vanishing "
                           "corner weight";
    consistency.printed_value = detail::max_diff(rhs(x, CdwVariant::tau_consistent), image);
    N3State classic = s;
    classic.u = 0.0;
    const N3State dc = rhs(classic);
    CdwState classic_image;
    classic_image.c = {0.5 * dc.p[0], 0.5 * dc.p[1], 0.5 * dc.p[2]};
    classic_image.d2 = classic.a[0] * dc.a[0];
    classic_image.d3 = classic.a[1] * dc.a[1];
    classic_image.w = 0.0;
    consistency.resolved_value =
        detail::max_diff(rhs(cdw_from_n3(classic), CdwVariant::tau_consistent), classic_image);
    consistency.verdict = "same gap for the identity-derived couplings on the positive "
                          "witness, then on its classic limit; the identities and the "
                          "half-time flow are mutually consistent only there";
    out.push_back(consistency);
  }
  {
    CdwState s;
    s.c = {0.5, -0.3, 0.2};
    s.d2 = 1.1;
    s.d3 = 0.8;
    s.w = 0.6;
    const LaxPair lp = build_lax(s);
    auto off_pattern = [](const Eigen::MatrixXd& K) {
      double worst = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j) worst = std::max(worst, std::abs(K(i, j)));
      return worst;
    };
    ErratumEntry e;
    e.name = "reduced_matrix_closure";
    e.printed = "the reduced pair claimed to reproduce the flow through its commutator";
    e.resolved = "no commutator order closes; the flow is specified directly on the fields";
    e.printed_value = off_pattern(commutator(lp.L, lp.M));
    e.resolved_value = off_pattern(commutator(lp.M, lp.L));
    e.verdict = "largest lower-triangular commutator entry on a generic witness, both orders; "
                "an upper-Hessenberg rate matrix admits neither, so the pair is exposed for "
                "spectra only";
    out.push_back(e);
  }

  return out;
}

// ----------------------------- rendering -----------------------------

inline std::string render_check_lines(const CheckReport& rep) {
  std::string out;
  for (const auto& c : rep.checks) {
    out += "[" + c.status + "] " + c.name + "  residual=" + detail::fmt_g(c.residual, 9);
    if (c.status != "measured") out += "  tolerance=" + detail::fmt_g(c.tolerance, 3);
    out += "\n    " + c.note + "\n";
  }
  return out;
}

inline std::string render_errata_table(const std::vector<ErratumEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.name + "\n";
    out += "  printed:  " + e.printed + "  [value " + detail::fmt_g(e.printed_value, 9) + "]\n";
    out += "  resolved: " + e.resolved + "  [value " + detail::fmt_g(e.resolved_value, 9) + "]\n";
    out += "  verdict:  " + e.verdict + "\n";
  }
  return out;
}

}  // namespace gtl
