// gtl_lab.cpp — command-line laboratory: simulation runs with invariant
// monitors, verification suites, spectra, tau residual tables, and the
// discrepancy ledger
#include <CLI11.hpp>
#include <algorithm>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gtl/checks.hpp"
#include "gtl/dynamics.hpp"
#include "gtl/integrate.hpp"
#include "gtl/json_io.hpp"
#include "gtl/lax.hpp"
#include "gtl/poisson.hpp"
#include "gtl/states.hpp"
#include "gtl/tau.hpp"

namespace {

using gtl::json;
using gtl::ojson;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// thrown for flow-control to the documented exit codes: 1 asserted failure,
// 2 usage or config error
struct CliError {
  int code;
  std::string msg;
};

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{2, "cannot open '" + path + "'"};
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw CliError{2, "malformed JSON in '" + path + "': " + e.what()};
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{2, "cannot write '" + path + "'"};
  out << content;
}

unsigned resolve_seed(unsigned cli_seed) {
  const char* env = std::getenv("GTL_LAB_SEED");
  if (env == nullptr || *env == '\0') return cli_seed;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0')
    throw CliError{2, "GTL_LAB_SEED must be an unsigned integer, got '" + std::string(env) + "'"};
  return static_cast<unsigned>(v);
}

Eigen::MatrixXd tridiag(const std::vector<double>& off, const std::vector<double>& diag) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) T(i, i) = diag[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < n; ++i)
    T(i, i + 1) = T(i + 1, i) = off[static_cast<std::size_t>(i)];
  return T;
}

double trace_pow(const Eigen::MatrixXd& L, int k) {
  Eigen::MatrixXd P = L;
  for (int i = 1; i < k; ++i) P = P * L;
  return P.trace() / k;
}

// CSV eigenvalue columns carry real parts; the asymmetric representations stay
// real on the shipped states and any complex pair shows up as equal entries
std::vector<double> real_spectrum(const Eigen::MatrixXd& L) {
  const gtl::Spectrum sp = gtl::spectrum(L);
  std::vector<double> out;
  out.reserve(sp.eigenvalues.size());
  for (const auto& z : sp.eigenvalues) out.push_back(z.real());
  return out;
}

// ----------------------------- simulate -----------------------------

struct SimOptions {
  std::string flow;
  std::string state_path;
  std::string out_path = "trajectory.csv";
  double t_end = 1.0;
  double dt = 1e-2;
  double atol = 1e-10;
  double rtol = 1e-10;
  bool rk45 = false;
  bool as_printed = false;
  int sweep = 1;
  double max_drift = std::numeric_limits<double>::infinity();
  unsigned seed = 0;
};

struct RunOutput {
  std::string summary;
  bool violated = false;
};

std::string csv_sibling(const std::string& csv_path, const std::string& suffix) {
  const std::size_t dot = csv_path.rfind('.');
  const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
  const std::string ext = dot == std::string::npos ? std::string(".csv") : csv_path.substr(dot);
  return suffix.empty() ? stem + ext : stem + suffix + ext;
}

// integrates one trajectory, writes <out>.csv and <out>.stats.json, and
// returns the printed drift summary; monitors evaluates to H1..H3, C1..C3
// and the eigenvalue columns, NaN where a quantity is undefined
template <class State, class RhsFn, class MonFn>
RunOutput run_one(const State& s0, RhsFn&& rhsfn, MonFn&& monitors,
                  const std::vector<std::string>& field_names,
                  const std::vector<std::string>& monitor_names, const SimOptions& opt,
                  const std::string& csv_path) {
  gtl::IntegratorConfig cfg;
  cfg.t_end = opt.t_end;
  cfg.dt = opt.dt;
  cfg.adaptive = opt.rk45;
  cfg.atol = opt.atol;
  cfg.rtol = opt.rtol;
  const auto tr = gtl::integrate_flow(s0, rhsfn, cfg);

  std::string csv = "t";
  for (const auto& n : field_names) csv += "," + n;
  for (const auto& n : monitor_names) csv += "," + n;
  csv += "\n";

  std::vector<double> base;
  std::vector<double> drift(monitor_names.size(), 0.0);
  for (std::size_t row = 0; row < tr.t.size(); ++row) {
    csv += fmt17(tr.t[row]);
    const Eigen::VectorXd x = gtl::pack(tr.states[row]);
    for (int i = 0; i < x.size(); ++i) csv += "," + fmt17(x[i]);
    const std::vector<double> mon = monitors(tr.states[row]);
    if (row == 0) base = mon;
    for (std::size_t j = 0; j < mon.size(); ++j) {
      csv += "," + fmt17(mon[j]);
      if (std::isfinite(mon[j]) && std::isfinite(base[j]))
        drift[j] = std::max(drift[j], std::abs(mon[j] - base[j]));
    }
    csv += "\n";
  }
  write_text(csv_path, csv);

  RunOutput out;
  ojson stats;
  stats["flow"] = opt.flow;
  stats["t_end"] = opt.t_end;
  stats["integrator"] = opt.rk45 ? "rk45" : "rk4";
  if (opt.rk45) {
    stats["atol"] = opt.atol;
    stats["rtol"] = opt.rtol;
  } else {
    stats["dt"] = opt.dt;
  }
  stats["steps"] = tr.stats.steps;
  stats["rejects"] = tr.stats.rejects;
  stats["evals"] = tr.stats.evals;
  stats["rows"] = tr.t.size();
  ojson jdrift;
  for (std::size_t j = 0; j < monitor_names.size(); ++j) {
    if (!std::isfinite(base[j])) continue;  // undefined monitor on this state
    jdrift[monitor_names[j]] = drift[j];
    out.summary += "max |d " + monitor_names[j] + "| = " + fmt17(drift[j]) + "\n";
    if (drift[j] > opt.max_drift) out.violated = true;
  }
  stats["drift"] = jdrift;
  stats["drift_bound"] =
      std::isfinite(opt.max_drift) ? ojson(opt.max_drift) : ojson(nullptr);
  stats["bound_violated"] = out.violated;
  const std::size_t dot = csv_path.rfind('.');
  const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
  write_text(stem + ".stats.json", stats.dump(2) + "\n");
  if (out.violated)
    out.summary += "drift bound " + fmt17(opt.max_drift) + " violated\n";
  return out;
}

template <class State>
State jitter_state(const State& s, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> box(-0.01, 0.01);
  Eigen::VectorXd x = gtl::pack(s);
  for (int i = 0; i < x.size(); ++i) x[i] += box(gen);
  return gtl::unpack(s, x);
}

// runs the sweep (possibly a single run) concurrently; each trajectory is
// independent and writes its own files
template <class State, class RhsFn, class MonFn>
int run_sweep(const State& s0, RhsFn&& rhsfn, MonFn&& monitors,
              const std::vector<std::string>& field_names,
              const std::vector<std::string>& monitor_names, const SimOptions& opt) {
  const int n = opt.sweep;
  std::vector<RunOutput> results(static_cast<std::size_t>(n));
  std::vector<std::string> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> threads;
  for (int k = 0; k < n; ++k) {
    threads.emplace_back([&, k]() {
      try {
        const State sk =
            k == 0 ? s0 : jitter_state(s0, opt.seed + static_cast<unsigned>(k));
        const std::string path =
            n == 1 ? opt.out_path : csv_sibling(opt.out_path, "_" + std::to_string(k));
        results[static_cast<std::size_t>(k)] =
            run_one(sk, rhsfn, monitors, field_names, monitor_names, opt, path);
      } catch (const CliError& e) {
        errors[static_cast<std::size_t>(k)] = e.msg;
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(k)] = e.what();
      }
    });
  }
  for (auto& t : threads) t.join();
  bool violated = false;
  for (int k = 0; k < n; ++k) {
    if (!errors[static_cast<std::size_t>(k)].empty())
      throw CliError{2, errors[static_cast<std::size_t>(k)]};
    if (n > 1) std::cout << "run " << k << ":\n";
    std::cout << results[static_cast<std::size_t>(k)].summary;
    violated = violated || results[static_cast<std::size_t>(k)].violated;
  }
  return violated ? 1 : 0;
}

std::vector<std::string> monitor_names_for(int dim) {
  std::vector<std::string> names = {"H1", "H2", "H3", "C1", "C2", "C3"};
  for (int i = 1; i <= dim; ++i) names.push_back("lam" + std::to_string(i));
  return names;
}

// printed-vs-oracle table for the general lattice right-hand side
void print_gtl_discrepancy_table(const gtl::GtlState& s) {
  const gtl::GtlState oracle = gtl::rhs(s);
  gtl::GtlState printed;
  try {
    printed = gtl::rhs_as_printed(s);
  } catch (const std::invalid_argument& e) {
    std::cout << "printed-vs-oracle right-hand side at the initial state\n";
    std::cout << "printed reading inapplicable here: " << e.what() << "\n";
    return;
  }
  const Eigen::VectorXd vo = gtl::flatten(oracle);
  const Eigen::VectorXd vp = gtl::flatten(printed);
  std::cout << "printed-vs-oracle right-hand side at the initial state\n";
  std::cout << "coordinate,printed,oracle,gap\n";
  bool any = false;
  for (int i = 0; i < vo.size(); ++i) {
    const double gap = std::abs(vp[i] - vo[i]);
    if (gap <= 1e-15) continue;
    any = true;
    std::cout << gtl::coord_name(s, i) << "," << fmt17(vp[i]) << "," << fmt17(vo[i]) << ","
              << fmt17(gap) << "\n";
  }
  if (!any) std::cout << "(no coordinate differs on this state)\n";
}

int cmd_simulate(const SimOptions& opt) {
  if (opt.state_path.empty()) throw CliError{2, "simulate: --state is required"};
  if (opt.sweep < 1) throw CliError{2, "simulate: --sweep must be at least 1"};
  const json doc = load_json_file(opt.state_path);
  std::string kind;
  try {
    kind = gtl::state_kind(doc);
  } catch (const std::exception& e) {
    throw CliError{2, e.what()};
  }
  if (kind != opt.flow)
    throw CliError{2, "simulate: state kind '" + kind + "' does not match --flow " + opt.flow};

  try {
    if (opt.flow == "n3") {
      const gtl::N3State s0 = gtl::n3_from_json(doc);
      auto mon = [](const gtl::N3State& s) {
        const gtl::InvariantSet inv = gtl::invariants(s, 3);
        std::vector<double> out = {inv.h[0], inv.h[1], inv.h[2], inv.c1,
                                   inv.c2.value_or(kNaN), inv.c3.value_or(kNaN)};
        for (double lam : real_spectrum(gtl::build_lax(s).L)) out.push_back(lam);
        return out;
      };
      return run_sweep(s0, [](const gtl::N3State& s) { return gtl::rhs(s); }, mon,
                       {"p1", "p2", "p3", "a1", "a2", "u"}, monitor_names_for(3), opt);
    }
    if (opt.flow == "gtl") {
      const gtl::GtlState s0 = gtl::gtl_from_json(doc);
      if (opt.as_printed) print_gtl_discrepancy_table(s0);
      const int dim = s0.dim();
      auto mon = [dim](const gtl::GtlState& s) {
        const gtl::InvariantSet inv = gtl::invariants(s, 3);
        std::vector<double> out = {inv.h[0], inv.h[1], inv.h[2], inv.c1,
                                   inv.c2.value_or(kNaN), inv.c3.value_or(kNaN)};
        const Eigen::MatrixXd L = gtl::build_lax(s).L;
        const bool sym = (L - L.transpose()).cwiseAbs().maxCoeff() <= 1e-12;
        if (L.rows() == 3 || sym)
          for (double lam : real_spectrum(L)) out.push_back(lam);
        else
          out.insert(out.end(), static_cast<std::size_t>(dim), kNaN);
        return out;
      };
      std::vector<std::string> fields;
      for (int i = 0; i < gtl::coord_count(s0); ++i) fields.push_back(gtl::coord_name(s0, i));
      return run_sweep(s0, [](const gtl::GtlState& s) { return gtl::rhs(s); }, mon, fields,
                       monitor_names_for(dim), opt);
    }
    if (opt.flow == "n3q") {
      const gtl::N3QState s0 = gtl::n3q_from_json(doc);
      auto mon = [](const gtl::N3QState& s) {
        const Eigen::MatrixXd L = gtl::build_lax(s).L;
        std::vector<double> out = {trace_pow(L, 1), trace_pow(L, 2), trace_pow(L, 3),
                                   L.trace(), kNaN, kNaN};
        const double u = s.u();
        if (u != 0.0) {
          const double a1 = std::exp(s.q[0] - s.q[1]) * s.p4;
          const double a2 = std::exp(s.q[1] - s.q[2]) * s.q4;
          out[4] = a1 * a2 / u - s.p[1];
          out[5] = 1.0;
        }
        for (double lam : real_spectrum(L)) out.push_back(lam);
        return out;
      };
      return run_sweep(s0, [](const gtl::N3QState& s) { return gtl::rhs(s); }, mon,
                       {"q1", "q2", "q3", "p1", "p2", "p3", "p4", "q4"}, monitor_names_for(3),
                       opt);
    }
    if (opt.flow == "cdw") {
      const gtl::CdwState s0 = gtl::cdw_from_json(doc);
      auto mon = [](const gtl::CdwState& s) {
        const Eigen::MatrixXd L = gtl::build_lax(s).L;
        std::vector<double> out = {trace_pow(L, 1), trace_pow(L, 2), trace_pow(L, 3),
                                   L.trace(), kNaN, kNaN};
        for (double lam : real_spectrum(L)) out.push_back(lam);
        return out;
      };
      return run_sweep(s0, [](const gtl::CdwState& s) { return gtl::rhs(s); }, mon,
                       {"c1", "c2", "c3", "d2", "d3", "w"}, monitor_names_for(3), opt);
    }
    if (opt.flow == "toda") {
      const gtl::TodaState s0 = gtl::toda_from_json(doc);
      const int n = static_cast<int>(s0.sites());
      auto mon = [](const gtl::TodaState& s) {
        const gtl::FlaschkaState fs = gtl::flaschka_from_qp(s, gtl::FlaschkaVariant::a_b);
        const Eigen::MatrixXd T = tridiag(fs.first, fs.second);
        std::vector<double> out = {trace_pow(T, 1), trace_pow(T, 2), trace_pow(T, 3),
                                   T.trace(), kNaN, kNaN};
        for (double lam : real_spectrum(T)) out.push_back(lam);
        return out;
      };
      std::vector<std::string> fields;
      for (int i = 1; i <= n; ++i) fields.push_back("q" + std::to_string(i));
      for (int i = 1; i <= n; ++i) fields.push_back("p" + std::to_string(i));
      return run_sweep(s0, [](const gtl::TodaState& s) { return gtl::rhs(s); }, mon, fields,
                       monitor_names_for(n), opt);
    }
    if (opt.flow == "flaschka") {
      const gtl::FlaschkaState s0 = gtl::flaschka_from_json(doc);
      const bool half_chart = s0.variant == gtl::FlaschkaVariant::a_b;
      const int n = static_cast<int>(s0.second.size());
      auto mon = [half_chart, n](const gtl::FlaschkaState& s) {
        std::vector<double> off = s.first, diag = s.second;
        bool ok = true;
        if (!half_chart) {
          // unscaled chart: alpha = 4 a^2, beta = -2 b
          for (auto& x : off) {
            if (x <= 0.0) ok = false;
            x = ok ? 0.5 * std::sqrt(x) : 0.0;
          }
          for (auto& x : diag) x = -0.5 * x;
        }
        if (!ok) return std::vector<double>(static_cast<std::size_t>(6 + n), kNaN);
        const Eigen::MatrixXd T = tridiag(off, diag);
        std::vector<double> out = {trace_pow(T, 1), trace_pow(T, 2), trace_pow(T, 3),
                                   T.trace(), kNaN, kNaN};
        for (double lam : real_spectrum(T)) out.push_back(lam);
        return out;
      };
      std::vector<std::string> fields;
      const std::string off_name = half_chart ? "a" : "alpha";
      const std::string diag_name = half_chart ? "b" : "beta";
      for (int i = 1; i < n; ++i) fields.push_back(off_name + std::to_string(i));
      for (int i = 1; i <= n; ++i) fields.push_back(diag_name + std::to_string(i));
      return run_sweep(s0, [](const gtl::FlaschkaState& s) { return gtl::rhs(s); }, mon,
                       fields, monitor_names_for(n), opt);
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError{2, e.what()};
  }
  throw CliError{2, "simulate: unknown flow '" + opt.flow +
                        "' (expected toda, flaschka, gtl, n3, n3q, or cdw)"};
}

// ----------------------------- check -----------------------------

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_check(const std::string& check_csv, bool check_given, unsigned seed,
              const std::string& out_path) {
  std::vector<std::string> names =
      check_given ? split_list(check_csv) : gtl::check_suite_names();
  gtl::CheckReport report;
  try {
    report = gtl::run_checks(names, seed);
  } catch (const std::invalid_argument& e) {
    throw CliError{2, e.what()};
  }
  write_text(out_path, gtl::to_json(report).dump(2) + "\n");
  std::cout << gtl::render_check_lines(report);
  std::cout << (report.all_passed() ? "all asserted checks passed\n"
                                    : "asserted check failure\n");
  return report.all_passed() ? 0 : 1;
}

// ----------------------------- spectrum -----------------------------

int cmd_spectrum(const std::string& state_path, const std::string& out_path) {
  const json doc = load_json_file(state_path);
  Eigen::MatrixXd L;
  try {
    const std::string kind = gtl::state_kind(doc);
    if (kind == "n3")
      L = gtl::build_lax(gtl::n3_from_json(doc)).L;
    else if (kind == "gtl")
      L = gtl::build_lax(gtl::gtl_from_json(doc)).L;
    else if (kind == "n3q")
      L = gtl::build_lax(gtl::n3q_from_json(doc)).L;
    else if (kind == "cdw")
      L = gtl::build_lax(gtl::cdw_from_json(doc)).L;
    else if (kind == "pq")
      L = gtl::build_lax(gtl::pq_from_json(doc)).L;
    else if (kind == "toda") {
      const gtl::FlaschkaState fs =
          gtl::flaschka_from_qp(gtl::toda_from_json(doc), gtl::FlaschkaVariant::a_b);
      L = tridiag(fs.first, fs.second);
    } else if (kind == "flaschka") {
      gtl::FlaschkaState fs = gtl::flaschka_from_json(doc);
      if (fs.variant == gtl::FlaschkaVariant::alpha_beta) {
        for (auto& x : fs.first) {
          if (x <= 0.0)
            throw CliError{2, "spectrum: the unscaled chart needs positive off-diagonal "
                              "entries to build the symmetric matrix"};
          x = 0.5 * std::sqrt(x);
        }
        for (auto& x : fs.second) x = -0.5 * x;
      }
      L = tridiag(fs.first, fs.second);
    } else {
      throw CliError{2, "spectrum: unsupported state kind '" + kind + "'"};
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError{2, e.what()};
  }
  const gtl::Spectrum sp = gtl::spectrum(L);
  ojson arr = ojson::array();
  if (sp.is_real(1e-9)) {
    for (const auto& z : sp.eigenvalues) arr.push_back(z.real());
  } else {
    for (const auto& z : sp.eigenvalues) arr.push_back(ojson::array({z.real(), z.imag()}));
  }
  const std::string text = arr.dump() + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
  return 0;
}

// ----------------------------- tau-check -----------------------------

std::string residual_csv_columns(const std::vector<std::string>& names,
                                 const std::vector<gtl::SeriesFn>& cols) {
  std::size_t order = cols.front().order();
  for (const auto& c : cols) order = std::min(order, c.order());
  std::string csv = "order";
  for (const auto& n : names) csv += "," + n;
  csv += "\n";
  for (std::size_t k = 0; k <= order; ++k) {
    csv += std::to_string(k);
    for (const auto& c : cols) csv += "," + fmt17(c[k]);
    csv += "\n";
  }
  return csv;
}

int cmd_tau_check(const std::string& state_path, const std::string& out_path) {
  const json doc = load_json_file(state_path);
  std::string csv;
  try {
    const std::string kind = gtl::state_kind(doc);
    if (kind == "tau_triple") {
      const gtl::TauTriple tt = gtl::tau_triple_from_json(doc);
      const auto rd = gtl::gtl_tau_residual_59(tt);
      const auto ri = gtl::gtl_tau_residual(tt);
      csv = residual_csv_columns(
          {"sum_line", "coupling_line", "corner_differential", "corner_integrated"},
          {rd[0], rd[1], rd[2], ri[2]});
    } else if (kind == "tau_chain") {
      const double t0 = doc.value("t0", 0.0);
      auto series = [&](const char* key) {
        return gtl::SeriesFn(t0, gtl::detail::get_vec(doc, key));
      };
      const gtl::SeriesFn tm = series("tau_m"), tc = series("tau"), tp = series("tau_p");
      std::vector<std::string> variants = {"standard", "as_printed", "sinh_form"};
      if (doc.contains("variants"))
        variants = doc.at("variants").get<std::vector<std::string>>();
      if (variants.empty()) throw CliError{2, "tau-check: empty variant list"};
      std::vector<gtl::SeriesFn> cols;
      for (const auto& v : variants) {
        if (v == "standard")
          cols.push_back(gtl::toda_bilinear_residual(tm, tc, tp, gtl::BilinearVariant::standard));
        else if (v == "as_printed")
          cols.push_back(
              gtl::toda_bilinear_residual(tm, tc, tp, gtl::BilinearVariant::as_printed));
        else if (v == "sinh_form")
          cols.push_back(gtl::sinh_form_residual(tm, tc, tp));
        else
          throw CliError{2, "tau-check: unknown variant '" + v + "'"};
      }
      csv = residual_csv_columns(variants, cols);
    } else {
      throw CliError{2, "tau-check: expected kind 'tau_triple' or 'tau_chain', got '" + kind +
                            "'"};
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError{2, e.what()};
  }
  if (out_path.empty())
    std::cout << csv;
  else
    write_text(out_path, csv);
  return 0;
}

// ----------------------------- errata -----------------------------

int cmd_errata(const std::string& out_stem) {
  const std::vector<gtl::ErratumEntry> entries = gtl::errata_entries();
  ojson arr = ojson::array();
  for (const auto& e : entries) arr.push_back(gtl::to_json(e));
  const std::string table = gtl::render_errata_table(entries);
  write_text(out_stem + ".json", arr.dump(2) + "\n");
  write_text(out_stem + ".txt", table);
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"gtl_lab — generalized open Toda lattice laboratory"};
  app.require_subcommand(1);

  SimOptions sim;
  sim.seed = 20260814u;
  CLI::App* simulate = app.add_subcommand("simulate", "integrate a flow and monitor invariants");
  simulate->add_option("--flow", sim.flow, "flow id: toda, flaschka, gtl, n3, n3q, cdw")
      ->required();
  simulate->add_option("--state", sim.state_path, "initial state JSON file")->required();
  simulate->add_option("--t-end", sim.t_end, "integration end time");
  simulate->add_option("--dt", sim.dt, "fixed step size");
  simulate->add_flag("--rk45", sim.rk45, "use the adaptive embedded 5(4) pair");
  simulate->add_option("--atol", sim.atol, "absolute tolerance for --rk45");
  simulate->add_option("--rtol", sim.rtol, "relative tolerance for --rk45");
  simulate->add_option("--seed", sim.seed, "seed for sweep perturbations");
  simulate->add_option("--out", sim.out_path, "trajectory CSV path (stats JSON sits next to it)");
  simulate->add_flag("--as-printed", sim.as_printed,
                     "for --flow gtl, also print the printed-vs-oracle right-hand-side table");
  simulate->add_option("--sweep", sim.sweep, "run this many perturbed trajectories concurrently");
  simulate->add_option("--max-drift", sim.max_drift,
                       "hard bound on any monitored drift; exceeding it exits 1");

  std::string check_csv;
  unsigned check_seed = 20260814u;
  std::string check_out = "check_report.json";
  CLI::App* check = app.add_subcommand("check", "run verification suites and write a report");
  CLI::Option* check_opt = check->add_option(
      "--check", check_csv, "comma-separated suites: lax,reduction,poisson,involution,rmatrix,bilinear");
  check->add_option("--seed", check_seed, "seed for randomized property checks");
  check->add_option("--out", check_out, "report JSON path");

  std::string spec_state, spec_out;
  CLI::App* spectrum = app.add_subcommand("spectrum", "print sorted eigenvalues of a state's matrix");
  spectrum->add_option("--state", spec_state, "state JSON file")->required();
  spectrum->add_option("--out", spec_out, "optional JSON output path");

  std::string tau_state, tau_out;
  CLI::App* tau = app.add_subcommand("tau-check", "per-coefficient residual tables for tau data");
  tau->add_option("--state", tau_state, "tau JSON file (kind tau_triple or tau_chain)")->required();
  tau->add_option("--out", tau_out, "CSV output path (stdout when omitted)");

  std::string errata_out = "errata";
  CLI::App* errata = app.add_subcommand("errata", "emit the printed-vs-oracle discrepancy ledger");
  errata->add_option("--out", errata_out, "output stem for <stem>.json and <stem>.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      sim.seed = resolve_seed(sim.seed);
      return cmd_simulate(sim);
    }
    if (check->parsed()) return cmd_check(check_csv, check_opt->count() > 0, resolve_seed(check_seed), check_out);
    if (spectrum->parsed()) return cmd_spectrum(spec_state, spec_out);
    if (tau->parsed()) return cmd_tau_check(tau_state, tau_out);
    if (errata->parsed()) return cmd_errata(errata_out);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.msg << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
