#include "aseplab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "aseplab/airy.hpp"
#include "aseplab/asep.hpp"
#include "aseplab/errors.hpp"
#include "aseplab/exact_series.hpp"
#include "aseplab/harness.hpp"
#include "aseplab/parallel.hpp"
#include "aseplab/qmath.hpp"
#include "aseplab/rng.hpp"

namespace aseplab::cli {

using nlohmann::json;

namespace {

constexpr const char* kTauWarning = "tau_small_check failed, convergence not guaranteed";

// Shortest round-trip form; integral values keep a trailing ".0".
std::string num(double v) { return json(v).dump(); }

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + '\n';
}

json config_json(const RunConfig& c) {
  json j = {{"command", c.command}, {"tau", c.tau}, {"seed", c.seed}, {"format", c.format}};
  const std::string& k = c.command;
  if (k == "simulate") j.update({{"t", c.t}, {"x", c.x}, {"npaths", c.npaths}, {"steps", c.steps}});
  if (k == "moment") j.update({{"m", c.m}, {"t", c.t}, {"x", c.x}, {"nodes", c.nodes}, {"npaths", c.npaths}});
  if (k == "laplace") {
    j.update({{"t", c.t}, {"kmax", c.kmax}, {"nodes", c.nodes}, {"path", c.path}, {"npaths", c.npaths}});
    if (c.e)
      j.update({{"x", c.x}, {"e", *c.e}});
    else
      j.update({{"alpha", c.alpha}, {"rtilde", c.rtilde}});
  }
  if (k == "airy21") j.update({{"t1", c.t1}, {"y", c.y}, {"kmax", c.kmax}, {"all_orders", c.all_orders}});
  if (k == "tw") j.update({{"beta", c.beta}, {"s", c.s}});
  if (k == "limit")
    j.update({{"alpha", c.alphas}, {"rtilde", c.rtildes}, {"tgrid", c.tgrid}, {"kmax", c.kmax}, {"npaths", c.npaths}});
  if (k == "validate") j["suite"] = c.suite;
  return j;
}

json meta_json(const RunConfig& c, const json& extra = json::object()) {
  json m = {{"program", "aseplab"}, {"version", kVersion}, {"config", config_json(c)}};
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  return m;
}

std::string csv_meta(const json& meta) { return "# " + meta.dump() + "\n"; }

void warn(std::ostream& err, const std::string& msg) { err << json{{"warning", msg}}.dump() << '\n'; }

asep::AsepParams model(const RunConfig& c) { return asep::AsepParams::from_tau(c.tau); }

std::string cmd_simulate(const RunConfig& c) {
  const asep::AsepParams p = model(c);
  const asep::SimWindow w = asep::SimWindow::for_time(c.t);
  const json meta = meta_json(c, {{"window", {w.left, w.right}}});
  if (c.steps > 0) return json{{"meta", meta}}.dump() + "\n" + asep::trajectory_jsonl(c.t, c.steps, p, w, c.seed);
  const std::size_t n = c.npaths > 0 ? c.npaths : 1;
  const std::vector<long> counts = asep::sample_particle_counts(c.t, c.x, p, w, n, c.seed);
  if (c.format == "json") {
    json rows = json::array();
    for (long v : counts) rows.push_back({{"n_x", v}, {"height", 2 * v - c.x}});
    return json{{"meta", meta}, {"paths", rows}}.dump(2) + "\n";
  }
  std::string s = csv_meta(meta) + "path,n_x,height\n";
  for (std::size_t i = 0; i < counts.size(); ++i)
    s += join({std::to_string(i), std::to_string(counts[i]), std::to_string(2 * counts[i] - c.x)});
  return s;
}

std::string cmd_moment(const RunConfig& c) {
  const asep::AsepParams p = model(c);
  series::CircleQuad q;
  q.nodes = c.nodes;
  q.seed = c.seed;
  series::MomentResult r;
  if (c.m == 0)
    r.value = 1.0;
  else
    r = series::moment_detailed(c.m, c.t, c.x, p, q);
  std::optional<asep::McEstimate> mc;
  if (c.npaths > 0) {
    const qmath::Tau tau(c.tau);
    const int m = c.m, x = c.x;
    mc = asep::mc_expectation([&](const asep::AsepState& s) { return tau.pow(m * asep::particle_count(s, x)); }, c.t, p,
                              asep::SimWindow::for_time(c.t), c.npaths, c.seed);
  }
  const json meta = meta_json(c, {{"tolerances", {{"imag_check", "1e-6 relative"}}}});
  if (c.format == "json") {
    json j = {{"meta", meta},
              {"value", r.value},
              {"imag_residual", r.imag_residual},
              {"quad_error", r.quad_error}};
    if (mc) j["mc"] = {{"mean", mc->mean}, {"std_error", mc->std_error}, {"n_paths", mc->n_paths}};
    return j.dump(2) + "\n";
  }
  std::string s = csv_meta(meta) + "m,t,x,value,imag_residual,quad_error,mc,mc_stderr\n";
  s += join({std::to_string(c.m), num(c.t), std::to_string(c.x), num(r.value), num(r.imag_residual), num(r.quad_error),
             mc ? num(mc->mean) : "", mc ? num(mc->std_error) : ""});
  return s;
}

std::string cmd_laplace(const RunConfig& c, std::ostream& err) {
  const asep::AsepParams p = model(c);
  const series::TauCondition tc = series::tau_small_check(qmath::Tau(c.tau));
  json extra = {{"tau_small_check", {{"rho", tc.rho}, {"ok", tc.ok}}}};
  if (!tc.ok) {
    extra["warning"] = kTauWarning;
    warn(err, kTauWarning);
  }
  double time = c.t, e = 0.0;
  int x = c.x;
  if (c.e) {
    e = *c.e;
  } else {
    const harness::ScaledQuery sq{c.t, c.alpha, c.rtilde};
    time = sq.time(p);
    x = sq.x();
    e = harness::zeta_exponent(sq);
  }
  extra["model"] = {{"time", time}, {"x", x}, {"e", e}};
  series::LaplaceQuad q;
  q.a.w_nodes = q.a.z_nodes = c.nodes;
  q.a.seed = q.b.seed = c.seed;
  const harness::PathChoice pc = harness::parse_path(c.path);
  const harness::PrelimitOptions defaults;
  const series::Path path = pc == harness::PathChoice::A   ? series::Path::A
                            : pc == harness::PathChoice::B ? series::Path::B
                            : (p.gamma * time >= defaults.path_b_above ? series::Path::B : series::Path::A);
  const series::SeriesResult r = series::tau_laplace(series::LogZeta::from_exponent(e), time, x, p, c.kmax, path, q);
  if (!r.converged) warn(err, "series truncation test not met");
  std::optional<asep::McEstimate> mc;
  if (c.npaths > 0) {
    const qmath::Tau tau(c.tau);
    const std::vector<long> n =
        asep::sample_particle_counts(time, x, p, asep::SimWindow::for_time(time), c.npaths, c.seed);
    std::vector<double> w(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) w[i] = series::laplace_weight(n[i], e, tau);
    mc = asep::summarize(w, c.seed);
  }
  const json meta = meta_json(c, extra);
  if (c.format == "json") {
    json j = {{"meta", meta}, {"series", r.to_json()}};
    if (mc) j["mc"] = {{"mean", mc->mean}, {"std_error", mc->std_error}, {"n_paths", mc->n_paths}};
    return j.dump(2) + "\n";
  }
  std::string s = csv_meta(meta) + "k,re,im,abs,quad_error,method\n";
  for (const auto& t : r.terms)
    s += join({std::to_string(t.k), num(t.value.real()), num(t.value.imag()), num(std::abs(t.value)), num(t.quad_error),
               t.method});
  s += join({"total", num(r.total.real()), num(r.total.imag()), num(std::abs(r.total)), "", r.converged ? "converged" : "unconverged"});
  if (mc) s += join({"mc", num(mc->mean), "", "", num(mc->std_error), std::to_string(mc->n_paths)});
  return s;
}

std::string cmd_airy21(const RunConfig& c, std::ostream& err) {
  const int k = c.all_orders ? airy::kAllTerms : c.kmax;
  std::vector<airy::CdfRow> rows;
  json jrows = json::array();
  bool all_conv = true;
  for (double t1 : c.t1)
    for (double y : c.y) {
      const airy::Airy21Result r = airy::airy21_cdf({t1, y}, k);
      rows.push_back({t1, y, r.value, r.k_max, r.est_error});
      all_conv = all_conv && r.converged;
      jrows.push_back({{"t1", t1}, {"y", y}, {"cdf", r.value}, {"raw", r.raw}, {"k_max", r.k_max},
                       {"est_error", r.est_error}, {"terms", r.terms}, {"converged", r.converged}});
    }
  if (!all_conv) warn(err, "Airy21 series terms did not decay at some points");
  const airy::Airy21Quad q;
  const json meta = meta_json(c, {{"quadrature", {{"order", q.order}, {"panel", q.panel}, {"log_cut", q.log_cut}}}});
  if (c.format == "json") return json{{"meta", meta}, {"rows", jrows}}.dump(2) + "\n";
  std::ostringstream os;
  os << csv_meta(meta);
  airy::write_cdf_csv(os, rows);
  return os.str();
}

std::string cmd_tw(const RunConfig& c) {
  const airy::FredholmQuad q;
  std::vector<std::pair<double, double>> vals;
  for (double s : c.s) vals.emplace_back(s, c.beta == 1 ? airy::tw1_cdf(s, q) : airy::tw2_cdf(s, q));
  const json meta = meta_json(c, {{"quadrature", {{"n_nodes", q.n_nodes}, {"domain_length", q.domain_length},
                                                   {"stability_tol", q.stability_tol}}}});
  if (c.format == "json") {
    json rows = json::array();
    for (auto [s, v] : vals) rows.push_back({{"s", s}, {"cdf", v}});
    return json{{"meta", meta}, {"rows", rows}}.dump(2) + "\n";
  }
  std::string out = csv_meta(meta) + "s,cdf,beta\n";
  for (auto [s, v] : vals) out += join({num(s), num(v), std::to_string(c.beta)});
  return out;
}

std::string cmd_limit(const RunConfig& c, std::ostream& err) {
  harness::GapOptions opt;
  opt.mc_paths = c.npaths;
  opt.seed = c.seed;
  opt.prelimit.quad.a.seed = opt.prelimit.quad.b.seed = c.seed;
  const std::vector<harness::GapReport> reps = harness::gap_grid(c.alphas, c.rtildes, c.tgrid, c.kmax, model(c), opt);
  for (const auto& r : reps)
    if (!r.nonincreasing) warn(err, "gap not nonincreasing at alpha=" + num(r.alpha) + " r_tilde=" + num(r.r_tilde));
  const json meta = meta_json(c, {{"note", "prelimit values are smoothed CDF evaluations; indicator width t^{-1/3}"}});
  if (c.format == "json") return json{{"meta", meta}, {"reports", harness::gap_json(reps)}}.dump(2) + "\n";
  std::ostringstream os;
  os << csv_meta(meta);
  harness::write_gap_csv(os, reps);
  return os.str();
}

std::string cmd_validate(const RunConfig& c, bool& pass) {
  const std::vector<CheckResult> res = run_suite(c.suite, c.seed);
  pass = true;
  for (const auto& r : res) pass = pass && r.pass;
  const json meta = meta_json(c);
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& r : res) rows.push_back({{"name", r.name}, {"pass", r.pass}, {"worst", r.worst}, {"tolerance", r.tolerance}});
    return json{{"meta", meta}, {"checks", rows}, {"pass", pass}}.dump(2) + "\n";
  }
  std::string s = csv_meta(meta) + "name,pass,worst,tolerance\n";
  for (const auto& r : res) s += join({r.name, r.pass ? "true" : "false", num(r.worst), num(r.tolerance)});
  return s;
}

// Checks shared by the validate command.

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult check_cauchy(qmath::CauchyVariant v, std::uint64_t seed) {
  CheckResult r{v == qmath::CauchyVariant::single ? "cauchy_single" : "cauchy_double", true, 0.0, 1e-9};
  RandomStream rng(seed, v == qmath::CauchyVariant::single ? 1 : 2);
  auto draw = [&] { return std::polar(0.3 + 0.6 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform()); };
  for (int k = 1; k <= 6; ++k)
    for (int trial = 0; trial < 100;) {
      std::vector<cplx> x(k), y(k);
      for (auto& a : x) a = draw();
      for (auto& b : y) b = draw() * 0.5;
      bool ok = true;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          ok = ok && std::abs(x[i] - y[j]) > 0.1 && std::abs(1.0 - x[i] * y[j]) > 0.1;
      if (!ok) continue;
      ++trial;
      qmath::ComplexMatrix m(k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          m(i, j) = v == qmath::CauchyVariant::single ? 1.0 / (x[i] - y[j]) : 1.0 / ((x[i] - y[j]) * (1.0 - x[i] * y[j]));
      r.worst = std::max(r.worst, rel(qmath::det_complex(m), qmath::cauchy_closed_form(x, y, v)));
    }
  r.pass = r.worst < r.tolerance;
  return r;
}

CheckResult check_qexp() {
  CheckResult r{"qexp_product_series", true, 0.0, 1e-10};
  for (double tv : {0.01, 0.1, 0.5}) {
    const qmath::Tau tau(tv);
    for (int a = 1; a <= 9; ++a)
      for (int ph = 0; ph < 8; ++ph) {
        const cplx x = std::polar(0.1 * a, 2.0 * std::numbers::pi * ph / 8.0);
        r.worst = std::max(r.worst, rel(qmath::qexp(x, tau, qmath::QExpMode::series),
                                        qmath::qexp(x, tau, qmath::QExpMode::product)));
      }
  }
  r.pass = r.worst < r.tolerance;
  return r;
}

CheckResult check_mellin_barnes() {
  CheckResult r{"mellin_barnes_k1", true, 0.0, 1e-6};
  const asep::AsepParams p = asep::AsepParams::from_tau(0.005);
  const qmath::Tau tau(p.tau);
  const series::LogZeta z = series::LogZeta::from_value(-0.5, tau);
  for (double t : {0.25, 0.5, 1.0})
    for (int x : {-1, 0, 2}) {
      const cplx h = series::h_k_pathA(1, z, t, x, p).value;
      const cplx n = series::mellin_barnes_k1_nsum(z, t, x, p);
      r.worst = std::max(r.worst, rel(h, n));
    }
  r.pass = r.worst < r.tolerance;
  return r;
}

std::vector<CheckResult> airy_checks() {
  std::vector<CheckResult> out;
  CheckResult ai0{"airy_ai_zero", true, std::abs(airy::airy_ai(0.0) - 0.35502805388781723926), 1e-15};
  ai0.pass = ai0.worst < ai0.tolerance;
  out.push_back(ai0);
  CheckResult dual{"airy_ai_series_vs_contour", true, 0.0, 1e-9};
  for (double x : {-8.0, -4.0, 0.5, 4.0, 8.0})
    dual.worst = std::max(dual.worst, std::abs(airy::airy_ai_series(x) - airy::airy_ai_contour(x)));
  dual.pass = dual.worst < dual.tolerance;
  out.push_back(dual);
  CheckResult f2{"tw2_median", true, std::abs(airy::tw2_cdf(-1.8047) - 0.5), 2e-3};
  f2.pass = f2.worst < f2.tolerance;
  out.push_back(f2);
  CheckResult goe{"goe_limit_large_t1", true, 0.0, 1e-6};
  for (double y : {-1.0, 0.0, 1.0})
    goe.worst = std::max(goe.worst, std::abs(airy::airy21_cdf({8.0, y}, airy::kAllTerms).value -
                                             airy::tw1_cdf(std::cbrt(4.0) * y)));
  goe.pass = goe.worst < goe.tolerance;
  out.push_back(goe);
  return out;
}

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> cmds = {"simulate", "moment", "laplace", "airy21", "tw", "limit", "validate"};
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) throw ConfigError("unknown command '" + command + "'");
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("tau must lie in (0, 1)");
  if (kmax < 1 || kmax > 4) throw ConfigError("kmax must lie in [1, 4]");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (threads < 0) throw ConfigError("threads must be nonnegative");
  if ((command == "simulate" || command == "moment") && !(t >= 0.0)) throw ConfigError("t must be nonnegative");
  if (command == "moment" && (m < 0 || m > 6)) throw ConfigError("m must lie in [0, 6]");
  if (command == "simulate" && npaths == 0 && steps == 0) throw ConfigError("npaths must be at least 1");
  if (command == "tw" && beta != 1 && beta != 2) throw ConfigError("beta must be 1 or 2");
  static const std::vector<std::string> suites = {"identities", "cauchy", "qexp", "mellin_barnes", "airy", "all"};
  if (command == "validate" && std::find(suites.begin(), suites.end(), suite) == suites.end())
    throw ConfigError("suite must be one of identities, cauchy, qexp, mellin_barnes, airy, all");
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const bool ident = suite == "identities" || suite == "all";
  if (ident || suite == "cauchy") {
    out.push_back(check_cauchy(qmath::CauchyVariant::single, seed));
    out.push_back(check_cauchy(qmath::CauchyVariant::double_, seed));
  }
  if (ident || suite == "qexp") out.push_back(check_qexp());
  if (ident || suite == "mellin_barnes") out.push_back(check_mellin_barnes());
  if (suite == "airy" || suite == "all") {
    const auto a = airy_checks();
    out.insert(out.end(), a.begin(), a.end());
  }
  if (out.empty()) throw ConfigError("unknown suite '" + suite + "'");
  return out;
}

std::optional<int> parse(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for half-flat ASEP and the Airy_{2->1} distribution", "aseplab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  double e_value = 0.0;
  std::vector<CLI::Option*> e_opts;

  auto common = [&](CLI::App* s) {
    s->add_option("--tau", cfg.tau, "tau = p/q in (0,1)")->capture_default_str();
    s->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    s->add_option("--out", cfg.out_path, "output file (stdout when absent)");
    s->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    s->add_option("--threads", cfg.threads, "worker cap (default: ASEPLAB_THREADS or all cores)");
  };

  auto* sim = app.add_subcommand("simulate", "simulate half-flat ASEP and record N_x(t)");
  common(sim);
  sim->add_option("--t", cfg.t, "time")->capture_default_str();
  sim->add_option("--x", cfg.x, "site")->capture_default_str();
  sim->add_option("--npaths", cfg.npaths, "number of paths");
  sim->add_option("--steps", cfg.steps, "write a JSONL trajectory of one path with this many snapshots");

  auto* mom = app.add_subcommand("moment", "E[tau^{m N_x(t)}] from the contour formula");
  common(mom);
  mom->add_option("--m", cfg.m, "moment order in [0, 6]")->capture_default_str();
  mom->add_option("--t", cfg.t, "time")->capture_default_str();
  mom->add_option("--x", cfg.x, "site")->capture_default_str();
  mom->add_option("--nodes", cfg.nodes, "trapezoid nodes per circle")->capture_default_str();
  mom->add_option("--npaths", cfg.npaths, "Monte Carlo paths for a comparison column (0 skips)");

  auto* lap = app.add_subcommand("laplace", "tau-Laplace transform E[e_tau(zeta tau^{N_x(t)})]");
  common(lap);
  lap->add_option("--t", cfg.t, "model time with --e, scaled time otherwise")->capture_default_str();
  lap->add_option("--x", cfg.x, "site (with --e)")->capture_default_str();
  e_opts.push_back(lap->add_option("--e", e_value, "zeta exponent: zeta = -(1-tau)^{-1} tau^e"));
  lap->add_option("--alpha", cfg.alpha, "scaled site")->capture_default_str();
  lap->add_option("--rtilde", cfg.rtilde, "scaled level")->capture_default_str();
  lap->add_option("--kmax", cfg.kmax, "series terms in [1, 4]")->capture_default_str();
  lap->add_option("--nodes", cfg.nodes, "path A nodes per circle")->capture_default_str();
  lap->add_option("--path", cfg.path, "A, B or auto")->check(CLI::IsMember({"A", "B", "auto"}))->capture_default_str();
  lap->add_option("--npaths", cfg.npaths, "Monte Carlo paths for a comparison row (0 skips)");

  auto* ai = app.add_subcommand("airy21", "Airy_{2->1} one-point distribution table");
  common(ai);
  ai->add_option("--t1", cfg.t1, "time arguments")->delimiter(',')->capture_default_str();
  ai->add_option("--y", cfg.y, "levels")->delimiter(',')->capture_default_str();
  ai->add_option("--kmax", cfg.kmax, "series terms in [1, 4]")->capture_default_str();
  ai->add_flag("--all-orders", cfg.all_orders, "use the full determinant instead of the truncated series");

  auto* tw = app.add_subcommand("tw", "Tracy-Widom distribution functions");
  common(tw);
  tw->add_option("--beta", cfg.beta, "1 (GOE) or 2 (GUE)")->capture_default_str();
  tw->add_option("--s", cfg.s, "arguments in [-10, 6]")->delimiter(',')->capture_default_str();

  auto* lim = app.add_subcommand("limit", "gap between the prelimit CDF and the Airy_{2->1} target");
  common(lim);
  lim->add_option("--alpha", cfg.alphas, "alpha grid")->delimiter(',')->capture_default_str();
  lim->add_option("--rtilde", cfg.rtildes, "r_tilde grid (increasing)")->delimiter(',')->capture_default_str();
  lim->add_option("--tgrid", cfg.tgrid, "scaled times (increasing)")->delimiter(',')->capture_default_str();
  lim->add_option("--kmax", cfg.kmax, "series terms in [1, 4]")->capture_default_str();
  lim->add_option("--npaths", cfg.npaths, "Monte Carlo paths per point (0 skips)");

  auto* val = app.add_subcommand("validate", "run identity checks");
  common(val);
  val->add_option("--suite", cfg.suite, "identities, cauchy, qexp, mellin_barnes, airy or all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : exit_code_for(ErrorCategory::config);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  for (CLI::Option* o : e_opts)
    if (o->count() > 0) cfg.e = e_value;
  return std::nullopt;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.threads > 0) parallel::set_max_threads(cfg.threads);
    std::string payload;
    bool pass = true;
    const std::string& c = cfg.command;
    if (c == "simulate") payload = cmd_simulate(cfg);
    if (c == "moment") payload = cmd_moment(cfg);
    if (c == "laplace") payload = cmd_laplace(cfg, err);
    if (c == "airy21") payload = cmd_airy21(cfg, err);
    if (c == "tw") payload = cmd_tw(cfg);
    if (c == "limit") payload = cmd_limit(cfg, err);
    if (c == "validate") payload = cmd_validate(cfg, pass);
    if (cfg.out_path.empty()) {
      out << payload;
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) throw ConfigError("cannot open output file '" + cfg.out_path + "'");
      f << payload;
      if (!f) throw ConfigError("failed writing '" + cfg.out_path + "'");
    }
    if (!pass) {
      err << json{{"error", "validation"}, {"message", "one or more checks failed"}}.dump() << '\n';
      return exit_code_for(ErrorCategory::quadrature);
    }
    return 0;
  } catch (const Error& ex) {
    err << json{{"error", category_name(ex.category())}, {"message", ex.what()}}.dump() << '\n';
    return exit_code_for(ex.category());
  } catch (const std::exception& ex) {
    err << json{{"error", "numeric_range"}, {"message", ex.what()}}.dump() << '\n';
    return exit_code_for(ErrorCategory::numeric_range);
  }
}

int main_entry(int argc, const char* const* argv) {
  RunConfig cfg;
  if (auto code = parse(argc, argv, cfg, std::cout, std::cerr)) return *code;
  if (cfg.threads == 0) {
    const int env = parallel::threads_from_env();
    if (env > 0) parallel::set_max_threads(env);
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace aseplab::cli
