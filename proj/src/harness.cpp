#include "aseplab/harness.hpp"

#include <cmath>
#include <cstdio>

#include "aseplab/errors.hpp"
#include "aseplab/qmath.hpp"

namespace aseplab::harness {

int ScaledQuery::x() const { return point().x; }

double ScaledQuery::time(const AsepParams& params) const { return t / params.gamma; }

series::ScaledPoint ScaledQuery::point() const { return series::scaled_point(t, alpha, r_tilde); }

double zeta_exponent(const ScaledQuery& sq) { return sq.point().e; }

series::LogZeta zeta(const ScaledQuery& sq) { return series::LogZeta::from_exponent(zeta_exponent(sq)); }

const char* path_name(PathChoice p) {
  switch (p) {
    case PathChoice::A:
      return "A";
    case PathChoice::B:
      return "B";
    default:
      return "auto";
  }
}

PathChoice parse_path(const std::string& s) {
  if (s == "A" || s == "a") return PathChoice::A;
  if (s == "B" || s == "b") return PathChoice::B;
  if (s == "auto") return PathChoice::automatic;
  throw ConfigError("path must be A, B or auto");
}

namespace {

void require_model(const AsepParams& params) {
  if (!(params.p > 0.0)) throw ConfigError("the limit experiment needs p > 0");
  if (!series::tau_small_check(qmath::Tau(params.tau)).ok)
    throw ConfigError("tau fails the small-tau condition (rho >= 1)");
}

}  // namespace

PrelimitValue prelimit_cdf(const ScaledQuery& sq, const AsepParams& params, int k_max, PathChoice path,
                           const PrelimitOptions& opt) {
  require_model(params);
  if (!(sq.t > 0.0)) throw DomainError("scaled time must be positive");
  const series::Path p = path == PathChoice::A   ? series::Path::A
                         : path == PathChoice::B ? series::Path::B
                         : (sq.t >= opt.path_b_above ? series::Path::B : series::Path::A);
  PrelimitValue v;
  v.series = series::tau_laplace(zeta(sq), sq.time(params), sq.x(), params, k_max, p, opt.quad);
  v.value = v.series.real_total();
  for (const auto& term : v.series.terms) v.quad_error += term.quad_error;
  return v;
}

asep::McEstimate mc_prelimit_cdf(const ScaledQuery& sq, const AsepParams& params, std::size_t n_paths,
                                 std::uint64_t seed) {
  if (n_paths < 1) throw ConfigError("n_paths must be at least 1");
  const double time = sq.time(params);
  const std::vector<long> n =
      asep::sample_particle_counts(time, sq.x(), params, asep::SimWindow::for_time(time), n_paths, seed);
  const qmath::Tau tau(params.tau);
  const double e = zeta_exponent(sq);
  std::vector<double> w(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) w[i] = series::laplace_weight(n[i], e, tau);
  return asep::summarize(w, seed);
}

airy::Airy21Query airy_target_point(double alpha, double r_tilde) {
  const double t1 = alpha / std::cbrt(2.0);
  const double y1 = std::cbrt(16.0) * r_tilde + (alpha <= 0.0 ? alpha * alpha / std::cbrt(4.0) : 0.0);
  return {t1, y1};
}

GapReport limit_gap(double alpha, double r_tilde, const std::vector<double>& t_grid, int k_max,
                    const AsepParams& params, const GapOptions& opt) {
  require_model(params);
  if (t_grid.empty()) throw ConfigError("t grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw ConfigError("t grid must be increasing");
  GapReport rep;
  rep.alpha = alpha;
  rep.r_tilde = r_tilde;
  rep.k_max = k_max;
  rep.tau = params.tau;
  rep.t_grid = t_grid;
  rep.options = opt;
  const airy::Airy21Query tq = airy_target_point(alpha, r_tilde);
  const airy::Airy21Result target = airy::airy21_cdf(tq, k_max, opt.airy);
  rep.target = target.value;
  rep.target_full = airy::airy21_cdf(tq, airy::kAllTerms, opt.airy).value;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const ScaledQuery sq{t_grid[i], alpha, r_tilde};
    const PrelimitValue pv = prelimit_cdf(sq, params, k_max, PathChoice::automatic, opt.prelimit);
    GapRow row;
    row.t = sq.t;
    row.alpha = alpha;
    row.r_tilde = r_tilde;
    row.x = sq.x();
    row.e = zeta_exponent(sq);
    row.prelimit = pv.value;
    row.prelimit_error = pv.quad_error;
    row.target = target.value;
    row.target_error = target.est_error;
    row.gap = std::abs(pv.value - target.value);
    row.path = pv.series.path;
    row.series_converged = pv.series.converged;
    if (opt.mc_paths > 0) {
      const asep::McEstimate mc = mc_prelimit_cdf(sq, params, opt.mc_paths, opt.seed + i);
      row.has_mc = true;
      row.mc = mc.mean;
      row.mc_stderr = mc.std_error;
    }
    rep.rows.push_back(row);
  }
  rep.nonincreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].gap > rep.rows[i - 1].gap) rep.nonincreasing = false;
  return rep;
}

std::vector<GapReport> gap_grid(const std::vector<double>& alphas, const std::vector<double>& r_tildes,
                                const std::vector<double>& t_grid, int k_max, const AsepParams& params,
                                const GapOptions& opt) {
  for (std::size_t j = 1; j < r_tildes.size(); ++j)
    if (!(r_tildes[j] > r_tildes[j - 1])) throw ConfigError("r_tilde grid must be increasing");
  std::vector<GapReport> out;
  for (double a : alphas)
    for (double r : r_tildes) out.push_back(limit_gap(a, r, t_grid, k_max, params, opt));
  const std::size_t nr = r_tildes.size();
  for (std::size_t ia = 0; ia < alphas.size(); ++ia)
    for (std::size_t j = 1; j < nr; ++j) {
      const GapReport& lo = out[ia * nr + j - 1];
      const GapReport& hi = out[ia * nr + j];
      if (hi.target < lo.target) throw QuadratureError("Airy21 target not monotone in r_tilde");
      for (std::size_t i = 0; i < t_grid.size(); ++i)
        if (hi.rows[i].prelimit < lo.rows[i].prelimit) throw QuadratureError("prelimit value not monotone in r_tilde");
    }
  return out;
}

nlohmann::json GapReport::to_json() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["r_tilde"] = r_tilde;
  j["k_max"] = k_max;
  j["tau"] = tau;
  j["t_grid"] = t_grid;
  const airy::Airy21Query tq = airy_target_point(alpha, r_tilde);
  j["target"] = {{"t1", tq.t1}, {"y1", tq.y1}, {"value", target}, {"all_orders", target_full}};
  j["nonincreasing"] = nonincreasing;
  j["rows"] = nlohmann::json::array();
  for (const GapRow& r : rows) {
    nlohmann::json row = {{"t", r.t},
                          {"x", r.x},
                          {"e", r.e},
                          {"prelimit", r.prelimit},
                          {"prelimit_error", r.prelimit_error},
                          {"target_error", r.target_error},
                          {"gap", r.gap},
                          {"path", r.path},
                          {"series_converged", r.series_converged},
                          {"indicator_width", 1.0 / std::cbrt(r.t)}};
    if (r.has_mc) row["mc"] = {{"mean", r.mc}, {"std_error", r.mc_stderr}};
    j["rows"].push_back(row);
  }
  const PrelimitOptions& p = options.prelimit;
  j["quadrature"] = {{"path_a_nodes", {p.quad.a.w_nodes, p.quad.a.z_nodes}},
                     {"path_b", {{"v_order", p.quad.b.v_order}, {"arm_order", p.quad.b.arm_order},
                                 {"arm_panel", p.quad.b.arm_panel}, {"arm_cut", p.quad.b.arm_cut}}},
                     {"samples", {{"path_a", p.quad.a.samples}, {"path_b", p.quad.b.samples}}},
                     {"series_seed", {{"path_a", p.quad.a.seed}, {"path_b", p.quad.b.seed}}},
                     {"series_abs_tol", p.quad.abs_tol},
                     {"path_b_above", p.path_b_above},
                     {"airy", {{"order", options.airy.order}, {"panel", options.airy.panel}, {"log_cut", options.airy.log_cut}}}};
  j["mc"] = {{"paths", options.mc_paths}, {"seed", options.seed}};
  return j;
}

void write_gap_csv(std::ostream& out, const std::vector<GapReport>& reports) {
  out << "t,alpha,r_tilde,x,e,prelimit,prelimit_error,target,target_error,gap,path,mc,mc_stderr\n";
  char buf[512];
  for (const GapReport& rep : reports)
    for (const GapRow& r : rep.rows) {
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%d,%.15g,%.15g,%.3e,%.15g,%.3e,%.15g,%s,", r.t, r.alpha,
                    r.r_tilde, r.x, r.e, r.prelimit, r.prelimit_error, r.target, r.target_error, r.gap, r.path.c_str());
      out << buf;
      if (r.has_mc) {
        std::snprintf(buf, sizeof buf, "%.15g,%.3e\n", r.mc, r.mc_stderr);
        out << buf;
      } else {
        out << ",\n";
      }
    }
}

nlohmann::json gap_json(const std::vector<GapReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const GapReport& r : reports) j.push_back(r.to_json());
  return j;
}

}  // namespace aseplab::harness
