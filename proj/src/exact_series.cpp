#include "aseplab/exact_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "aseplab/errors.hpp"
#include "aseplab/parallel.hpp"
#include "aseplab/rng.hpp"
#include "series_internal.hpp"

namespace aseplab::series {

using qmath::qpochhammer;
constexpr double kPi = std::numbers::pi;
constexpr double kPoleTol = 1e-8;

LogZeta LogZeta::from_value(double zeta, Tau tau) {
  if (!(zeta < 0.0)) throw DomainError("zeta must be real and negative");
  return {std::log(-zeta * (1.0 - tau.value())) / tau.log()};
}

double LogZeta::log_abs(Tau tau) const { return exponent * tau.log() - std::log1p(-tau.value()); }

std::optional<double> LogZeta::value(Tau tau) const {
  const double la = log_abs(tau);
  if (std::abs(la) > 700.0) return std::nullopt;
  return -std::exp(la);
}

TauCondition tau_small_check(Tau tau) {
  const double t = tau.value();
  const double t14 = std::pow(t, 0.25), t12 = std::sqrt(t), t34 = std::pow(t, 0.75);
  const double a = qpochhammer(-t34, tau), b = qpochhammer(t14, tau);
  TauCondition c;
  c.rho = (t12 + t14) / ((1.0 - t12) * (1.0 - t12)) * (a * a) / (b * b);
  c.a_const = std::exp(1.0) * std::pow(t, 0.125) / (1.0 - t12);
  c.ok = c.rho < 1.0;
  return c;
}

namespace detail {

cplx ipow(cplx b, int n) {
  if (n < 0) return 1.0 / ipow(b, -n);
  cplx r(1.0, 0.0);
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

cplx checked_poch(cplx a, Tau tau, const char* what) {
  const cplx v = qpochhammer(a, tau);
  if (std::abs(v) < kPoleTol) throw PoleError(std::string("integrand evaluated near a pole of ") + what);
  return v;
}

double softplus(double y) { return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }

cplx s_rest(cplx d, double e, double log_tau, int m_cut, double* tail) {
  cplx sum;
  for (int m = -m_cut; m <= m_cut; ++m) {
    const double mm = static_cast<double>(m);
    const cplx s = (d - cplx(0.0, 2.0 * kPi * mm)) / log_tau;
    const cplx sn = std::sin(-kPi * s);
    if (std::abs(sn) < kPoleTol) throw PoleError("S-kernel evaluated at a pole of the sine");
    sum += kPi * std::polar(1.0, -2.0 * kPi * mm * e) / sn;
  }
  if (tail != nullptr) {
    const double y = (2.0 * kPi * (m_cut + 1) - std::abs(d.imag())) / std::abs(log_tau);
    if (y <= 0.0) {
      *tail = std::numeric_limits<double>::infinity();
    } else {
      const double r = std::exp(-2.0 * kPi * kPi / std::abs(log_tau));
      *tail = 2.0 * kPi * 2.0 * std::exp(-kPi * y) / ((1.0 - std::exp(-2.0 * kPi * y)) * (1.0 - r));
    }
  }
  return sum;
}

int auto_m_cut(cplx d, double log_tau, double abs_tol) {
  for (int m = 1; m <= 400; ++m) {
    const double y = (2.0 * kPi * (m + 1) - std::abs(d.imag())) / std::abs(log_tau);
    if (y <= 0.0) continue;
    const double r = std::exp(-2.0 * kPi * kPi / std::abs(log_tau));
    const double tail = 4.0 * kPi * std::exp(-kPi * y) / ((1.0 - std::exp(-2.0 * kPi * y)) * (1.0 - r));
    if (tail < abs_tol) return m;
  }
  throw ConvergenceError("S-kernel tail does not fall below tolerance");
}

}  // namespace detail

using detail::checked_poch;
using detail::ipow;

cplx factor_f(const ModelPoint& mp, cplx w, int n) {
  const Tau tau(mp.params.tau);
  const double gt = mp.params.gamma * mp.time;
  const cplx a = 1.0 + w, b = 1.0 + tau.pow(n) * w;
  if (std::abs(a) < kPoleTol || std::abs(b) < kPoleTol) throw PoleError("f factor evaluated near w = -1");
  return std::pow(1.0 - tau.value(), n) * std::exp(gt / a - gt / b) * ipow(b / a, mp.x - 1);
}

cplx factor_g(const ModelPoint& mp, cplx w, int n) {
  const Tau tau(mp.params.tau);
  const double tn = tau.pow(n);
  return qpochhammer(-w, tau) * qpochhammer(tn * tn * w * w, tau) /
         (checked_poch(-tn * w, tau, "g") * checked_poch(tn * w * w, tau, "g"));
}

cplx factor_h(const ModelPoint& mp, cplx w1, cplx w2, int n1, int n2) {
  const Tau tau(mp.params.tau);
  const cplx p = w1 * w2;
  return qpochhammer(p, tau) * qpochhammer(tau.pow(n1 + n2) * p, tau) /
         (checked_poch(tau.pow(n1) * p, tau, "h") * checked_poch(tau.pow(n2) * p, tau, "h"));
}

MomentFactors moment_factors(const ModelPoint& mp, cplx w, int n, cplx w2, int n2) {
  return {factor_f(mp, w, n), factor_g(mp, w, n), factor_h(mp, w, w2, n, n2)};
}

cplx moment_integrand(const ModelPoint& mp, std::span<const int> n, std::span<const cplx> w) {
  const int k = static_cast<int>(n.size());
  if (k < 1 || w.size() != n.size() || k > 8) throw DomainError("moment integrand needs 1 <= k <= 8 matching sizes");
  const Tau tau(mp.params.tau);
  cplx m[64];
  cplx prod(1.0, 0.0);
  for (int a = 0; a < k; ++a) {
    prod *= factor_f(mp, w[a], n[a]) * factor_g(mp, w[a], n[a]);
    for (int b = 0; b < k; ++b) {
      const cplx d = w[a] * tau.pow(n[a]) - w[b];
      if (std::abs(d) < kPoleTol) throw PoleError("moment determinant at a pole");
      m[a * k + b] = -1.0 / d;
    }
    for (int b = a + 1; b < k; ++b) prod *= factor_h(mp, w[a], w[b], n[a], n[b]);
  }
  return prod * qmath::det_inplace(m, k);
}

namespace {

void compositions(int m, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (k == 0) {
    if (m == 0) out.push_back(cur);
    return;
  }
  for (int first = 1; first <= m - (k - 1); ++first) {
    cur.push_back(first);
    compositions(m - first, k - 1, cur, out);
    cur.pop_back();
  }
}

struct MomentTables {
  int nodes = 0;
  // a[v][i] = f g dw at node i for part size v; e[v][i*N+j]; h[v1][v2][i*N+j]
  std::vector<std::vector<cplx>> a, e;
  std::vector<std::vector<std::vector<cplx>>> h;
  std::vector<int> conj;
};

MomentTables build_moment_tables(const ModelPoint& mp, const ContourNodes& c, int m) {
  const Tau tau(mp.params.tau);
  const int n = static_cast<int>(c.size());
  MomentTables t;
  t.nodes = n;
  t.conj = c.conj_index;
  t.a.assign(m + 1, std::vector<cplx>(n));
  t.e.assign(m + 1, std::vector<cplx>(static_cast<std::size_t>(n) * n));
  t.h.assign(m + 1, std::vector<std::vector<cplx>>(m + 1));
  for (int v = 1; v <= m; ++v) {
    const double tv = tau.pow(v);
    for (int i = 0; i < n; ++i) {
      t.a[v][i] = factor_f(mp, c.z[i], v) * factor_g(mp, c.z[i], v) * c.dz[i];
      for (int j = 0; j < n; ++j) {
        const cplx d = c.z[i] * tv - c.z[j];
        if (std::abs(d) < kPoleTol) throw PoleError("moment determinant at a pole");
        t.e[v][static_cast<std::size_t>(i) * n + j] = -1.0 / d;
      }
    }
  }
  for (int v1 = 1; v1 <= m; ++v1)
    for (int v2 = v1; v2 <= m; ++v2) {
      if (v1 + v2 > m) continue;
      auto& tab = t.h[v1][v2];
      tab.resize(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) tab[static_cast<std::size_t>(i) * n + j] = factor_h(mp, c.z[i], c.z[j], v1, v2);
      t.h[v2][v1].resize(tab.size());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.h[v2][v1][static_cast<std::size_t>(j) * n + i] = tab[static_cast<std::size_t>(i) * n + j];
    }
  return t;
}

cplx moment_point(const MomentTables& t, const std::vector<int>& comp, const int* idx) {
  const int k = static_cast<int>(comp.size());
  const std::size_t n = static_cast<std::size_t>(t.nodes);
  cplx m[64];
  cplx prod(1.0, 0.0);
  for (int a = 0; a < k; ++a) {
    prod *= t.a[comp[a]][idx[a]];
    for (int b = 0; b < k; ++b) m[a * k + b] = t.e[comp[a]][idx[a] * n + idx[b]];
    for (int b = a + 1; b < k; ++b) prod *= t.h[comp[a]][comp[b]][idx[a] * n + idx[b]];
  }
  return prod * qmath::det_inplace(m, k);
}

struct CompositionSum {
  cplx value;
  double error = 0.0;
};

CompositionSum composition_integral(const MomentTables& t, const std::vector<int>& comp, const CircleQuad& quad) {
  const int k = static_cast<int>(comp.size());
  const std::size_t n = static_cast<std::size_t>(t.nodes);
  std::size_t total = 1;
  bool tensor = true;
  for (int a = 0; a < k; ++a) {
    if (total > quad.tensor_budget / n) tensor = false;
    total *= n;
  }
  const cplx norm = std::pow(cplx(0.0, 2.0 * kPi), -k);
  if (tensor) {
    const cplx s = parallel::ordered_sum<cplx>(total, [&](std::size_t flat) {
      int idx[8];
      for (int a = k - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n);
        flat /= n;
      }
      return moment_point(t, comp, idx);
    });
    return {s * norm, 0.0};
  }
  // Sampled: coordinate a drawn with probability proportional to |a_{n_a}[i]|.
  std::vector<std::vector<double>> cdf(k, std::vector<double>(n));
  std::vector<double> tot(k);
  for (int a = 0; a < k; ++a) {
    double run = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      run += std::abs(t.a[comp[a]][i]);
      cdf[a][i] = run;
    }
    tot[a] = run;
  }
  const std::size_t ns = quad.samples;
  std::vector<cplx> vals(ns);
  parallel::for_each_index(ns, [&](std::size_t s) {
    RandomStream rng(quad.seed, s);
    int idx[8], cidx[8];
    double p = 1.0;
    for (int a = 0; a < k; ++a) {
      const double u = rng.uniform() * tot[a];
      std::size_t i = static_cast<std::size_t>(std::lower_bound(cdf[a].begin(), cdf[a].end(), u) - cdf[a].begin());
      if (i >= n) i = n - 1;
      p *= (cdf[a][i] - (i > 0 ? cdf[a][i - 1] : 0.0)) / tot[a];
      idx[a] = static_cast<int>(i);
      cidx[a] = t.conj.empty() ? -1 : t.conj[i];
    }
    cplx v = moment_point(t, comp, idx);
    if (!t.conj.empty()) v = 0.5 * (v + moment_point(t, comp, cidx));
    vals[s] = p > 0.0 ? v / p : cplx(0.0, 0.0);
  });
  cplx sum;
  for (const cplx& v : vals) sum += v;
  const cplx mean = sum / static_cast<double>(ns);
  double ss = 0.0;
  for (const cplx& v : vals) ss += std::norm(v - mean);
  return {mean * norm, std::sqrt(ss / (ns - 1.0) / ns) * std::abs(norm)};
}

ContourNodes half_grid(const ContourNodes& c) {
  ContourNodes h;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; i += 2) {
    h.z.push_back(c.z[i]);
    h.dz.push_back(2.0 * c.dz[i]);
  }
  const int m = static_cast<int>(h.z.size());
  for (int j = 0; j < m; ++j) h.conj_index.push_back((m - j) % m);
  return h;
}

}  // namespace

MomentResult moment_detailed(int m, double t, int x, const AsepParams& params, const CircleQuad& quad) {
  if (m < 0 || m > 6) throw DomainError("moment order must lie in [0, 6]");
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  MomentResult r;
  if (m == 0) {
    r.value = 1.0;
    return r;
  }
  if (quad.nodes < 64) throw ConfigError("moment quadrature needs at least 64 nodes");
  const Tau tau(params.tau);
  const ModelPoint mp{params, t, formula_site(x)};
  const ContourNodes full = circle_nodes(std::pow(tau.value(), -0.125), quad.nodes);

  auto nu_all = [&](const ContourNodes& c, std::vector<double>* errs) {
    const MomentTables tabs = build_moment_tables(mp, c, m);
    std::vector<cplx> nu(m + 1);
    double kfact = 1.0;
    for (int k = 1; k <= m; ++k) {
      kfact *= k;
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      compositions(m, k, cur, comps);
      double err = 0.0;
      for (const auto& comp : comps) {
        const CompositionSum s = composition_integral(tabs, comp, quad);
        nu[k] += s.value;
        err += s.error;
      }
      nu[k] /= kfact;
      if (errs) (*errs)[k] = err / kfact;
    }
    return nu;
  };

  std::vector<double> errs(m + 1, 0.0);
  const std::vector<cplx> nu = nu_all(full, &errs);
  cplx total;
  for (int k = 1; k <= m; ++k) total += nu[k];
  const double mf = qmath::qfactorial(m, tau);
  total *= mf;

  double err = 0.0;
  for (int k = 1; k <= m; ++k) err += errs[k] * mf;
  if (quad.nodes % 2 == 0 && err == 0.0) {
    const std::vector<cplx> nh = nu_all(half_grid(full), nullptr);
    cplx th;
    for (int k = 1; k <= m; ++k) th += nh[k];
    err = std::abs(th * mf - total);
  }
  r.value = total.real();
  r.imag_residual = total.imag();
  r.quad_error = err;
  r.nu.assign(nu.begin() + 1, nu.end());
  if (std::abs(total.imag()) > 1e-6 * std::max(1.0, std::abs(total.real())) + 4.0 * err)
    throw QuadratureError("moment has a non-negligible imaginary part");
  return r;
}

double moment(int m, double t, int x, const AsepParams& params, const CircleQuad& quad) {
  return moment_detailed(m, t, x, params, quad).value;
}

cplx mellin_barnes_k1_nsum(const LogZeta& zeta, double t, int x, const AsepParams& params, const CircleQuad& quad,
                           int n_max) {
  const Tau tau(params.tau);
  const ModelPoint mp{params, t, formula_site(x)};
  const ContourNodes c = circle_nodes(std::pow(tau.value(), -0.125), quad.nodes);
  const double lz = zeta.log_abs(tau);
  cplx sum;
  for (int n = 1; n <= n_max; ++n) {
    const double tn = tau.pow(n);
    cplx integral;
    for (std::size_t i = 0; i < c.size(); ++i)
      integral += factor_f(mp, c.z[i], n) * factor_g(mp, c.z[i], n) / (c.z[i] * (1.0 - tn)) * c.dz[i];
    integral /= cplx(0.0, 2.0 * kPi);
    const cplx term = (n % 2 ? -1.0 : 1.0) * std::exp(n * lz) * integral;
    sum += term;
    if (n > 3 && std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) return sum;
  }
  throw ConvergenceError("n-series for the k = 1 term did not converge");
}

SKernelValue s_kernel_logs(cplx log_w, cplx log_z, const LogZeta& u, Tau tau, int m_cut) {
  if (m_cut < 0) throw ConfigError("m_cut must be nonnegative");
  const cplx d = log_z - log_w;
  SKernelValue r;
  r.m_cut = m_cut;
  const cplx rest = detail::s_rest(d, u.exponent, tau.log(), m_cut, &r.tail_bound);
  const cplx common = std::exp(u.exponent * d);
  r.value = common * rest;
  r.tail_bound *= std::abs(common);
  return r;
}

SKernelValue s_kernel(cplx w, cplx z, const LogZeta& u, Tau tau, int m_cut) {
  return s_kernel_logs(std::log(w), std::log(z), u, tau, m_cut);
}

SKernelValue s_kernel_auto(cplx w, cplx z, const LogZeta& u, Tau tau, double abs_tol) {
  const cplx d = std::log(z) - std::log(w);
  return s_kernel(w, z, u, tau, detail::auto_m_cut(d, tau.log(), abs_tol));
}

cplx steepest_F(cplx z) {
  if (z.real() > 700.0) return z / 4.0 - 0.5;
  const cplx a = 1.0 + std::exp(z);
  if (std::abs(a) < 1e-12) throw PoleError("F evaluated at a pole (e^z = -1)");
  return 1.0 / a + z / 4.0 - 0.5;
}

double ScaledPoint::r_tilde() const { return (e + ts / 4.0 + (x - 1) / 2.0) / std::cbrt(ts); }

int formula_site(int x) { return x + 1; }

ScaledPoint scaled_point(double t, double alpha, double r_tilde) {
  if (!(t > 0.0)) throw DomainError("scaled time must be positive");
  ScaledPoint sp;
  sp.ts = t;
  const double c = std::cbrt(t), v = c * c * alpha;
  // absorb rounding when t^{2/3} alpha is an integer
  sp.x = static_cast<int>(std::floor(v + 1e-12 * std::max(1.0, std::abs(v))));
  sp.e = -t / 4.0 - (sp.x - 1) / 2.0 + std::cbrt(t) * r_tilde;
  return sp;
}

double SeriesResult::real_total() const { return total.real(); }

nlohmann::json SeriesResult::to_json() const {
  nlohmann::json j;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : terms)
    j["terms"].push_back({{"k", t.k},
                          {"re", t.value.real()},
                          {"im", t.value.imag()},
                          {"abs", std::abs(t.value)},
                          {"quad_error", t.quad_error},
                          {"method", t.method}});
  j["total"] = {{"re", total.real()}, {"im", total.imag()}};
  j["abs_tol"] = abs_tol;
  j["decay_ratio"] = decay_ratio;
  j["converged"] = converged;
  j["tau_small_ok"] = tau_small_ok;
  j["rho"] = rho;
  j["path"] = path;
  return j;
}

SeriesResult tau_laplace(const LogZeta& zeta, double t, int x, const AsepParams& params, int k_max, Path path,
                         const LaplaceQuad& quad) {
  if (k_max < 1 || k_max > 4) throw ConfigError("k_max must lie in [1, 4]");
  const Tau tau(params.tau);
  const TauCondition tc = tau_small_check(tau);
  SeriesResult r;
  r.abs_tol = quad.abs_tol;
  r.tau_small_ok = tc.ok;
  r.rho = tc.rho;
  r.path = path == Path::A ? "A" : "B";
  r.total = 1.0;
  const ScaledPoint sp{params.gamma * t, x, zeta.exponent};
  for (int k = 1; k <= k_max; ++k) {
    const TermValue tv = path == Path::A ? h_k_pathA(k, zeta, t, x, params, quad.a) : h_k_pathB(k, sp, params, quad.b);
    r.terms.push_back({k, tv.value, tv.quad_error, tv.method});
    r.total += tv.value;
  }
  double err = 0.0;
  for (const auto& term : r.terms) err += term.quad_error;
  if (std::abs(r.total.imag()) > 1e-6 * std::max(1.0, std::abs(r.total.real())) + 4.0 * err)
    throw QuadratureError("tau-Laplace total has a non-negligible imaginary part");
  const double last = std::abs(r.terms.back().value);
  r.decay_ratio = k_max >= 2 ? last / std::max(std::abs(r.terms[k_max - 2].value), 1e-300) : 0.0;
  r.converged = last < r.abs_tol && (k_max == 1 || r.decay_ratio < 0.7);
  return r;
}

double laplace_weight(long n, double e, Tau tau) {
  const double L = tau.log();
  double lw = 0.0;
  for (int j = 0; j < 100000; ++j) {
    const double y = (static_cast<double>(n) + e + j) * L;
    lw -= detail::softplus(y);
    if (y < -40.0) return std::exp(lw);
  }
  throw ConvergenceError("Laplace weight product did not converge");
}

}  // namespace aseplab::series
