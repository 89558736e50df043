#include <algorithm>
#include <cmath>
#include <numbers>

#include "aseplab/errors.hpp"
#include "aseplab/exact_series.hpp"
#include "pair_kernel.hpp"
#include "series_internal.hpp"

namespace aseplab::series {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

struct PathBSetup {
  Tau tau;
  double ts, c, eps, r_tilde;
  int x;
  double e;
};

PathBSetup make_setup(const ScaledPoint& sp, const AsepParams& params, const PathBQuad& quad) {
  const Tau tau(params.tau);
  if (!(sp.ts > 0.0)) throw DomainError("path B needs positive scaled time");
  const double eps = quad.epsilon > 0.0 ? quad.epsilon : std::min(0.1, std::abs(tau.log()) / 20.0);
  if (20.0 * eps > std::abs(tau.log())) throw ConfigError("contour width too large for this tau: e^{20 eps} > 1/tau");
  const int xf = formula_site(sp.x);
  const double c = std::cbrt(sp.ts);
  return {tau, sp.ts, c, eps, (sp.e + sp.ts / 4.0 + (xf - 1) / 2.0) / c, xf, sp.e};
}

// Log-magnitude of the u-only and v-only parts, in steepest-descent units.
double u_profile(const PathBSetup& s, cplx up) {
  const cplx l = s.ts * steepest_F(up) + static_cast<double>(s.x - 1) * (up / 2.0 - std::log(1.0 + std::exp(up))) -
                 s.r_tilde * s.c * up + std::log(qmath::qpochhammer(-std::exp(up), s.tau)) + up;
  return l.real();
}

double v_profile(const PathBSetup& s, cplx vp) {
  const cplx l = -s.ts * steepest_F(vp) + static_cast<double>(s.x - 1) * (std::log(1.0 + std::exp(vp)) - vp / 2.0) +
                 s.r_tilde * s.c * vp + std::log(qmath::qpochhammer(std::exp(2.0 * vp), s.tau)) -
                 std::log(qmath::qpochhammer(-std::exp(vp), s.tau));
  return l.real();
}

// Height along a vertical arm at which the profile has dropped by `cut` for good.
template <class Prof>
double arm_top(double re, double y0, double cut, Prof prof) {
  const int n = 600;
  std::vector<double> vals(n + 1);
  double peak = -1e300;
  for (int i = 0; i <= n; ++i) {
    const double y = y0 + (kPi - y0) * i / n;
    double v;
    try {
      v = prof(cplx(re, y));
    } catch (const PoleError&) {
      v = -1e300;
    }
    if (!std::isfinite(v)) v = -1e300;
    vals[i] = v;
    peak = std::max(peak, v);
  }
  int last = 0;
  for (int i = 0; i <= n; ++i)
    if (vals[i] >= peak - cut) last = i;
  const int top = std::min(n, last + 2);
  return y0 + (kPi - y0) * top / n;
}

// Upper half of a V-contour with vertex `vertex`, opening direction `dir` (+1 right, -1 left),
// followed by the vertical arm, mirrored into the lower half.
ContourNodes gamma_nodes(double vertex, int dir, double eps, double y_top, const PathBQuad& quad, int v_order,
                         int arm_order) {
  ContourNodes upper = segment_nodes(cplx(vertex, 0.0), cplx(vertex + dir * eps, eps), 1, v_order);
  if (y_top > eps) {
    const int panels = std::max(1, static_cast<int>(std::ceil((y_top - eps) / quad.arm_panel)));
    upper.append(segment_nodes(cplx(vertex + dir * eps, eps), cplx(vertex + dir * eps, y_top), panels, arm_order));
  }
  ContourNodes c;
  const std::size_t n = upper.size();
  for (std::size_t i = 0; i < n; ++i) {
    c.z.push_back(std::conj(upper.z[n - 1 - i]));
    c.dz.push_back(-std::conj(upper.dz[n - 1 - i]));
  }
  c.z.insert(c.z.end(), upper.z.begin(), upper.z.end());
  c.dz.insert(c.dz.end(), upper.dz.begin(), upper.dz.end());
  c.conj_index.resize(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) c.conj_index[i] = static_cast<int>(2 * n - 1 - i);
  return c;
}

struct PathBGeometry {
  ContourNodes u, v;  // in steepest-descent units u' = t^{-1/3} u
};

PathBGeometry pathB_geometry(const PathBSetup& s, const PathBQuad& quad, int v_order, int arm_order) {
  const double delta = 1.0 / s.c;
  const double yu = arm_top(s.eps, s.eps, quad.arm_cut, [&](cplx up) { return u_profile(s, up); });
  const double yv = arm_top(-delta - s.eps, s.eps, quad.arm_cut, [&](cplx vp) { return v_profile(s, vp); });
  return {gamma_nodes(0.0, +1, s.eps, yu, quad, v_order, arm_order),
          gamma_nodes(-delta, -1, s.eps, yv, quad, v_order, arm_order)};
}

detail::PairTables pathB_tables(const PathBSetup& s, const PathBGeometry& g, int m_cut) {
  const Tau tau = s.tau;
  const int nu = static_cast<int>(g.u.size()), nv = static_cast<int>(g.v.size());
  std::vector<cplx> w(nu), z(nv), lu(nu), lv(nv);
  for (int i = 0; i < nu; ++i) {
    const cplx up = g.u.z[i];
    w[i] = std::exp(up);
    lu[i] = s.ts * steepest_F(up) + static_cast<double>(s.x - 1) * (up / 2.0 - std::log(1.0 + w[i])) -
            s.r_tilde * s.c * up + std::log(detail::checked_poch(-w[i], tau, "A5")) + up;
  }
  for (int j = 0; j < nv; ++j) {
    const cplx vp = g.v.z[j];
    z[j] = std::exp(vp);
    lv[j] = -s.ts * steepest_F(vp) + static_cast<double>(s.x - 1) * (std::log(1.0 + z[j]) - vp / 2.0) +
            s.r_tilde * s.c * vp + std::log(qmath::qpochhammer(z[j] * z[j], tau)) -
            std::log(detail::checked_poch(-z[j], tau, "A5"));
  }
  const double c2 = 1.0 / (s.c * s.c);
  detail::PairTables tb;
  tb.P.resize(nu, nv);
  tb.M.resize(nu, nv);
  tb.X.resize(nu, nv);
  tb.Aww.resize(nu, nu);
  tb.Azz.resize(nv, nv);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const cplx l = lu[i] + lv[j] - std::log(detail::checked_poch(tau.value() * w[i] * z[j], tau, "A5"));
      if (l.real() > 700.0) throw NumericRangeError("path B integrand overflows");
      const cplx rest = detail::s_rest(g.v.z[j] - g.u.z[i], s.e, tau.log(), m_cut, nullptr);
      // du dv in unscaled variables: c du' c dv'
      tb.P(i, j) = std::exp(l) * rest / (-tau.log()) * (s.c * g.u.dz[i]) * (s.c * g.v.dz[j]);
      const cplx d1 = w[i] - z[j], d2 = 1.0 - w[i] * z[j];
      if (std::abs(d1) < 1e-8 || std::abs(d2) < 1e-8) throw PoleError("path B determinant at a pole");
      tb.M(i, j) = c2 / (d1 * d2);
      tb.X(i, j) = 1.0 / detail::checked_poch(tau.value() * w[i] * z[j], tau, "B2");
    }
  for (int i = 0; i < nu; ++i)
    for (int k = 0; k < nu; ++k) tb.Aww(i, k) = qmath::qpochhammer(tau.value() * w[i] * w[k], tau);
  for (int j = 0; j < nv; ++j)
    for (int k = 0; k < nv; ++k) tb.Azz(j, k) = qmath::qpochhammer(tau.value() * z[j] * z[k], tau);
  tb.conj_w = g.u.conj_index;
  tb.conj_z = g.v.conj_index;
  return tb;
}

int pathB_m_cut(const PathBQuad& quad, Tau tau) {
  return quad.m_cut > 0 ? quad.m_cut : detail::auto_m_cut(cplx(0.0, 2.0 * kPi), tau.log(), 1e-17);
}

TermValue pathB_term(int k, const ScaledPoint& sp, const AsepParams& params, const PathBQuad& quad, bool serial) {
  if (k < 1 || k > 4) throw ConfigError("series term index must lie in [1, 4]");
  const PathBSetup s = make_setup(sp, params, quad);
  const int m_cut = pathB_m_cut(quad, s.tau);
  auto run = [&](int v_order, int arm_order) {
    const PathBGeometry g = pathB_geometry(s, quad, v_order, arm_order);
    const detail::PairTables tb = pathB_tables(s, g, m_cut);
    const cplx norm = std::pow(cplx(0.0, 2.0 * kPi), -2 * k);
    if (k == 1) return norm * detail::pair_sum_k1(tb);
    return norm * (serial ? detail::pair_sum_k2_serial(tb) : detail::pair_sum_k2(tb));
  };
  TermValue r;
  if (k <= 2) {
    r.value = run(quad.v_order, quad.arm_order);
    r.method = "tensor";
    if (!serial)
      r.quad_error = std::abs(run(std::max(2, quad.v_order / 2), std::max(2, quad.arm_order / 2)) - r.value);
    return r;
  }
  if (serial) throw ConfigError("serial path B reference supports k = 1, 2");
  const PathBGeometry g = pathB_geometry(s, quad, quad.v_order, quad.arm_order);
  const detail::PairTables tb = pathB_tables(s, g, m_cut);
  const detail::SampledSum ss = detail::pair_sum_sampled(tb, k, quad.samples, quad.seed + static_cast<std::uint64_t>(k));
  r.value = ss.value * std::pow(cplx(0.0, 2.0 * kPi), -2 * k);
  r.quad_error = ss.std_error * std::pow(2.0 * kPi, -2 * k);
  r.method = "sampled";
  return r;
}

}  // namespace

TermValue h_k_pathB(int k, const ScaledPoint& sp, const AsepParams& params, const PathBQuad& quad) {
  return pathB_term(k, sp, params, quad, false);
}

TermValue h_k_pathB_serial(int k, const ScaledPoint& sp, const AsepParams& params, const PathBQuad& quad) {
  return pathB_term(k, sp, params, quad, true);
}

TermValue h_k_pathB(int k, double t, double alpha, double r_tilde, const AsepParams& params, const PathBQuad& quad) {
  return pathB_term(k, scaled_point(t, alpha, r_tilde), params, quad, false);
}

}  // namespace aseplab::series
