#include <cmath>
#include <numbers>

#include "aseplab/errors.hpp"
#include "aseplab/exact_series.hpp"
#include "pair_kernel.hpp"
#include "series_internal.hpp"

namespace aseplab::series {

namespace {

constexpr double kPi = std::numbers::pi;

struct PathAGeometry {
  ContourNodes w, z;
};

PathAGeometry pathA_geometry(Tau tau, int nw, int nz) {
  if (nw < 8 || nz < 8) throw ConfigError("path A needs at least 8 nodes per circle");
  return {circle_nodes(std::pow(tau.value(), -0.25), nw), circle_nodes(std::sqrt(tau.value()), nz)};
}

int pathA_m_cut(const PathAQuad& quad, Tau tau) {
  return quad.m_cut > 0 ? quad.m_cut : detail::auto_m_cut(cplx(0.0, 2.0 * kPi), tau.log(), 1e-17);
}

// log of the single-pair factor T * exp(e (log z - log w)).
cplx pair_log(cplx w, cplx z, double e, double t, int x, const AsepParams& params, Tau tau) {
  const double gt = params.gamma * t;
  const cplx lw = std::log(w), lz = std::log(z);
  cplx l = gt / (1.0 + w) - gt / (1.0 + z) + static_cast<double>(x - 1) * (std::log(1.0 + z) - std::log(1.0 + w));
  l += std::log(qmath::qpochhammer(-w, tau)) + std::log(qmath::qpochhammer(z * z, tau));
  l -= std::log(detail::checked_poch(-z, tau, "T")) + std::log(detail::checked_poch(z * w, tau, "T"));
  l += e * (lz - lw);
  return l;
}

cplx pair_value(cplx w, cplx z, double e, double t, int x, const AsepParams& params, Tau tau, int m_cut) {
  const cplx l = pair_log(w, z, e, t, x, params, tau);
  if (l.real() > 700.0) throw NumericRangeError("path A integrand overflows");
  const cplx rest = detail::s_rest(std::log(z) - std::log(w), e, tau.log(), m_cut, nullptr);
  return std::exp(l) * rest / (-tau.log() * z);
}

detail::PairTables pathA_tables(const PathAGeometry& g, const LogZeta& zeta, double t, int x,
                                const AsepParams& params, int m_cut) {
  const Tau tau(params.tau);
  const int nw = static_cast<int>(g.w.size()), nz = static_cast<int>(g.z.size());
  detail::PairTables tb;
  tb.P.resize(nw, nz);
  tb.M.resize(nw, nz);
  tb.X.resize(nw, nz);
  tb.Aww.resize(nw, nw);
  tb.Azz.resize(nz, nz);
  for (int i = 0; i < nw; ++i)
    for (int j = 0; j < nz; ++j) {
      const cplx w = g.w.z[i], z = g.z.z[j];
      tb.P(i, j) = pair_value(w, z, zeta.exponent, t, x, params, tau, m_cut) * g.w.dz[i] * g.z.dz[j];
      tb.M(i, j) = 1.0 / (w - z);
      tb.X(i, j) = 1.0 / detail::checked_poch(z * w, tau, "G");
    }
  for (int i = 0; i < nw; ++i)
    for (int j = 0; j < nw; ++j) tb.Aww(i, j) = qmath::qpochhammer(g.w.z[i] * g.w.z[j], tau);
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < nz; ++j) tb.Azz(i, j) = qmath::qpochhammer(g.z.z[i] * g.z.z[j], tau);
  tb.conj_w = g.w.conj_index;
  tb.conj_z = g.z.conj_index;
  return tb;
}

cplx tensor_term(int k, const detail::PairTables& tb) {
  const cplx norm = std::pow(cplx(0.0, 2.0 * kPi), -2 * k);
  return norm * (k == 1 ? detail::pair_sum_k1(tb) : detail::pair_sum_k2(tb));
}

void check_k(int k) {
  if (k < 1 || k > 4) throw ConfigError("series term index must lie in [1, 4]");
}

}  // namespace

TermValue h_k_pathA(int k, const LogZeta& zeta, double t, int x, const AsepParams& params, const PathAQuad& quad) {
  check_k(k);
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  const Tau tau(params.tau);
  const int m_cut = pathA_m_cut(quad, tau);
  const PathAGeometry g = pathA_geometry(tau, quad.w_nodes, quad.z_nodes);
  const detail::PairTables tb = pathA_tables(g, zeta, t, formula_site(x), params, m_cut);
  TermValue r;
  if (k <= 2) {
    r.value = tensor_term(k, tb);
    r.method = "tensor";
    const PathAGeometry gh = pathA_geometry(tau, quad.w_nodes / 2, quad.z_nodes / 2);
    r.quad_error = std::abs(tensor_term(k, pathA_tables(gh, zeta, t, formula_site(x), params, m_cut)) - r.value);
  } else {
    const detail::SampledSum s = detail::pair_sum_sampled(tb, k, quad.samples, quad.seed + static_cast<std::uint64_t>(k));
    r.value = s.value * std::pow(cplx(0.0, 2.0 * kPi), -2 * k);
    r.quad_error = s.std_error * std::pow(2.0 * kPi, -2 * k);
    r.method = "sampled";
  }
  return r;
}

TermValue h_k_pathA_serial(int k, const LogZeta& zeta, double t, int x, const AsepParams& params,
                           const PathAQuad& quad) {
  if (k < 1 || k > 2) throw ConfigError("serial path A reference supports k = 1, 2");
  const Tau tau(params.tau);
  const int m_cut = pathA_m_cut(quad, tau);
  const PathAGeometry g = pathA_geometry(tau, quad.w_nodes, quad.z_nodes);
  const std::size_t nw = g.w.size(), nz = g.z.size();
  const double e = zeta.exponent;
  x = formula_site(x);
  auto poch = [&](cplx a) { return qmath::qpochhammer(a, tau); };
  cplx sum;
  if (k == 1) {
    for (std::size_t i = 0; i < nw; ++i)
      for (std::size_t j = 0; j < nz; ++j) {
        const cplx w = g.w.z[i], z = g.z.z[j];
        sum += pair_value(w, z, e, t, x, params, tau, m_cut) / (w - z) * g.w.dz[i] * g.z.dz[j];
      }
    return {sum * std::pow(cplx(0.0, 2.0 * kPi), -2), 0.0, "tensor"};
  }
  for (std::size_t i1 = 0; i1 < nw; ++i1)
    for (std::size_t j1 = 0; j1 < nz; ++j1) {
      const cplx w1 = g.w.z[i1], z1 = g.z.z[j1];
      const cplx p1 = pair_value(w1, z1, e, t, x, params, tau, m_cut) * g.w.dz[i1] * g.z.dz[j1];
      for (std::size_t i2 = 0; i2 < nw; ++i2)
        for (std::size_t j2 = 0; j2 < nz; ++j2) {
          const cplx w2 = g.w.z[i2], z2 = g.z.z[j2];
          const cplx p2 = pair_value(w2, z2, e, t, x, params, tau, m_cut) * g.w.dz[i2] * g.z.dz[j2];
          const cplx d = 1.0 / ((w1 - z1) * (w2 - z2)) - 1.0 / ((w1 - z2) * (w2 - z1));
          const cplx gg = poch(w1 * w2) * poch(z1 * z2) / (poch(z1 * w2) * poch(w1 * z2));
          sum += p1 * p2 * d * gg;
        }
    }
  return {0.5 * sum * std::pow(cplx(0.0, 2.0 * kPi), -4), 0.0, "tensor"};
}

}  // namespace aseplab::series
