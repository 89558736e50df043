#include "pair_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "aseplab/errors.hpp"
#include "aseplab/parallel.hpp"
#include "aseplab/qmath.hpp"
#include "aseplab/rng.hpp"

namespace aseplab::series::detail {

cplx pair_sum_k1(const PairTables& t) {
  const int nz = t.nz();
  return parallel::ordered_sum<cplx>(static_cast<std::size_t>(t.nw()), [&](std::size_t i) {
    cplx acc;
    for (int j = 0; j < nz; ++j) acc += t.P(i, j) * t.M(i, j);
    return acc;
  });
}

cplx pair_sum_k2(const PairTables& t) {
  const int nw = t.nw(), nz = t.nz();
  const Mat azz_t = t.Azz.transpose();
  const cplx total = parallel::ordered_sum<cplx>(
      static_cast<std::size_t>(nw),
      [&](std::size_t i1) {
        Mat R(2 * nw, nz);
        for (int i2 = 0; i2 < nw; ++i2)
          for (int j2 = 0; j2 < nz; ++j2) {
            const cplx base = t.P(i2, j2) * t.X(i1, j2);
            R(i2, j2) = base * t.M(i2, j2);
            R(nw + i2, j2) = base * t.M(i1, j2);
          }
        const Mat S = R * azz_t;
        cplx acc;
        for (int i2 = 0; i2 < nw; ++i2) {
          cplx row;
          for (int j1 = 0; j1 < nz; ++j1)
            row += t.P(i1, j1) * t.X(i2, j1) * (t.M(i1, j1) * S(i2, j1) - t.M(i2, j1) * S(nw + i2, j1));
          acc += t.Aww(i1, i2) * row;
        }
        return acc;
      },
      1);
  return 0.5 * total;
}

cplx pair_sum_k2_serial(const PairTables& t) {
  const int nw = t.nw(), nz = t.nz();
  cplx total;
  for (int i1 = 0; i1 < nw; ++i1)
    for (int j1 = 0; j1 < nz; ++j1)
      for (int i2 = 0; i2 < nw; ++i2)
        for (int j2 = 0; j2 < nz; ++j2) {
          const cplx det = t.M(i1, j1) * t.M(i2, j2) - t.M(i1, j2) * t.M(i2, j1);
          total += t.P(i1, j1) * t.P(i2, j2) * det * t.Aww(i1, i2) * t.Azz(j1, j2) * t.X(i1, j2) * t.X(i2, j1);
        }
  return 0.5 * total;
}

cplx pair_point(const PairTables& t, const int* i, const int* j, int k) {
  cplx m[64];
  cplx prod(1.0, 0.0);
  for (int a = 0; a < k; ++a) {
    prod *= t.P(i[a], j[a]);
    for (int b = 0; b < k; ++b) m[a * k + b] = t.M(i[a], j[b]);
    for (int b = a + 1; b < k; ++b)
      prod *= t.Aww(i[a], i[b]) * t.Azz(j[a], j[b]) * t.X(i[a], j[b]) * t.X(i[b], j[a]);
  }
  return prod * qmath::det_inplace(m, k);
}

SampledSum pair_sum_sampled(const PairTables& t, int k, std::size_t samples, std::uint64_t seed) {
  if (k < 1 || k > 8) throw ConfigError("sampled pair sum supports 1 <= k <= 8");
  if (samples < 2) throw ConfigError("sampled quadrature needs at least two samples");
  const int nw = t.nw(), nz = t.nz();
  const std::size_t n = static_cast<std::size_t>(nw) * nz;
  std::vector<double> cdf(n);
  double run = 0.0;
  for (std::size_t f = 0; f < n; ++f) {
    run += std::abs(t.P(f / nz, f % nz) * t.M(f / nz, f % nz));
    cdf[f] = run;
  }
  if (!(run > 0.0) || !std::isfinite(run)) throw QuadratureError("degenerate sampling weights");
  const bool mirror = !t.conj_w.empty() && !t.conj_z.empty();
  double kfact = 1.0;
  for (int a = 2; a <= k; ++a) kfact *= a;

  auto one = [&](std::size_t s) {
    RandomStream rng(seed, s);
    int ii[8], jj[8];
    double logp = 0.0;
    for (int a = 0; a < k; ++a) {
      const double u = rng.uniform() * run;
      std::size_t f = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      if (f >= n) f = n - 1;
      const double w = cdf[f] - (f > 0 ? cdf[f - 1] : 0.0);
      if (w <= 0.0) return cplx(0.0, 0.0);
      logp += std::log(w / run);
      ii[a] = static_cast<int>(f / nz);
      jj[a] = static_cast<int>(f % nz);
    }
    cplx v = pair_point(t, ii, jj, k);
    if (mirror) {
      int ci[8], cj[8];
      bool ok = true;
      for (int a = 0; a < k; ++a) {
        ci[a] = t.conj_w[ii[a]];
        cj[a] = t.conj_z[jj[a]];
        ok = ok && ci[a] >= 0 && cj[a] >= 0;
      }
      if (ok) v = 0.5 * (v + pair_point(t, ci, cj, k));
    }
    return v * std::exp(-logp);
  };

  std::vector<cplx> vals(samples);
  parallel::for_each_index(samples, [&](std::size_t s) { vals[s] = one(s); });
  cplx sum;
  for (const cplx& v : vals) sum += v;
  const cplx mean = sum / static_cast<double>(samples);
  double ss = 0.0;
  for (const cplx& v : vals) ss += std::norm(v - mean);
  SampledSum r;
  r.value = mean / kfact;
  r.std_error = std::sqrt(ss / (samples - 1.0) / samples) / kfact;
  return r;
}

}  // namespace aseplab::series::detail
