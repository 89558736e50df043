#include "aseplab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "aseplab/errors.hpp"

namespace aseplab {

namespace {

GaussLegendre build_rule(int n) {
  GaussLegendre r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.w[i] = w;
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw ConfigError("Gauss-Legendre order must be positive");
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

void ContourNodes::append(const ContourNodes& other) {
  const int off = static_cast<int>(z.size());
  z.insert(z.end(), other.z.begin(), other.z.end());
  dz.insert(dz.end(), other.dz.begin(), other.dz.end());
  for (int c : other.conj_index) conj_index.push_back(c < 0 ? -1 : c + off);
}

ContourNodes circle_nodes(double radius, int n) {
  if (n < 1 || !(radius > 0.0)) throw ConfigError("circle contour needs n >= 1 and radius > 0");
  ContourNodes c;
  c.z.resize(n);
  c.dz.resize(n);
  c.conj_index.resize(n);
  const cplx i2pi(0.0, 2.0 * std::numbers::pi);
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * std::numbers::pi * j / n;
    c.z[j] = std::polar(radius, th);
    c.dz[j] = i2pi * c.z[j] / static_cast<double>(n);
    c.conj_index[j] = (n - j) % n;
  }
  c.z[0] = cplx(radius, 0.0);
  return c;
}

ContourNodes segment_nodes(cplx a, cplx b, int panels, int order) {
  if (panels < 1) throw ConfigError("segment needs at least one panel");
  const GaussLegendre& g = gauss_legendre(order);
  ContourNodes c;
  const cplx step = (b - a) / static_cast<double>(panels);
  for (int p = 0; p < panels; ++p) {
    const cplx lo = a + step * static_cast<double>(p);
    const cplx mid = lo + 0.5 * step;
    for (int i = 0; i < order; ++i) {
      c.z.push_back(mid + 0.5 * step * g.x[i]);
      c.dz.push_back(0.5 * step * g.w[i]);
      c.conj_index.push_back(-1);
    }
  }
  return c;
}

void match_conjugates(ContourNodes& c, double tol) {
  const std::size_t n = c.size();
  c.conj_index.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx target = std::conj(c.z[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(c.z[j] - target) <= tol * (1.0 + std::abs(target))) {
        c.conj_index[i] = static_cast<int>(j);
        break;
      }
    }
  }
}

}  // namespace aseplab
