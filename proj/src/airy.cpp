#include "aseplab/airy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "aseplab/errors.hpp"
#include "aseplab/parallel.hpp"

namespace aseplab::airy {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Integral of f(r) e^{i phi} over r in [0, len] with `panels` Gauss-Legendre panels.
template <class F>
cplx ray_integral(double len, int panels, int order, F f) {
  const GaussLegendre& g = gauss_legendre(order);
  const double h = len / panels;
  cplx acc;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < order; ++i) acc += f(mid + 0.5 * h * g.x[i]) * (0.5 * h * g.w[i]);
  }
  return acc;
}

// Smallest r with a r^2 + r^3 / 3 >= target.
double decay_radius(double a, double target) {
  double r = std::cbrt(3.0 * target);
  for (int it = 0; it < 60; ++it) {
    const double v = a * r * r + r * r * r / 3.0 - target;
    const double d = 2.0 * a * r + r * r;
    const double nr = r - v / d;
    if (std::abs(nr - r) < 1e-12) break;
    r = nr;
  }
  return r;
}

}  // namespace

ContourNodes VContour::upper_arm() const {
  if (!(arm_length > 0.0) || order < 1 || nodes_per_arm < order || nodes_per_arm % order != 0)
    throw ConfigError("VContour needs arm_length > 0 and nodes_per_arm a positive multiple of order");
  return segment_nodes(vertex, vertex + std::polar(arm_length, angle), nodes_per_arm / order, order);
}

ContourNodes VContour::nodes() const {
  const ContourNodes up = upper_arm();
  const std::size_t n = up.size();
  ContourNodes c;
  c.z.reserve(2 * n);
  c.dz.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    c.z.push_back(std::conj(up.z[n - 1 - i] - vertex) + vertex);
    c.dz.push_back(-std::conj(up.dz[n - 1 - i]));
  }
  c.z.insert(c.z.end(), up.z.begin(), up.z.end());
  c.dz.insert(c.dz.end(), up.dz.begin(), up.dz.end());
  c.conj_index.assign(2 * n, -1);
  if (vertex.imag() == 0.0)
    for (std::size_t i = 0; i < 2 * n; ++i) c.conj_index[i] = static_cast<int>(2 * n - 1 - i);
  return c;
}

double airy_ai_series(double x) {
  if (!(std::abs(x) <= 12.0)) throw DomainError("series evaluation of Ai needs |x| <= 12");
  constexpr long double c1 = 0.355028053887817239260063186004L;
  constexpr long double c2 = 0.258819403792806798405183560189L;
  const long double xl = x, x3 = xl * xl * xl;
  long double f = 1.0L, g = xl, a = 1.0L, b = xl;
  for (int k = 1; k < 200; ++k) {
    a *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    b *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += a;
    g += b;
    if (std::abs(a) + std::abs(b) < 1e-24L * (std::abs(f) + std::abs(g))) break;
  }
  return static_cast<double>(c1 * f - c2 * g);
}

double airy_ai_contour(double x) {
  if (!(std::abs(x) <= 30.0)) throw DomainError("Ai is supported on |x| <= 30");
  const int order = 16;
  const cplx rot = std::polar(1.0, kPi / 3.0);
  const cplx sq = std::polar(1.0, 2.0 * kPi / 3.0);
  if (x >= 0.0) {
    // Saddle at sqrt(x); the factor exp(-(2/3) x^{3/2}) is pulled out.
    const double rx = std::sqrt(x);
    const double len = decay_radius(rx * 0.5, 46.0);
    const int panels = std::max(8, static_cast<int>(std::ceil(len * (1.0 + rx) / 0.6)));
    const cplx v = ray_integral(len, panels, order, [&](double r) { return std::exp(rx * r * r * sq - r * r * r / 3.0) * rot; });
    return std::exp(-2.0 / 3.0 * x * rx) * v.imag() / kPi;
  }
  const double a = -x, ra = std::sqrt(a);
  // Imaginary-axis piece from 0 to i sqrt(a).
  const double phase = 2.0 / 3.0 * a * ra;
  const int seg_panels = 4 + static_cast<int>(std::ceil(phase / 2.0));
  const GaussLegendre& g = gauss_legendre(order);
  double seg = 0.0;
  const double h = ra / seg_panels;
  for (int p = 0; p < seg_panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      const double y = mid + 0.5 * h * g.x[i];
      seg += std::cos(a * y - y * y * y / 3.0) * (0.5 * h * g.w[i]);
    }
  }
  // Ray from the saddle i sqrt(a) at angle pi/3.
  const double damp = ra * std::sin(2.0 * kPi / 3.0);
  const double len = decay_radius(damp, 46.0);
  const int panels = std::max(8, static_cast<int>(std::ceil(len * (1.0 + ra) / 0.6)));
  const cplx base = std::exp(kI * phase);
  const cplx ray =
      base * ray_integral(len, panels, order, [&](double r) { return std::exp(kI * ra * r * r * sq - r * r * r / 3.0) * rot; });
  return (seg + ray.imag()) / kPi;
}

double airy_ai(double x) {
  if (!(std::abs(x) <= 30.0)) throw DomainError("Ai is supported on |x| <= 30");
  return std::abs(x) <= 8.0 ? airy_ai_series(x) : airy_ai_contour(x);
}

namespace {

// Exponent of the one-point integrand after the shift u = w + t1: psi(u) = u^3/3 - Y u.
struct Shifted {
  double t1, Y;
  cplx psi(cplx w) const {
    const cplx u = w + t1;
    return u * u * u / 3.0 - Y * u;
  }
};

Shifted shifted(const Airy21Query& q) { return {q.t1, q.t1 <= 0.0 ? q.y1 : q.y1 + q.t1 * q.t1}; }

// Arm length at which prof(r) has dropped below its running peak by `cut` and keeps decreasing.
template <class Prof>
double adaptive_arm(Prof prof, double cut, double step) {
  double peak = prof(0.0);
  for (int i = 1; i < 4000; ++i) {
    const double r = i * step;
    const double v = prof(r);
    peak = std::max(peak, v);
    if (v < peak - cut && prof(r + step) < v) return r;
  }
  throw QuadratureError("contour arm does not decay");
}

struct OnePointContours {
  VContour w, z;
};

OnePointContours one_point_contours(const Airy21Query& q, const Airy21Quad& quad, int order) {
  const Shifted sh = shifted(q);
  const double d = sh.Y > 0.25 ? std::sqrt(sh.Y) : 0.5;
  double aw = std::max(d - q.t1, 0.5);
  double az = -d - q.t1;
  const double sep = std::min(0.5, 0.5 * aw);
  az = std::clamp(az, -aw + sep, aw - sep);
  const cplx ew = std::polar(1.0, kPi / 4.0), ez = std::polar(1.0, 3.0 * kPi / 4.0);
  const double lw = adaptive_arm([&](double r) { return sh.psi(aw + r * ew).real(); }, quad.log_cut, 0.05);
  const double lz = adaptive_arm([&](double r) { return -sh.psi(az + r * ez).real(); }, quad.log_cut, 0.05);
  auto make = [&](double a, double ang, double len) {
    const int panels = std::max(1, static_cast<int>(std::ceil(len / quad.panel)));
    return VContour{cplx(a, 0.0), ang, panels * quad.panel, panels * order, order};
  };
  return {make(aw, kPi / 4.0, lw), make(az, 3.0 * kPi / 4.0, lz)};
}

// N_w x N_w matrix whose determinant det(I + X) is the discretised one-point series.
Mat one_point_matrix(const Airy21Query& q, const OnePointContours& c) {
  const Shifted sh = shifted(q);
  const ContourNodes w = c.w.nodes(), z = c.z.nodes();
  const int nw = static_cast<int>(w.size()), nz = static_cast<int>(z.size());
  std::vector<cplx> pw(nw), pz(nz);
  for (int i = 0; i < nw; ++i) pw[i] = sh.psi(w.z[i]);
  for (int j = 0; j < nz; ++j) pz[j] = sh.psi(z.z[j]);
  const cplx norm = 1.0 / std::pow(cplx(0.0, 2.0 * kPi), 2);
  Mat G(nw, nz), C(nz, nw);
  parallel::for_each_index(static_cast<std::size_t>(nw), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 0; j < nz; ++j)
      G(i, j) = norm * 2.0 * w.z[i] * std::exp(pw[i] - pz[j]) / (w.z[i] - z.z[j]) * w.dz[i] * z.dz[j];
  });
  for (int j = 0; j < nz; ++j)
    for (int i = 0; i < nw; ++i) C(j, i) = 1.0 / (z.z[j] * z.z[j] - w.z[i] * w.z[i]);
  return G * C;
}

// 1 + sum_{k <= k_max} e_k(X) from power traces; terms[k-1] = e_k.
std::vector<cplx> elementary_terms(const Mat& X, int k_max) {
  std::vector<cplx> p(k_max + 1), e(k_max + 1);
  Mat Xp = X;
  for (int j = 1; j <= k_max; ++j) {
    if (j > 1) Xp = Xp * X;
    p[j] = Xp.trace();
  }
  e[0] = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    cplx s;
    for (int i = 1; i <= k; ++i) s += ((i % 2 == 1) ? 1.0 : -1.0) * e[k - i] * p[i];
    e[k] = s / static_cast<double>(k);
  }
  return {e.begin() + 1, e.end()};
}

struct OnePointEval {
  cplx total;
  std::vector<cplx> terms;
  int n = 0;
};

OnePointEval evaluate(const Airy21Query& q, int k_max, const Airy21Quad& quad, int order) {
  const OnePointContours c = one_point_contours(q, quad, order);
  const Mat X = one_point_matrix(q, c);
  OnePointEval ev;
  ev.n = static_cast<int>(X.rows());
  if (k_max == kAllTerms) {
    const Mat A = Mat::Identity(X.rows(), X.cols()) + X;
    ev.total = A.partialPivLu().determinant();
    return ev;
  }
  ev.terms = elementary_terms(X, k_max);
  ev.total = 1.0;
  for (const cplx& t : ev.terms) ev.total += t;
  return ev;
}

}  // namespace

Airy21Result airy21_cdf(const Airy21Query& q, int k_max, const Airy21Quad& quad) {
  if (k_max < 0 || k_max > 4) throw ConfigError("k_max must lie in [1, 4], or 0 for the full determinant");
  if (quad.order < 2 || !(quad.panel > 0.0) || !(quad.log_cut > 0.0)) throw ConfigError("invalid Airy21 quadrature");
  if (!std::isfinite(q.t1) || !std::isfinite(q.y1)) throw DomainError("non-finite Airy21 query");
  const OnePointEval fine = evaluate(q, k_max, quad, quad.order);
  const OnePointEval coarse = evaluate(q, k_max, quad, quad.order / 2);
  Airy21Result r;
  r.raw = fine.total.real();
  r.est_error = std::abs(fine.total - coarse.total) + std::abs(fine.total.imag());
  r.w_nodes = fine.n;
  const OnePointContours c = one_point_contours(q, quad, quad.order);
  r.z_nodes = 2 * c.z.nodes_per_arm;
  if (k_max == kAllTerms) {
    r.k_max = fine.n;
  } else {
    r.k_max = k_max;
    for (const cplx& t : fine.terms) r.terms.push_back(t.real());
    if (k_max >= 2) {
      const double last = std::abs(r.terms[k_max - 1]), prev = std::abs(r.terms[k_max - 2]);
      r.converged = last < 0.7 * prev || last < 1e-12;
    }
  }
  if (!(r.raw >= -quad.range_tol && r.raw <= 1.0 + quad.range_tol)) {
    if (!r.converged) throw ConvergenceError("Airy21 series terms do not decay");
    throw QuadratureError("Airy21 value outside [0, 1] beyond tolerance");
  }
  r.value = std::clamp(r.raw, 0.0, 1.0);
  return r;
}

cplx k_infinity(double s, double x, double t, double y, const Airy21Quad& quad) {
  const double xt = s <= 0.0 ? x - s * s : x;
  const double yt = t <= 0.0 ? y - t * t : y;
  auto fw = [&](cplx w) { return w * w * w / 3.0 + t * w * w - yt * w; };
  auto fz = [&](cplx z) { return z * z * z / 3.0 + s * z * z - xt * z; };
  const cplx ew = std::polar(1.0, kPi / 4.0), ez = std::polar(1.0, 3.0 * kPi / 4.0);
  const double lw = adaptive_arm([&](double r) { return fw(1.0 + r * ew).real(); }, quad.log_cut, 0.05);
  const double lz = adaptive_arm([&](double r) { return -fz(r * ez).real(); }, quad.log_cut, 0.05);
  auto make = [&](double a, double ang, double len) {
    const int panels = std::max(1, static_cast<int>(std::ceil(len / quad.panel)));
    return VContour{cplx(a, 0.0), ang, panels * quad.panel, panels * quad.order, quad.order};
  };
  const ContourNodes w = make(1.0, kPi / 4.0, lw).nodes(), z = make(0.0, 3.0 * kPi / 4.0, lz).nodes();
  std::vector<cplx> gw(w.size()), gz(z.size());
  for (std::size_t i = 0; i < w.size(); ++i) gw[i] = std::exp(fw(w.z[i])) * (-2.0 * w.z[i]) * w.dz[i];
  for (std::size_t j = 0; j < z.size(); ++j) gz[j] = std::exp(-fz(z.z[j])) * z.dz[j];
  const cplx sum = parallel::ordered_sum<cplx>(w.size(), [&](std::size_t i) {
    cplx acc;
    for (std::size_t j = 0; j < z.size(); ++j) acc += gz[j] / (z.z[j] * z.z[j] - w.z[i] * w.z[i]);
    return gw[i] * acc;
  });
  cplx k = sum / std::pow(cplx(0.0, 2.0 * kPi), 2);
  if (t > s) k -= std::exp(-(yt - xt) * (yt - xt) / (4.0 * (t - s))) / std::sqrt(4.0 * kPi * (t - s));
  return k;
}

void FredholmQuad::validate() const {
  if (n_nodes < 10) throw ConfigError("Fredholm quadrature needs at least 10 nodes");
  if (!(domain_length > 0.0)) throw ConfigError("Fredholm domain length must be positive");
}

namespace {

// B(i, j) = sqrt(w_i) Ai(x_i + x_j + s) sqrt(w_j) on [0, L].
RMat airy_shift_matrix(double s, int n, double len) {
  const GaussLegendre& g = gauss_legendre(n);
  std::vector<double> x(n), sw(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * len * (g.x[i] + 1.0);
    sw[i] = std::sqrt(0.5 * len * g.w[i]);
  }
  RMat B(n, n);
  parallel::for_each_index(static_cast<std::size_t>(n), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 0; j < n; ++j) B(i, j) = sw[i] * airy_ai(x[i] + x[j] + s) * sw[j];
  });
  return B;
}

enum class Ensemble { goe, gue };

double tw_det(double s, int n, double len, Ensemble e) {
  const RMat B = airy_shift_matrix(s, n, len);
  const RMat K = e == Ensemble::goe ? B : RMat(B * B);
  return (RMat::Identity(n, n) - K).partialPivLu().determinant();
}

double tw_cdf(double s, const FredholmQuad& quad, Ensemble e) {
  quad.validate();
  if (!(s >= -10.0 && s <= 6.0)) throw DomainError("Tracy-Widom evaluation needs s in [-10, 6]");
  const double v = tw_det(s, quad.n_nodes, quad.domain_length, e);
  const double v2 = tw_det(s, 2 * quad.n_nodes, quad.domain_length, e);
  if (std::abs(v - v2) > quad.stability_tol) throw QuadratureError("Fredholm determinant unstable under node doubling");
  return v;
}

}  // namespace

double tw2_cdf(double s, const FredholmQuad& quad) { return tw_cdf(s, quad, Ensemble::gue); }
double tw1_cdf(double s, const FredholmQuad& quad) { return tw_cdf(s, quad, Ensemble::goe); }

double goe_bound(const Airy21Query& q, const FredholmQuad& quad) {
  return tw1_cdf(std::max(-10.0, std::cbrt(4.0) * q.y_tilde()), quad);
}

void write_cdf_csv(std::ostream& out, const std::vector<CdfRow>& rows) {
  out << "t1,y,cdf,k_max,est_error\n";
  char buf[160];
  for (const CdfRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.15g,%d,%.3e\n", r.t1, r.y, r.cdf, r.k_max, r.est_error);
    out << buf;
  }
}

}  // namespace aseplab::airy
