#include <doctest.h>

#include <cmath>
#include <sstream>

#include "aseplab/airy.hpp"
#include "aseplab/errors.hpp"
#include "aseplab/quadrature.hpp"

using namespace aseplab;
using namespace aseplab::airy;

namespace {

// Reference values at 30 digits, rounded.
struct AiRef {
  double x, ai;
};
constexpr AiRef kAi[] = {
    {0.0, 0.35502805388781724},   {1.0, 0.13529241631288142},    {-1.0, 0.53556088329235212},
    {5.0, 1.0834442813607442e-4}, {-5.0, 0.35076100902411432},   {9.0, 2.4711684308724898e-9},
    {10.0, 1.1047532552898686e-10}, {-10.0, 0.040241238486443191}, {20.0, 1.6916728686705403e-27},
    {-20.0, -0.17640612707798469}, {-7.5, 0.32177571638064788},
};

// E[X] = b - int_a^b F(s) ds for a law essentially supported on [a, b].
template <class F>
double mean_from_cdf(F&& cdf, double a, double b, int panels) {
  const GaussLegendre& g = gauss_legendre(20);
  const double h = (b - a) / panels;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < g.x.size(); ++i)
      integral += 0.5 * h * g.w[i] * cdf(a + h * (p + 0.5 * (g.x[i] + 1.0)));
  return b - integral;
}

}  // namespace

TEST_CASE("Airy function reference values") {
  for (const AiRef& r : kAi) {
    CAPTURE(r.x);
    CHECK(airy_ai(r.x) == doctest::Approx(r.ai).epsilon(1e-12));
  }
}

TEST_CASE("Airy series and contour routes agree on the overlap") {
  for (double x = -12.0; x <= 8.0; x += 0.5) {
    CAPTURE(x);
    // the power series loses digits to cancellation beyond |x| = 8
    CHECK(std::abs(airy_ai_series(x) - airy_ai_contour(x)) < (x < -8.0 ? 1e-9 : 1e-13));
  }
  CHECK_THROWS(airy_ai(31.0));
}

TEST_CASE("Airy equation by finite differences") {
  const double h = 1e-3;
  for (double x : {-6.0, -2.0, 0.5, 3.0}) {
    const double d2 = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
    CHECK(d2 == doctest::Approx(x * airy_ai(x)).epsilon(1e-5));
  }
}

TEST_CASE("Tracy-Widom GUE: median and mean") {
  CHECK(tw2_cdf(-1.8047) == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(mean_from_cdf([](double s) { return tw2_cdf(s); }, -10.0, 6.0, 8) == doctest::Approx(-1.7710868074).epsilon(1e-6));
}

TEST_CASE("Tracy-Widom GOE: mean") {
  CHECK(mean_from_cdf([](double s) { return tw1_cdf(s); }, -10.0, 6.0, 8) == doctest::Approx(-1.2065335745).epsilon(1e-6));
}

TEST_CASE("Tracy-Widom distribution functions are ordered CDFs") {
  double prev2 = 0.0, prev1 = 0.0;
  for (double s = -8.0; s <= 4.0; s += 0.5) {
    const double f2 = tw2_cdf(s), f1 = tw1_cdf(s);
    CHECK(f2 >= prev2);
    CHECK(f1 >= prev1);
    CHECK(f2 <= 1.0);
    prev2 = f2;
    prev1 = f1;
  }
  CHECK_THROWS_AS(tw2_cdf(7.0), DomainError);
  FredholmQuad bad;
  bad.n_nodes = 4;
  CHECK_THROWS_AS(tw2_cdf(0.0, bad), ConfigError);
}

TEST_CASE("wedge contour geometry") {
  const VContour c{cplx(0.5, 0.0), 0.25 * 3.14159265358979323846, 3.0, 32, 16};
  const ContourNodes n = c.nodes();
  CHECK(n.size() == 64);
  cplx len = 0.0;
  for (const cplx& d : n.dz) len += d;
  // Sum of dz is the chord between the endpoints.
  const cplx top = c.vertex + std::polar(3.0, c.angle), bottom = c.vertex + std::polar(3.0, -c.angle);
  CHECK(std::abs(len - (top - bottom)) < 1e-12);
}

TEST_CASE("extended kernel on the diagonal is real and integrates to the first term") {
  const Airy21Query q{0.5, 0.0};
  const GaussLegendre& g = gauss_legendre(16);
  double integral = 0.0;
  const double len = 10.0;
  const int panels = 4;
  const double h = len / panels;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double lam = q.y1 + h * (p + 0.5 * (g.x[i] + 1.0));
      const cplx k = k_infinity(q.t1, lam, q.t1, lam);
      CHECK(std::abs(k.imag()) < 1e-8);
      integral += 0.5 * h * g.w[i] * k.real();
    }
  const Airy21Result r = airy21_cdf(q, 1);
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms[0] == doctest::Approx(-integral).epsilon(1e-6));
}

TEST_CASE("Airy_{2->1} at large t1 approaches GOE") {
  for (double y : {-1.0, 0.0, 1.0}) {
    const Airy21Result r = airy21_cdf({8.0, y}, kAllTerms);
    CHECK(r.value == doctest::Approx(tw1_cdf(std::cbrt(4.0) * y)).epsilon(1e-6));
  }
}

TEST_CASE("Airy_{2->1} one-point law is a CDF above the GOE bound") {
  for (double t1 : {-2.0, 0.0, 1.0}) {
    double prev = 0.0;
    for (double yt = -3.0; yt <= 2.0; yt += 1.0) {
      const Airy21Query q{t1, t1 <= 0.0 ? yt + t1 * t1 : yt};
      const Airy21Result r = airy21_cdf(q, kAllTerms);
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 1.0);
      CHECK(r.value >= prev - 1e-9);
      CHECK(r.value >= goe_bound(q) - 1e-7);
      prev = r.value;
    }
  }
}

TEST_CASE("truncated and full evaluations agree where terms decay") {
  const Airy21Query q{0.0, 1.0};
  const Airy21Result a = airy21_cdf(q, 4), b = airy21_cdf(q, kAllTerms);
  CHECK(a.converged);
  CHECK(a.terms.size() == 4);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));
  CHECK(std::abs(a.terms[3]) < std::abs(a.terms[0]));
}

TEST_CASE("CDF table output") {
  std::ostringstream os;
  write_cdf_csv(os, {{0.0, 1.0, 0.5, 4, 1e-8}});
  CHECK(os.str().rfind("t1,y,cdf,k_max,est_error\n", 0) == 0);
}

TEST_CASE("Airy_{2->1} one-point law is nonincreasing in t1 >= 0") {
  for (double y : {-1.0, 0.5}) {
    double prev = 2.0;
    for (double t1 : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double v = airy21_cdf({t1, y}, kAllTerms).value;
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
  }
}
