#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aseplab/asep.hpp"
#include "aseplab/errors.hpp"
#include "aseplab/exact_series.hpp"
#include "aseplab/parallel.hpp"

using namespace aseplab;
using namespace aseplab::series;

namespace {

const AsepParams kModel = AsepParams::from_tau(0.005);

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("small-tau condition") {
  CHECK(tau_small_check(Tau(0.005)).ok);
  CHECK_FALSE(tau_small_check(Tau(0.5)).ok);
  CHECK(tau_small_check(Tau(0.005)).rho > 0.0);
}

TEST_CASE("zeta stored through its exponent") {
  const Tau tau(0.2);
  const LogZeta z = LogZeta::from_value(-3.0, tau);
  CHECK(*z.value(tau) == doctest::Approx(-3.0));
  CHECK(LogZeta::from_exponent(2.0).value(tau).value() == doctest::Approx(-0.04 / 0.8));
  CHECK_FALSE(LogZeta::from_exponent(1e4).value(tau).has_value());
  CHECK_THROWS_AS(LogZeta::from_value(0.5, tau), DomainError);
}

TEST_CASE("moments at t = 0 reduce to the initial count") {
  for (int m : {1, 2, 3})
    for (int x : {-3, -1, 0, 1, 2, 3, 5}) {
      const double expect = std::pow(kModel.tau, m * (x >= 0 ? x / 2 : 0));
      CHECK(moment(m, 0.0, x, kModel) == doctest::Approx(expect).epsilon(1e-9));
    }
  CHECK(moment(0, 3.0, 0, kModel) == 1.0);
}

TEST_CASE("first moment agrees with simulation at moderate time") {
  const double t = 2.0;
  const MomentResult r = moment_detailed(1, t, 0, kModel);
  CHECK(std::abs(r.imag_residual) < 1e-6 * std::abs(r.value));
  const double tau = kModel.tau;
  const asep::McEstimate mc = asep::mc_expectation(
      [tau](const asep::AsepState& s) { return std::pow(tau, static_cast<double>(asep::particle_count(s, 0))); }, t,
      kModel, asep::SimWindow::for_time(t), 40000, 21);
  CHECK(std::abs(r.value - mc.mean) < 4.0 * mc.std_error);
}

TEST_CASE("moments are positive and decrease in m") {
  const double a = moment(1, 1.0, 0, kModel), b = moment(2, 1.0, 0, kModel);
  CHECK(a > b);
  CHECK(b > 0.0);
  CHECK(a <= 1.0);
}

TEST_CASE("moment input validation") {
  CHECK_THROWS_AS(moment(7, 1.0, 0, kModel), DomainError);
  CHECK_THROWS_AS(moment(1, -1.0, 0, kModel), DomainError);
  CircleQuad q;
  q.nodes = 16;
  CHECK_THROWS_AS(moment(1, 1.0, 0, kModel, q), ConfigError);
}

TEST_CASE("Laplace weight equals the q-exponential product") {
  const Tau tau(0.3);
  for (long n : {0L, 2L, 5L})
    for (double e : {-1.5, 0.25, 2.0}) {
      // zeta tau^n with zeta = -(1-tau)^{-1} tau^e
      const cplx arg = -std::pow(0.3, n + e) / 0.7;
      const double expect = qmath::qexp(arg, tau, qmath::QExpMode::product).real();
      CHECK(laplace_weight(n, e, tau) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("S kernel: quasi-periodicity in z") {
  // s -> s + 1 under z -> tau z, so S(w, tau z) = -(-u) S(w, z) = -tau^e S(w, z).
  const Tau tau(0.05);
  const LogZeta u = LogZeta::from_exponent(0.37);
  const cplx lw(0.1, 0.4), lz(-0.2, -0.3);
  const cplx a = s_kernel_logs(lw, lz, u, tau, 30).value;
  const cplx b = s_kernel_logs(lw, lz + tau.log(), u, tau, 30).value;
  CHECK(rel(b, -std::pow(0.05, 0.37) * a) < 1e-12);
}

TEST_CASE("S kernel: tail bound controls truncation") {
  const Tau tau(0.005);
  const LogZeta u = LogZeta::from_exponent(-0.8);
  const cplx w = std::polar(0.7, 0.3), z = std::polar(0.2, -1.1);
  const SKernelValue ref = s_kernel(w, z, u, tau, 60);
  for (int m : {1, 2, 4}) {
    const SKernelValue v = s_kernel(w, z, u, tau, m);
    CHECK(std::abs(v.value - ref.value) <= v.tail_bound + 1e-15 * std::abs(ref.value));
  }
  const SKernelValue a = s_kernel_auto(w, z, u, tau, 1e-14);
  CHECK(std::abs(a.value - ref.value) < 1e-13);
  CHECK_THROWS_AS(s_kernel(w, z, u, tau, -1), ConfigError);
}

TEST_CASE("steepest-descent exponent is cubic at the origin") {
  CHECK(std::abs(steepest_F(0.0)) < 1e-16);
  for (double r : {1e-2, 2e-2}) {
    const cplx z = std::polar(r, 0.7);
    CHECK(rel(steepest_F(z), z * z * z / 48.0) < 0.01);
  }
}

TEST_CASE("scaled point") {
  const ScaledPoint sp = scaled_point(8.0, -1.0, 0.5);
  CHECK(sp.x == -4);
  CHECK(sp.e == doctest::Approx(-2.0 + 2.5 + 1.0));
  CHECK(sp.r_tilde() == doctest::Approx(0.5));
  CHECK(formula_site(3) == 4);
  CHECK_THROWS_AS(scaled_point(0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("Mellin-Barnes: contour term equals the n-series") {
  const LogZeta z = LogZeta::from_value(-0.5, Tau(kModel.tau));
  for (double t : {0.25, 1.0})
    for (int x : {-1, 0, 2}) {
      const cplx h = h_k_pathA(1, z, t, x, kModel).value;
      const cplx n = mellin_barnes_k1_nsum(z, t, x, kModel);
      CHECK(rel(h, n) < 1e-6);
    }
}

TEST_CASE("tau-Laplace transform at small time") {
  // For t -> 0, N_0 = 0 almost surely; corrections are O(t^2).
  const double e = 0.3, t = 0.01;
  const SeriesResult r = tau_laplace(LogZeta::from_exponent(e), t, 0, kModel, 2, Path::A);
  CHECK(r.real_total() == doctest::Approx(laplace_weight(0, e, Tau(kModel.tau))).epsilon(1e-3));
  CHECK(r.terms.size() == 2);
  CHECK(std::abs(r.total.imag()) < 1e-8);
}

TEST_CASE("parallel and serial series kernels agree") {
  const LogZeta z = LogZeta::from_exponent(-1.0);
  PathAQuad q;
  q.w_nodes = q.z_nodes = 24;
  for (int k : {1, 2}) {
    const TermValue a = h_k_pathA(k, z, 3.0, 0, kModel, q);
    const TermValue b = h_k_pathA_serial(k, z, 3.0, 0, kModel, q);
    CHECK(rel(a.value, b.value) < 1e-12);
  }
  const ScaledPoint sp = scaled_point(12.0, 0.0, 0.0);
  const TermValue a = h_k_pathB(1, sp, kModel);
  const TermValue b = h_k_pathB_serial(1, sp, kModel);
  CHECK(rel(a.value, b.value) < 1e-12);
}

TEST_CASE("path A and path B agree at t = 12") {
  const ScaledPoint sp = scaled_point(12.0, 0.0, 0.0);
  const LogZeta z = LogZeta::from_exponent(sp.e);
  const double time = sp.ts / kModel.gamma;
  const cplx a = h_k_pathA(1, z, time, sp.x, kModel).value;
  const cplx b = h_k_pathB(1, sp, kModel).value;
  CHECK(rel(a, b) < 1e-4);
}

TEST_CASE("series agrees with simulation through the exact weight") {
  const double t = 3.0, e = -1.2;
  const SeriesResult r = tau_laplace(LogZeta::from_exponent(e), t, 0, kModel, 4, Path::B);
  CHECK(r.converged);
  const SeriesResult a = tau_laplace(LogZeta::from_exponent(e), t, 0, kModel, 2, Path::A);
  for (int k = 0; k < 2; ++k) CHECK(rel(a.terms[k].value, r.terms[k].value) < 1e-6);
  const std::vector<long> n = asep::sample_particle_counts(t, 0, kModel, asep::SimWindow::for_time(t), 40000, 8);
  std::vector<double> w(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) w[i] = laplace_weight(n[i], e, Tau(kModel.tau));
  const asep::McEstimate mc = asep::summarize(w, 8);
  CHECK(std::abs(r.real_total() - mc.mean) < 4.0 * mc.std_error);
}

TEST_CASE("tau-Laplace transform increases with the exponent") {
  double prev = -1.0;
  for (double e : {-2.5, -1.5, -0.5, 0.5, 1.5}) {
    const double v = tau_laplace(LogZeta::from_exponent(e), 2.0, 0, kModel, 2, Path::A).real_total();
    CHECK(v > prev);
    prev = v;
  }
}
