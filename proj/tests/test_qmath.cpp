#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "aseplab/errors.hpp"
#include "aseplab/qmath.hpp"
#include "aseplab/rng.hpp"

using namespace aseplab;
using qmath::Tau;

namespace {

cplx random_point(RandomStream& rng, double rmin, double rmax) {
  return std::polar(rmin + (rmax - rmin) * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
}

// Permutation expansion, independent of the LU path.
cplx det_leibniz(const qmath::ComplexMatrix& m) {
  const int k = m.size();
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  cplx total = 0.0;
  do {
    int inv = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) inv += p[i] > p[j];
    cplx prod = inv % 2 ? -1.0 : 1.0;
    for (int i = 0; i < k; ++i) prod *= m(i, p[i]);
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST_CASE("LU determinant agrees with the permutation expansion") {
  RandomStream rng(11, 0);
  for (int k = 1; k <= 6; ++k)
    for (int trial = 0; trial < 10; ++trial) {
      qmath::ComplexMatrix m(k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
      const cplx a = qmath::det_complex(m), b = det_leibniz(m);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
      CHECK(std::abs(a) <= qmath::hadamard_bound(m) * (1.0 + 1e-12));
    }
}

TEST_CASE("Cauchy determinants match their product formulas") {
  RandomStream rng(12, 0);
  for (auto v : {qmath::CauchyVariant::single, qmath::CauchyVariant::double_})
    for (int k = 1; k <= 6; ++k)
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> x(k), y(k);
        for (auto& a : x) a = random_point(rng, 0.5, 0.9);
        for (auto& b : y) b = random_point(rng, 0.1, 0.4);
        qmath::ComplexMatrix m(k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            m(i, j) = v == qmath::CauchyVariant::single ? 1.0 / (x[i] - y[j])
                                                        : 1.0 / ((x[i] - y[j]) * (1.0 - x[i] * y[j]));
        const cplx closed = qmath::cauchy_closed_form(x, y, v);
        CHECK(std::abs(qmath::det_complex(m) - closed) <= 1e-10 * std::abs(closed));
      }
}

TEST_CASE("Cauchy determinant of order 2 by hand") {
  const std::vector<cplx> x{2.0, 3.0}, y{0.0, 1.0};
  // det [[1/2, 1], [1/3, 1/2]] = 1/4 - 1/3
  CHECK(std::abs(qmath::cauchy_closed_form(x, y, qmath::CauchyVariant::single) - (0.25 - 1.0 / 3.0)) < 1e-15);
}

TEST_CASE("non-finite matrix entries are rejected") {
  qmath::ComplexMatrix m(2);
  m(0, 0) = std::nan("");
  CHECK_THROWS_AS(m.check_finite(), DomainError);
}

TEST_CASE("Euler pentagonal theorem for (tau; tau)_inf") {
  for (double tv : {0.005, 0.1, 0.5, 0.9}) {
    const Tau tau(tv);
    double pent = 0.0;
    for (int k = -60; k <= 60; ++k) pent += (k % 2 ? -1.0 : 1.0) * std::pow(tv, k * (3.0 * k - 1.0) / 2.0);
    CHECK(qmath::qpochhammer(tv, tau) == doctest::Approx(pent).epsilon(1e-13));
  }
}

TEST_CASE("q-binomial theorem: 1/(a; tau)_inf as a power series") {
  const Tau tau(0.3);
  const cplx a(0.2, 0.35);
  cplx sum = 0.0, term = 1.0;
  for (int n = 0; n < 80; ++n) {
    sum += term;
    term *= a / (1.0 - std::pow(0.3, n + 1));
  }
  CHECK(std::abs(1.0 / qmath::qpochhammer(a, tau) - sum) < 1e-14);
}

TEST_CASE("q-exponential: product and series agree for |x| < 1") {
  for (double tv : {0.01, 0.1, 0.5}) {
    const Tau tau(tv);
    for (double r : {0.1, 0.5, 0.9})
      for (int ph = 0; ph < 8; ++ph) {
        const cplx x = std::polar(r, 2.0 * std::numbers::pi * ph / 8.0);
        const cplx a = qmath::qexp(x, tau, qmath::QExpMode::product);
        const cplx b = qmath::qexp(x, tau, qmath::QExpMode::series);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
      }
  }
  CHECK_THROWS(qmath::qexp(cplx(1.5, 0.0), Tau(0.5), qmath::QExpMode::series));
}

TEST_CASE("q-exponential tends to exp as tau tends to 1") {
  const cplx x(0.3, -0.2);
  CHECK(std::abs(qmath::qexp(x, Tau(0.999), qmath::QExpMode::product, {1e-16, 100000}) - std::exp(x)) < 2e-3);
}

TEST_CASE("q-factorial") {
  const Tau tau(0.5);
  CHECK(qmath::qfactorial(0, tau) == doctest::Approx(1.0));
  CHECK(qmath::qfactorial(1, tau) == doctest::Approx(1.0));
  // [3]! = [1][2][3] with [n] = 1 + tau + ... + tau^{n-1}
  CHECK(qmath::qfactorial(3, tau) == doctest::Approx(1.0 * 1.5 * 1.75));
}

TEST_CASE("tau outside (0, 1) is rejected") {
  CHECK_THROWS_AS(Tau(0.0), DomainError);
  CHECK_THROWS_AS(Tau(1.0), DomainError);
  CHECK(Tau(0.25).pow(0.5) == doctest::Approx(0.5));
}
