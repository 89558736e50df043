#include "aseplab/qmath.hpp"

#include <cmath>
#include <string>

#include "aseplab/errors.hpp"

namespace aseplab::qmath {

Tau::Tau(double value) : value_(value), log_(0.0) {
  if (!(value > 0.0 && value < 1.0)) throw DomainError("tau must lie in (0, 1), got " + std::to_string(value));
  log_ = std::log(value);
}

double Tau::pow(double e) const { return std::exp(e * log_); }

void TruncationPolicy::validate() const {
  if (!(abs_tol > 0.0) || max_terms < 1) throw ConfigError("truncation policy needs abs_tol > 0 and max_terms >= 1");
}

cplx qpochhammer(cplx a, Tau tau, const TruncationPolicy& policy) {
  cplx prod(1.0, 0.0);
  cplx term = a;
  const double t = tau.value();
  for (int n = 0; n < policy.max_terms; ++n) {
    if (std::abs(term) < policy.abs_tol) return prod;
    prod *= 1.0 - term;
    term *= t;
  }
  throw ConvergenceError("q-Pochhammer product did not reach tolerance within max_terms");
}

double qpochhammer(double a, Tau tau, const TruncationPolicy& policy) {
  double prod = 1.0;
  double term = a;
  const double t = tau.value();
  for (int n = 0; n < policy.max_terms; ++n) {
    if (std::abs(term) < policy.abs_tol) return prod;
    prod *= 1.0 - term;
    term *= t;
  }
  throw ConvergenceError("q-Pochhammer product did not reach tolerance within max_terms");
}

double qfactorial(int k, Tau tau) {
  if (k < 0) throw DomainError("q-factorial needs k >= 0");
  const double t = tau.value();
  double prod = 1.0, tp = 1.0;
  for (int a = 1; a <= k; ++a) {
    tp *= t;
    prod *= (1.0 - tp) / (1.0 - t);
  }
  return prod;
}

cplx qexp(cplx x, Tau tau, QExpMode mode, const TruncationPolicy& policy) {
  policy.validate();
  const double t = tau.value();
  if (mode == QExpMode::product) {
    cplx term = (1.0 - t) * x;
    cplx prod(1.0, 0.0);
    for (int n = 0; n < policy.max_terms; ++n) {
      if (std::abs(term) < policy.abs_tol) return 1.0 / prod;
      const cplx f = 1.0 - term;
      if (std::abs(f) < 1e-14) throw PoleError("q-exponential evaluated at a pole");
      prod *= f;
      term *= t;
    }
    throw ConvergenceError("q-exponential product did not converge");
  }
  if (!(std::abs(x) < 1.0)) throw DomainError("q-exponential series needs |x| < 1");
  cplx sum(1.0, 0.0);
  cplx term(1.0, 0.0);
  double tp = 1.0;
  for (int k = 1; k < policy.max_terms; ++k) {
    tp *= t;
    term *= x * (1.0 - t) / (1.0 - tp);
    sum += term;
    if (std::abs(term) < policy.abs_tol) return sum;
  }
  throw ConvergenceError("q-exponential series did not converge");
}

ComplexMatrix::ComplexMatrix(int k) : k_(k), data_(static_cast<std::size_t>(k) * k) {
  if (k < 1) throw DomainError("matrix size must be >= 1");
}

ComplexMatrix::ComplexMatrix(int k, std::vector<cplx> row_major) : k_(k), data_(std::move(row_major)) {
  if (k < 1 || data_.size() != static_cast<std::size_t>(k) * k) throw DomainError("matrix data does not match size");
}

void ComplexMatrix::check_finite() const {
  for (const cplx& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("non-finite matrix entry");
}

cplx det_inplace(cplx* a, int k) {
  cplx det(1.0, 0.0);
  for (int c = 0; c < k; ++c) {
    int piv = c;
    double best = std::abs(a[c * k + c]);
    for (int r = c + 1; r < k; ++r) {
      const double v = std::abs(a[r * k + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return cplx(0.0, 0.0);
    if (piv != c) {
      for (int j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
      det = -det;
    }
    const cplx d = a[c * k + c];
    det *= d;
    for (int r = c + 1; r < k; ++r) {
      const cplx f = a[r * k + c] / d;
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = c + 1; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
    }
  }
  return det;
}

cplx det_complex(const ComplexMatrix& m) {
  m.check_finite();
  std::vector<cplx> a = m.data();
  return det_inplace(a.data(), m.size());
}

cplx cauchy_closed_form(std::span<const cplx> x, std::span<const cplx> y, CauchyVariant v) {
  if (x.size() != y.size() || x.empty()) throw DomainError("Cauchy determinant needs equal, nonzero lengths");
  const std::size_t k = x.size();
  cplx num(1.0, 0.0), den(1.0, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const cplx d = x[i] - y[j];
      if (std::abs(d) <= 1e-300) throw PoleError("Cauchy determinant with coincident x_i = y_j");
      den *= d;
      if (v == CauchyVariant::double_) {
        const cplx e = 1.0 - x[i] * y[j];
        if (std::abs(e) <= 1e-300) throw PoleError("double Cauchy determinant with x_i y_j = 1");
        den *= e;
      }
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      num *= (x[i] - x[j]) * (y[j] - y[i]);
      if (v == CauchyVariant::double_) num *= (1.0 - x[i] * x[j]) * (1.0 - y[i] * y[j]);
    }
  return num / den;
}

double hadamard_bound(const ComplexMatrix& m) {
  double b = 1.0;
  for (int r = 0; r < m.size(); ++r) {
    double s = 0.0;
    for (int c = 0; c < m.size(); ++c) s += std::norm(m(r, c));
    b *= std::sqrt(s);
  }
  return b;
}

}  // namespace aseplab::qmath
