#pragma once

#include <complex>
#include <span>
#include <vector>

#include "aseplab/quadrature.hpp"

namespace aseplab::qmath {

// Deformation parameter tau in (0, 1).
class Tau {
 public:
  explicit Tau(double value);
  double value() const { return value_; }
  double log() const { return log_; }
  double pow(double e) const;

 private:
  double value_;
  double log_;
};

struct TruncationPolicy {
  double abs_tol = 1e-16;
  int max_terms = 10000;
  void validate() const;
};

// (a; tau)_inf = prod_{n >= 0} (1 - a tau^n).
cplx qpochhammer(cplx a, Tau tau, const TruncationPolicy& policy = {});
double qpochhammer(double a, Tau tau, const TruncationPolicy& policy = {});

// k_tau! = prod_{a=1}^k (1 - tau^a) / (1 - tau)^k.
double qfactorial(int k, Tau tau);

enum class QExpMode { product, series };

// e_tau(x) = 1 / ((1 - tau) x; tau)_inf. The series mode requires |x| < 1.
cplx qexp(cplx x, Tau tau, QExpMode mode, const TruncationPolicy& policy = {});

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int k);
  ComplexMatrix(int k, std::vector<cplx> row_major);

  int size() const { return k_; }
  cplx& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * k_ + c]; }
  cplx operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * k_ + c]; }
  const std::vector<cplx>& data() const { return data_; }
  // Throws DomainError on a non-finite entry.
  void check_finite() const;

 private:
  int k_ = 0;
  std::vector<cplx> data_;
};

cplx det_complex(const ComplexMatrix& m);

// Determinant of a row-major k x k block, overwritten by its LU factors.
cplx det_inplace(cplx* a, int k);

enum class CauchyVariant { single, double_ };

// single: det[1/(x_i - y_j)]; double_: det[1/((x_i - y_j)(1 - x_i y_j))], by product formula.
cplx cauchy_closed_form(std::span<const cplx> x, std::span<const cplx> y, CauchyVariant v);

// prod_i ||row_i||_2, an upper bound for |det m|.
double hadamard_bound(const ComplexMatrix& m);

}  // namespace aseplab::qmath
