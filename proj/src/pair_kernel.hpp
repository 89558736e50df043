#pragma once

// Tensor sums with the structure
//   (1/k!) sum over k pairs (i_a, j_a) of prod_a P[i_a][j_a] * det[M[i_a][j_b]]
//          * prod_{a<b} Aww[i_a][i_b] Azz[j_a][j_b] X[i_a][j_b] X[i_b][j_a]
// over a w-node set (rows) and a z-node set (columns).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "aseplab/quadrature.hpp"

namespace aseplab::series::detail {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct PairTables {
  Mat P, M, Aww, Azz, X;
  std::vector<int> conj_w, conj_z;  // may be empty
  int nw() const { return static_cast<int>(P.rows()); }
  int nz() const { return static_cast<int>(P.cols()); }
};

struct SampledSum {
  cplx value;
  double std_error = 0.0;
};

cplx pair_sum_k1(const PairTables& t);
cplx pair_sum_k2(const PairTables& t);
cplx pair_sum_k2_serial(const PairTables& t);
// Value of the k-pair integrand at one tuple, without the 1/k! factor.
cplx pair_point(const PairTables& t, const int* i, const int* j, int k);
SampledSum pair_sum_sampled(const PairTables& t, int k, std::size_t samples, std::uint64_t seed);

}  // namespace aseplab::series::detail
