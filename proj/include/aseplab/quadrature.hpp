#pragma once

#include <complex>
#include <vector>

namespace aseplab {

using cplx = std::complex<double>;

struct GaussLegendre {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Cached Gauss-Legendre rule of order n (n >= 1).
const GaussLegendre& gauss_legendre(int n);

// Discretised contour: the integral of f along it is sum_i f(z[i]) * dz[i].
struct ContourNodes {
  std::vector<cplx> z;
  std::vector<cplx> dz;
  // conj_index[i] is the node equal to conj(z[i]) (with dz mirrored), or -1.
  std::vector<int> conj_index;

  std::size_t size() const { return z.size(); }
  void append(const ContourNodes& other);
};

// Positively oriented circle |z| = r with n equispaced trapezoid nodes.
ContourNodes circle_nodes(double radius, int n);

// Straight segment a -> b split into `panels` equal panels of Gauss-Legendre order `order`.
ContourNodes segment_nodes(cplx a, cplx b, int panels, int order);

// Fills conj_index for a node set whose mirror image under conjugation is itself.
void match_conjugates(ContourNodes& c, double tol = 1e-12);

}  // namespace aseplab
