#pragma once

#include <ostream>
#include <vector>

#include "aseplab/quadrature.hpp"

namespace aseplab::airy {

// Truncated wedge contour: rays a + r e^{-i phi} and a + r e^{i phi}, r in [0, arm_length],
// oriented with increasing imaginary part.
struct VContour {
  cplx vertex;
  double angle = 0.0;
  double arm_length = 0.0;
  int nodes_per_arm = 0;
  int order = 16;  // Gauss-Legendre order per panel; nodes_per_arm is a multiple of it

  ContourNodes nodes() const;
  // Upper arm only, from the vertex outwards.
  ContourNodes upper_arm() const;
};

// Ai(x) for |x| <= 30.
double airy_ai(double x);
// The two evaluation routes behind airy_ai, exposed for cross-checks.
double airy_ai_series(double x);   // |x| <= 12
double airy_ai_contour(double x);  // |x| <= 30

struct Airy21Query {
  double t1 = 0.0;
  double y1 = 0.0;
  // y1 - t1^2 1{t1 <= 0}
  double y_tilde() const { return t1 <= 0.0 ? y1 - t1 * t1 : y1; }
};

struct Airy21Quad {
  int order = 16;
  double panel = 0.5;     // panel length along each arm
  double log_cut = 32.0;  // arms end once the integrand is below exp(-log_cut) of its peak
  double range_tol = 1e-3;
};

// k_max value selecting the full determinant (all orders).
inline constexpr int kAllTerms = 0;

struct Airy21Result {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;
  std::vector<double> terms;  // I_1 .. I_k for truncated evaluations
  int k_max = 0;              // number of orders included
  double est_error = 0.0;
  bool converged = true;
  int w_nodes = 0, z_nodes = 0;
};

// P(A_{2->1}(t1) <= y1) = 1 + sum_{k <= k_max} I_k, or the full determinant when k_max = kAllTerms.
Airy21Result airy21_cdf(const Airy21Query& q, int k_max = 4, const Airy21Quad& quad = {});

// Extended kernel K_inf(s, x; t, y) on the displayed wedge contours.
cplx k_infinity(double s, double x, double t, double y, const Airy21Quad& quad = {});

struct FredholmQuad {
  int n_nodes = 40;
  double domain_length = 12.0;
  double stability_tol = 1e-6;  // allowed change under node doubling
  void validate() const;
};

// GUE and GOE Tracy-Widom distribution functions on s in [-10, 6].
double tw2_cdf(double s, const FredholmQuad& quad = {});
double tw1_cdf(double s, const FredholmQuad& quad = {});

// F1(4^{1/3} y~), with arguments below -10 replaced by -10. The result is never below the
// exact value, so G >= goe_bound(q) implies the bound at q.
double goe_bound(const Airy21Query& q, const FredholmQuad& quad = {});

struct CdfRow {
  double t1 = 0.0, y = 0.0, cdf = 0.0;
  int k_max = 0;
  double est_error = 0.0;
};

void write_cdf_csv(std::ostream& out, const std::vector<CdfRow>& rows);

}  // namespace aseplab::airy
