#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aseplab/asep.hpp"
#include "aseplab/qmath.hpp"
#include "aseplab/quadrature.hpp"

namespace aseplab::series {

using asep::AsepParams;
using qmath::Tau;

// zeta = -(1 - tau)^{-1} tau^e, stored through the exponent e so that very large
// or very small |zeta| stay representable.
struct LogZeta {
  double exponent = 0.0;

  static LogZeta from_exponent(double e) { return {e}; }
  static LogZeta from_value(double zeta, Tau tau);
  double log_abs(Tau tau) const;
  std::optional<double> value(Tau tau) const;
  // log(-u) where u = (1 - tau) zeta, i.e. e log tau.
  double log_minus_u(Tau tau) const { return exponent * tau.log(); }
};

struct TauCondition {
  double rho = 0.0;
  // Factor multiplying the model-dependent constant in the series bound: e tau^{1/8} / (1 - tau^{1/2}).
  double a_const = 0.0;
  bool ok = false;
};

TauCondition tau_small_check(Tau tau);

// (time, site, model) at which moments and transforms are evaluated.
struct ModelPoint {
  AsepParams params;
  double time = 0.0;
  int x = 0;
};

// The contour formulas below, written with site parameter x_f, describe tau^{N_{x_f - 1}} for
// particles started on the positive even integers. Public entry points take the model site x
// and bind x_f = formula_site(x).
int formula_site(int x);

// Single- and two-variable factors of the moment integrand; mp.x is the formula site x_f.
cplx factor_f(const ModelPoint& mp, cplx w, int n);
cplx factor_g(const ModelPoint& mp, cplx w, int n);
cplx factor_h(const ModelPoint& mp, cplx w1, cplx w2, int n1, int n2);

struct MomentFactors {
  cplx f, g, h;
};
MomentFactors moment_factors(const ModelPoint& mp, cplx w, int n, cplx w2, int n2);

// Full moment integrand F(n, w) for a composition n.
cplx moment_integrand(const ModelPoint& mp, std::span<const int> n, std::span<const cplx> w);

struct CircleQuad {
  int nodes = 64;
  // Tensor grids larger than this many points switch to sampled quadrature.
  std::size_t tensor_budget = std::size_t{1} << 26;
  std::size_t samples = 400000;
  std::uint64_t seed = 0x5eed;
};

struct MomentResult {
  double value = 0.0;
  double imag_residual = 0.0;
  double quad_error = 0.0;
  std::vector<cplx> nu;  // nu_{k,m}, k = 1..m
};

// E[tau^{m N_x(t)}] under half-flat initial data, m in [0, 6].
MomentResult moment_detailed(int m, double t, int x, const AsepParams& params, const CircleQuad& quad = {});
double moment(int m, double t, int x, const AsepParams& params, const CircleQuad& quad = {});

// Sum over n >= 1 of zeta^n (2 pi i)^{-1} oint F(n, w) dw, the k = 1 term written as an n-series.
cplx mellin_barnes_k1_nsum(const LogZeta& zeta, double t, int x, const AsepParams& params,
                           const CircleQuad& quad = {}, int n_max = 200);

struct SKernelValue {
  cplx value;
  double tail_bound = 0.0;
  int m_cut = 0;
};

// S(w, z; u, tau) from explicit branches of log w and log z.
SKernelValue s_kernel_logs(cplx log_w, cplx log_z, const LogZeta& u, Tau tau, int m_cut);
SKernelValue s_kernel(cplx w, cplx z, const LogZeta& u, Tau tau, int m_cut);
// Chooses m_cut so that the tail bound is below abs_tol.
SKernelValue s_kernel_auto(cplx w, cplx z, const LogZeta& u, Tau tau, double abs_tol = 1e-16);

struct TermValue {
  cplx value;
  double quad_error = 0.0;
  std::string method;  // "tensor" or "sampled"
};

struct PathAQuad {
  int w_nodes = 64;
  int z_nodes = 64;
  int m_cut = 0;  // 0 selects automatically
  std::size_t samples = 400000;
  std::uint64_t seed = 0x5eed;
};

struct PathBQuad {
  double epsilon = 0.0;  // 0 selects min(0.1, |log tau| / 20)
  int v_order = 16;      // Gauss-Legendre order on each V-arm
  int arm_order = 12;    // order per panel on vertical arms
  double arm_panel = 0.3;  // panel length in steepest-descent units
  double arm_cut = 40.0;   // drop arm tails below exp(-arm_cut) of the peak
  int m_cut = 0;
  std::size_t samples = 400000;
  std::uint64_t seed = 0x5eed;
};

// Tau-Laplace series term H_k through the circular contours.
TermValue h_k_pathA(int k, const LogZeta& zeta, double t, int x, const AsepParams& params, const PathAQuad& quad = {});
TermValue h_k_pathA_serial(int k, const LogZeta& zeta, double t, int x, const AsepParams& params,
                           const PathAQuad& quad = {});

// Scaled variables: model time t_s / gamma, model site x, exponent e.
struct ScaledPoint {
  double ts = 0.0;
  int x = 0;
  double e = 0.0;
  double r_tilde() const;
};

ScaledPoint scaled_point(double t, double alpha, double r_tilde);

// H_k through the steepest-descent contours.
TermValue h_k_pathB(int k, const ScaledPoint& sp, const AsepParams& params, const PathBQuad& quad = {});
TermValue h_k_pathB_serial(int k, const ScaledPoint& sp, const AsepParams& params, const PathBQuad& quad = {});
TermValue h_k_pathB(int k, double t, double alpha, double r_tilde, const AsepParams& params,
                    const PathBQuad& quad = {});

// F(z) = 1/(1 + e^z) + z/4 - 1/2.
cplx steepest_F(cplx z);

enum class Path { A, B };

struct SeriesTerm {
  int k = 0;
  cplx value;
  double quad_error = 0.0;
  std::string method;
};

struct SeriesResult {
  std::vector<SeriesTerm> terms;
  cplx total;
  double abs_tol = 1e-4;
  double decay_ratio = 0.0;
  bool converged = false;
  bool tau_small_ok = false;
  double rho = 0.0;
  std::string path;

  double real_total() const;
  nlohmann::json to_json() const;
};

struct LaplaceQuad {
  PathAQuad a;
  PathBQuad b;
  double abs_tol = 1e-4;
};

// E[e_tau(zeta tau^{N_x(t)})] = 1 + sum_k H_k, truncated at k_max <= 4.
SeriesResult tau_laplace(const LogZeta& zeta, double t, int x, const AsepParams& params, int k_max, Path path,
                         const LaplaceQuad& quad = {});

// Exact transform of a deterministic count: 1 / ((1 - tau) zeta tau^N; tau)_inf.
double laplace_weight(long n, double e, Tau tau);

}  // namespace aseplab::series
