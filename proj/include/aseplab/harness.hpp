#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aseplab/airy.hpp"
#include "aseplab/asep.hpp"
#include "aseplab/exact_series.hpp"

namespace aseplab::harness {

using asep::AsepParams;

// Scaled observation point. x and e are always derived from (t, alpha, r_tilde).
struct ScaledQuery {
  double t = 0.0;
  double alpha = 0.0;
  double r_tilde = 0.0;

  int x() const;                                   // floor(t^{2/3} alpha)
  double time(const AsepParams& params) const;     // t / gamma
  series::ScaledPoint point() const;
};

// e = -t/4 - (x - 1)/2 + t^{1/3} r_tilde.
double zeta_exponent(const ScaledQuery& sq);
series::LogZeta zeta(const ScaledQuery& sq);

enum class PathChoice { automatic, A, B };
const char* path_name(PathChoice p);
PathChoice parse_path(const std::string& s);

struct PrelimitOptions {
  series::LaplaceQuad quad;
  double path_b_above = 8.0;  // automatic choice uses path B for t at or above this
};

struct PrelimitValue {
  double value = 0.0;
  double quad_error = 0.0;
  series::SeriesResult series;
};

// E[e_tau(zeta tau^{N_x(t / gamma)})] through the truncated series.
PrelimitValue prelimit_cdf(const ScaledQuery& sq, const AsepParams& params, int k_max, PathChoice path,
                           const PrelimitOptions& opt = {});

// Monte Carlo mean of the exact transform weight of N_x(t / gamma).
asep::McEstimate mc_prelimit_cdf(const ScaledQuery& sq, const AsepParams& params, std::size_t n_paths,
                                 std::uint64_t seed);

// (t1, y1) = (2^{-1/3} alpha, 2^{4/3} r_tilde + 1{alpha <= 0} 2^{-2/3} alpha^2).
airy::Airy21Query airy_target_point(double alpha, double r_tilde);

struct GapOptions {
  PrelimitOptions prelimit;
  airy::Airy21Quad airy;
  std::size_t mc_paths = 0;  // 0 skips the Monte Carlo column
  std::uint64_t seed = 0x5eed;
};

struct GapRow {
  double t = 0.0, alpha = 0.0, r_tilde = 0.0;
  int x = 0;
  double e = 0.0;
  double prelimit = 0.0, prelimit_error = 0.0;
  double target = 0.0, target_error = 0.0;
  double gap = 0.0;
  std::string path;
  bool series_converged = false;
  bool has_mc = false;
  double mc = 0.0, mc_stderr = 0.0;
};

struct GapReport {
  double alpha = 0.0, r_tilde = 0.0;
  int k_max = 4;
  double tau = 0.0;
  std::vector<double> t_grid;
  std::vector<GapRow> rows;
  double target = 0.0;
  double target_full = 0.0;  // all orders of the target series
  bool nonincreasing = false;
  GapOptions options;

  nlohmann::json to_json() const;
};

// Gap between the prelimit value and the Airy_{2->1} target along an increasing t grid.
GapReport limit_gap(double alpha, double r_tilde, const std::vector<double>& t_grid, int k_max,
                    const AsepParams& params, const GapOptions& opt = {});

// limit_gap over a product grid; refuses the grid (QuadratureError) when the prelimit values or the
// targets fail to be nondecreasing in r_tilde at some (t, alpha).
std::vector<GapReport> gap_grid(const std::vector<double>& alphas, const std::vector<double>& r_tildes,
                                const std::vector<double>& t_grid, int k_max, const AsepParams& params,
                                const GapOptions& opt = {});

void write_gap_csv(std::ostream& out, const std::vector<GapReport>& reports);
nlohmann::json gap_json(const std::vector<GapReport>& reports);

}  // namespace aseplab::harness
