#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aseplab/rng.hpp"

namespace aseplab::asep {

struct AsepParams {
  double p = 0.0;
  double q = 1.0;
  double tau = 0.0;
  double gamma = 1.0;

  static AsepParams from_p(double p);
  static AsepParams from_tau(double tau);
};

struct SimWindow {
  int left = 0;
  int right = 0;

  // Default window +-(ceil(3t) + 50).
  static SimWindow for_time(double t);
  int width() const { return right - left + 1; }
  bool contains(int x) const { return x >= left && x <= right; }
};

class AsepState {
 public:
  AsepState() = default;
  explicit AsepState(SimWindow w);

  const SimWindow& window() const { return window_; }
  double time() const { return time_; }
  long flux0() const { return flux0_; }
  int occupied(int x) const;
  std::span<const int> particles() const { return positions_; }

  void place(int x);

  friend void advance(AsepState& s, double t, const AsepParams& params, RandomStream& rng);

 private:
  SimWindow window_;
  std::vector<std::uint8_t> occ_;
  std::vector<int> positions_;
  double time_ = 0.0;
  long flux0_ = 0;
};

// eta_0(x) = 1{x even, x >= 2} restricted to the window.
AsepState init_half_flat(const SimWindow& w);

// Continuous-time evolution up to time t (each particle rings at rate 1, then jumps
// right with probability p or left with probability q, blocked by exclusion and the window edges).
void advance(AsepState& s, double t, const AsepParams& params, RandomStream& rng);
AsepState simulate_to(AsepState s, double t, const AsepParams& params, std::uint64_t seed,
                      std::uint64_t stream = 0);

// N_x = number of particles at sites <= x.
long particle_count(const AsepState& s, int x);
// h = 2 N_x - x.
long height(const AsepState& s, int x);
// Height generated from the flux through the bond (0, 1).
long height_from_flux(const AsepState& s, int x);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

using Observable = std::function<double(const AsepState&)>;

// Path i uses RandomStream(seed, i).
McEstimate mc_expectation(const Observable& f, double t, const AsepParams& params, const SimWindow& w,
                          std::size_t n_paths, std::uint64_t seed);
McEstimate mc_expectation_serial(const Observable& f, double t, const AsepParams& params, const SimWindow& w,
                                 std::size_t n_paths, std::uint64_t seed);

// N_x at time t for each path.
std::vector<long> sample_particle_counts(double t, int x, const AsepParams& params, const SimWindow& w,
                                         std::size_t n_paths, std::uint64_t seed);

// Mean and standard error of f over samples, summed in fixed order.
McEstimate summarize(std::span<const double> values, std::uint64_t seed);

nlohmann::json snapshot_json(const AsepState& s);

// One JSON line per snapshot at times t_k = k t / steps, k = 0..steps.
std::string trajectory_jsonl(double t, int steps, const AsepParams& params, const SimWindow& w,
                             std::uint64_t seed);

}  // namespace aseplab::asep
