#include "aseplab/asep.hpp"

#include <cmath>
#include <sstream>

#include "aseplab/errors.hpp"
#include "aseplab/parallel.hpp"

namespace aseplab::asep {

AsepParams AsepParams::from_p(double p) {
  if (!(p > 0.0 && p < 0.5)) throw DomainError("p must lie in (0, 1/2)");
  AsepParams a;
  a.p = p;
  a.q = 1.0 - p;
  a.tau = p / a.q;
  a.gamma = a.q - a.p;
  return a;
}

AsepParams AsepParams::from_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0, 1)");
  return from_p(tau / (1.0 + tau));
}

SimWindow SimWindow::for_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  const int half = static_cast<int>(std::ceil(3.0 * t)) + 50;
  return {-half, half};
}

AsepState::AsepState(SimWindow w) : window_(w) {
  if (w.right < w.left) throw ConfigError("empty simulation window");
  occ_.assign(static_cast<std::size_t>(w.width()), 0);
}

int AsepState::occupied(int x) const {
  if (!window_.contains(x)) throw DomainError("site outside the simulation window");
  return occ_[static_cast<std::size_t>(x - window_.left)];
}

void AsepState::place(int x) {
  if (!window_.contains(x)) throw DomainError("site outside the simulation window");
  auto& c = occ_[static_cast<std::size_t>(x - window_.left)];
  if (c) throw DomainError("site already occupied");
  c = 1;
  positions_.push_back(x);
}

AsepState init_half_flat(const SimWindow& w) {
  AsepState s(w);
  for (int x = std::max(2, w.left); x <= w.right; ++x)
    if (x % 2 == 0) s.place(x);
  return s;
}

void advance(AsepState& s, double t, const AsepParams& params, RandomStream& rng) {
  if (t < s.time_) throw DomainError("cannot advance backwards in time");
  const std::size_t n = s.positions_.size();
  if (n == 0) {
    s.time_ = t;
    return;
  }
  const double rate = static_cast<double>(n);
  const int left = s.window_.left, right = s.window_.right;
  std::uint8_t* occ = s.occ_.data();
  for (;;) {
    const double dt = rng.exponential(rate);
    if (s.time_ + dt >= t) {
      s.time_ = t;
      return;
    }
    s.time_ += dt;
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(rng.uniform() * rate), n - 1);
    const int from = s.positions_[i];
    const int to = rng.uniform() < params.p ? from + 1 : from - 1;
    if (to < left || to > right || occ[to - left]) continue;
    occ[from - left] = 0;
    occ[to - left] = 1;
    s.positions_[i] = to;
    if (from == 1 && to == 0) ++s.flux0_;
    if (from == 0 && to == 1) --s.flux0_;
  }
}

AsepState simulate_to(AsepState s, double t, const AsepParams& params, std::uint64_t seed, std::uint64_t stream) {
  RandomStream rng(seed, stream);
  advance(s, t, params, rng);
  return s;
}

long particle_count(const AsepState& s, int x) {
  if (!s.window().contains(x)) throw DomainError("site outside the simulation window");
  long n = 0;
  for (int p : s.particles())
    if (p <= x) ++n;
  return n;
}

long height(const AsepState& s, int x) { return 2 * particle_count(s, x) - x; }

long height_from_flux(const AsepState& s, int x) {
  if (!s.window().contains(x)) throw DomainError("site outside the simulation window");
  long h = 2 * s.flux0();
  // hat eta = 2 eta - 1
  if (x > 0)
    for (int y = 1; y <= x; ++y) h += 2 * s.occupied(y) - 1;
  else
    for (int y = x + 1; y <= 0; ++y) h -= 2 * s.occupied(y) - 1;
  return h;
}

McEstimate summarize(std::span<const double> values, std::uint64_t seed) {
  McEstimate e;
  e.n_paths = values.size();
  e.seed = seed;
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.std_error = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return e;
}

McEstimate mc_expectation(const Observable& f, double t, const AsepParams& params, const SimWindow& w,
                          std::size_t n_paths, std::uint64_t seed) {
  if (n_paths == 0) throw ConfigError("need at least one path");
  const AsepState init = init_half_flat(w);
  std::vector<double> vals(n_paths);
  parallel::for_each_index(n_paths, [&](std::size_t i) {
    AsepState s = init;
    RandomStream rng(seed, i);
    advance(s, t, params, rng);
    vals[i] = f(s);
  });
  return summarize(vals, seed);
}

McEstimate mc_expectation_serial(const Observable& f, double t, const AsepParams& params, const SimWindow& w,
                                 std::size_t n_paths, std::uint64_t seed) {
  if (n_paths == 0) throw ConfigError("need at least one path");
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    AsepState s = simulate_to(init_half_flat(w), t, params, seed, i);
    const double v = f(s);
    sum += v;
    sumsq += v * v;
  }
  const double n = static_cast<double>(n_paths);
  McEstimate e;
  e.n_paths = n_paths;
  e.seed = seed;
  e.mean = sum / n;
  e.std_error = n_paths > 1 ? std::sqrt(std::max(0.0, sumsq - n * e.mean * e.mean) / (n - 1.0) / n) : 0.0;
  return e;
}

std::vector<long> sample_particle_counts(double t, int x, const AsepParams& params, const SimWindow& w,
                                         std::size_t n_paths, std::uint64_t seed) {
  if (!w.contains(x)) throw DomainError("query site outside the simulation window");
  const AsepState init = init_half_flat(w);
  std::vector<long> out(n_paths);
  parallel::for_each_index(n_paths, [&](std::size_t i) {
    AsepState s = init;
    RandomStream rng(seed, i);
    advance(s, t, params, rng);
    out[i] = particle_count(s, x);
  });
  return out;
}

nlohmann::json snapshot_json(const AsepState& s) {
  nlohmann::json runs = nlohmann::json::array();
  const SimWindow& w = s.window();
  int cur = s.occupied(w.left), len = 0;
  for (int x = w.left; x <= w.right; ++x) {
    const int v = s.occupied(x);
    if (v == cur) {
      ++len;
    } else {
      runs.push_back({cur, len});
      cur = v;
      len = 1;
    }
  }
  runs.push_back({cur, len});
  return {{"time", s.time()},
          {"window", {w.left, w.right}},
          {"occupancy", {{"start", w.left}, {"runs", runs}}},
          {"flux0", s.flux0()}};
}

std::string trajectory_jsonl(double t, int steps, const AsepParams& params, const SimWindow& w, std::uint64_t seed) {
  if (steps < 1) throw ConfigError("trajectory needs at least one step");
  AsepState s = init_half_flat(w);
  RandomStream rng(seed, 0);
  std::ostringstream os;
  os << snapshot_json(s).dump() << '\n';
  for (int k = 1; k <= steps; ++k) {
    advance(s, t * k / steps, params, rng);
    os << snapshot_json(s).dump() << '\n';
  }
  return os.str();
}

}  // namespace aseplab::asep
