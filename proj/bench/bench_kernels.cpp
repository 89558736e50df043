// Serial reference vs OpenMP kernels. Prints one line per kernel with both timings,
// the speedup and the largest relative difference between the two results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <json.hpp>

#include "aseplab/asep.hpp"
#include "aseplab/exact_series.hpp"
#include "aseplab/parallel.hpp"

using namespace aseplab;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

nlohmann::json compare(const std::string& name, const std::function<cplx()>& serial,
                       const std::function<cplx()>& par, int reps) {
  cplx a, b;
  const double ts = seconds([&] { a = serial(); }, reps);
  const double tp = seconds([&] { b = par(); }, reps);
  const double diff = std::abs(a - b) / std::max(std::abs(a), 1e-300);
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2f  rel diff %.1e\n", name.c_str(), ts, tp, ts / tp,
              diff);
  return {{"kernel", name}, {"serial_s", ts}, {"parallel_s", tp}, {"speedup", ts / tp}, {"rel_diff", diff}};
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  const asep::AsepParams p = asep::AsepParams::from_tau(0.005);
  std::printf("workers: %d\n", parallel::max_threads());
  nlohmann::json out = nlohmann::json::array();

  const double t = 6.0;
  const asep::SimWindow w = asep::SimWindow::for_time(t);
  const asep::Observable f = [](const asep::AsepState& s) { return static_cast<double>(asep::particle_count(s, 0)); };
  out.push_back(compare(
      "mc_expectation 20000 paths", [&] { return cplx(asep::mc_expectation_serial(f, t, p, w, 20000, 1).mean); },
      [&] { return cplx(asep::mc_expectation(f, t, p, w, 20000, 1).mean); }, reps));

  const series::LogZeta z = series::LogZeta::from_exponent(-1.0);
  series::PathAQuad qa;
  qa.w_nodes = qa.z_nodes = 48;
  out.push_back(compare(
      "path A H_2 tensor (48 nodes)", [&] { return series::h_k_pathA_serial(2, z, 3.0, 0, p, qa).value; },
      [&] { return series::h_k_pathA(2, z, 3.0, 0, p, qa).value; }, reps));
  qa.samples = 100000;
  // sampled terms have no serial twin; compare one worker against all of them
  const int all = parallel::max_threads();
  out.push_back(compare(
      "path A H_3 sampled (1e5)",
      [&] {
        parallel::set_max_threads(1);
        const cplx v = series::h_k_pathA(3, z, 3.0, 0, p, qa).value;
        parallel::set_max_threads(all);
        return v;
      },
      [&] { return series::h_k_pathA(3, z, 3.0, 0, p, qa).value; }, reps));

  const series::ScaledPoint sp = series::scaled_point(12.0, 0.0, 0.0);
  out.push_back(compare(
      "path B H_1 (t=12)", [&] { return series::h_k_pathB_serial(1, sp, p).value; },
      [&] { return series::h_k_pathB(1, sp, p).value; }, reps));

  std::printf("%s\n", out.dump().c_str());
  return 0;
}
