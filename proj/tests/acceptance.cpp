// Acceptance run: one PASS/FAIL line per criterion, details indented below it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aseplab/airy.hpp"
#include "aseplab/asep.hpp"
#include "aseplab/cli.hpp"
#include "aseplab/exact_series.hpp"
#include "aseplab/harness.hpp"
#include "aseplab/parallel.hpp"

using namespace aseplab;

namespace {

const asep::AsepParams kModel = asep::AsepParams::from_tau(0.005);

struct Verdict {
  bool pass = false;
  std::string summary;
};

int g_failures = 0;

void run_criterion(int id, const char* title, double budget_s, const std::function<Verdict()>& body) {
  std::printf("-- criterion %d: %s\n", id, title);
  std::fflush(stdout);
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= budget_s;
  const bool pass = v.pass && in_time;
  if (!pass) ++g_failures;
  std::printf("%s criterion %d: %s [%.1f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", id, v.summary.c_str(), secs,
              budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Verdict from_suite(const std::vector<cli::CheckResult>& checks) {
  Verdict v{true, ""};
  for (const auto& c : checks) {
    std::printf("   %-24s worst %.3e  tol %.1e  %s\n", c.name.c_str(), c.worst, c.tolerance, c.pass ? "ok" : "FAILED");
    v.pass = v.pass && c.pass;
    v.summary += c.name + " " + fmt("%.2e", c.worst) + "; ";
  }
  return v;
}

Verdict criterion3() {
  const double t = 4.0;
  const int x = 0;
  Verdict v{true, ""};
  for (int m : {1, 2}) {
    const series::MomentResult r = series::moment_detailed(m, t, x, kModel);
    const double tau = kModel.tau;
    const asep::McEstimate mc = asep::mc_expectation(
        [tau, m, x](const asep::AsepState& s) {
          return std::pow(tau, m * static_cast<double>(asep::particle_count(s, x)));
        },
        t, kModel, asep::SimWindow::for_time(t), 1000000, 0x5eed + m);
    const double se = std::hypot(mc.std_error, r.quad_error);
    const double z = std::abs(r.value - mc.mean) / se;
    std::printf("   m=%d exact %.8f  mc %.8f +- %.2e  quad %.1e  |diff|/se %.2f\n", m, r.value, mc.mean, mc.std_error,
                r.quad_error, z);
    v.pass = v.pass && z < 4.0;
    v.summary += "m=" + std::to_string(m) + " " + fmt("%.2f se", z) + "; ";
  }
  return v;
}

Verdict criterion5() {
  const series::ScaledPoint sp = series::scaled_point(12.0, 0.0, 0.0);
  const series::LogZeta z = series::LogZeta::from_exponent(sp.e);
  const double time = sp.ts / kModel.gamma;
  Verdict v{true, ""};
  for (int k : {1, 2}) {
    const cplx a = series::h_k_pathA(k, z, time, sp.x, kModel).value;
    const cplx b = series::h_k_pathB(k, sp, kModel).value;
    const double rel = std::abs(a - b) / std::abs(b);
    std::printf("   k=%d  A %.12e  B %.12e  rel %.2e\n", k, a.real(), b.real(), rel);
    v.pass = v.pass && rel < 1e-4;
    v.summary += "k=" + std::to_string(k) + " rel " + fmt("%.2e", rel) + "; ";
  }
  return v;
}

Verdict criterion6() {
  const harness::ScaledQuery sq{10.0, 0.0, 0.0};
  const asep::McEstimate mc = harness::mc_prelimit_cdf(sq, kModel, 100000, 0x5eed);
  const harness::PrelimitValue pv = harness::prelimit_cdf(sq, kModel, 4, harness::PathChoice::automatic);
  const double z = std::abs(pv.value - mc.mean) / mc.std_error;
  std::printf("   t=10 x=%d e=%.4f  series(%s) %.8f (quad %.1e)  mc %.8f +- %.2e  |diff|/sigma %.2f\n", sq.x(),
              harness::zeta_exponent(sq), pv.series.path.c_str(), pv.value, pv.quad_error, mc.mean, mc.std_error, z);
  const harness::PrelimitValue pa = harness::prelimit_cdf(sq, kModel, 4, harness::PathChoice::A);
  std::printf("   path A total %.8f (quad %.1e), |diff|/sigma %.2f\n", pa.value, pa.quad_error,
              std::abs(pa.value - mc.mean) / mc.std_error);
  return {z < 4.0, fmt("|series - mc| = %.2f sigma", z)};
}

Verdict criterion7() {
  Verdict v{true, ""};
  // values in [0, 1], monotone in y, GOE lower bound
  double worst_goe = 1.0;
  bool range_ok = true, mono_ok = true;
  for (double t1 : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
    double prev = -1.0;
    std::printf("   t1=%+.0f:", t1);
    for (double y = -3.0; y <= 3.0; y += 0.5) {
      const airy::Airy21Query q{t1, y};
      const airy::Airy21Result r = airy::airy21_cdf(q, airy::kAllTerms);
      range_ok = range_ok && r.raw >= -1e-9 && r.raw <= 1.0 + 1e-9;
      mono_ok = mono_ok && r.value > prev;
      prev = r.value;
      if (y == std::floor(y)) {
        const double b = airy::goe_bound(q);
        worst_goe = std::min(worst_goe, r.value - b);
        std::printf(" %.4f", r.value);
      }
    }
    std::printf("\n");
  }
  const bool goe_ok = worst_goe >= -1e-7;
  std::printf("   range %s, strictly increasing %s, min(G - F1 bound) %.3e\n", range_ok ? "ok" : "FAILED",
              mono_ok ? "ok" : "FAILED", worst_goe);
  double worst_f2 = 0.0;
  for (double y = -4.0; y <= 2.0; y += 0.5) {
    const double g = airy::airy21_cdf({-6.0, y}, airy::kAllTerms).value;
    const double f2 = airy::tw2_cdf(y);
    worst_f2 = std::max(worst_f2, std::abs(g - f2));
    std::printf("   G(-6, %+.1f) %.6f  F2 %.6f  diff %.3e\n", y, g, f2, g - f2);
  }
  const bool f2_ok = worst_f2 < 5e-3;
  v.pass = range_ok && mono_ok && goe_ok && f2_ok;
  v.summary = std::string("range ") + (range_ok ? "ok" : "no") + ", monotone " + (mono_ok ? "ok" : "no") +
              ", GOE bound " + (goe_ok ? "ok" : "no") + ", sup|G(-6,y) - F2(y)| " + fmt("%.3e", worst_f2) +
              " (tol 5e-3)";
  return v;
}

Verdict criterion8() {
  const std::vector<double> alphas{-1.0, 0.0, 1.0}, rtildes{-0.5, 0.0, 0.5}, tgrid{10.0, 20.0, 40.0};
  const std::vector<harness::GapReport> reps = harness::gap_grid(alphas, rtildes, tgrid, 4, kModel);
  int ok = 0;
  std::string bad;
  for (const auto& r : reps) {
    std::printf("   alpha=%+.0f r~=%+.1f target %.6f:", r.alpha, r.r_tilde, r.target);
    for (const auto& row : r.rows)
      std::printf("  t=%.0f pre %.6f (q %.0e%s) gap %.5f", row.t, row.prelimit, row.prelimit_error,
                  row.series_converged ? "" : ", unconv", row.gap);
    std::printf("  %s\n", r.nonincreasing ? "nonincreasing" : "NOT nonincreasing");
    if (r.nonincreasing)
      ++ok;
    else
      bad += "(" + fmt("%+.0f", r.alpha) + "," + fmt("%+.1f", r.r_tilde) + ")";
  }
  return {ok == static_cast<int>(reps.size()),
          std::to_string(ok) + "/" + std::to_string(reps.size()) + " gap sequences nonincreasing" +
              (bad.empty() ? "" : "; failing " + bad)};
}

std::string run_cli(std::vector<std::string> args, int threads) {
  args.insert(args.begin(), "aseplab");
  args.push_back("--threads");
  args.push_back(std::to_string(threads));
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::RunConfig cfg;
  if (auto code = cli::parse(static_cast<int>(argv.size()), argv.data(), cfg, out, err))
    throw std::runtime_error("parse failed");
  const int code = cli::run(cfg, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

Verdict criterion9() {
  const std::vector<std::vector<std::string>> cmds = {
      {"simulate", "--t", "6", "--x", "2", "--npaths", "5000", "--seed", "11"},
      {"simulate", "--t", "2", "--steps", "4", "--seed", "11"},
      {"moment", "--m", "2", "--t", "2", "--npaths", "5000", "--seed", "11"},
      {"laplace", "--t", "4", "--e", "-1", "--kmax", "3", "--path", "A", "--npaths", "2000", "--seed", "11"},
      {"laplace", "--t", "12", "--alpha", "0", "--rtilde", "0", "--kmax", "3", "--path", "B", "--seed", "11",
       "--format", "json"},
      {"airy21", "--t1", "-1,1", "--y", "-1,0.5", "--kmax", "3"},
      {"tw", "--beta", "1", "--s", "-2,0"},
  };
  const int saved = parallel::max_threads();
  Verdict v{true, ""};
  int same = 0;
  for (const auto& c : cmds) {
    const std::string ref = run_cli(c, 1);
    bool eq = run_cli(c, 1) == ref;
    for (int threads : {4, 8}) eq = eq && run_cli(c, threads) == ref;
    std::printf("   %-10s %zu bytes  %s\n", c[0].c_str(), ref.size(), eq ? "identical" : "DIFFERENT");
    same += eq;
    v.pass = v.pass && eq;
  }
  parallel::set_max_threads(saved);
  v.summary = std::to_string(same) + "/" + std::to_string(cmds.size()) +
              " commands byte-identical across repeats and 1, 4, 8 threads";
  return v;
}

}  // namespace

int main() {
  run_criterion(1, "Cauchy and double-Cauchy determinants", 5.0,
                [] { return from_suite(cli::run_suite("cauchy", 0x5eed)); });
  run_criterion(2, "q-exponential product vs series", 1.0, [] { return from_suite(cli::run_suite("qexp", 0x5eed)); });
  run_criterion(3, "moments vs Monte Carlo (tau=0.005, t=4, x=0)", 300.0, criterion3);
  run_criterion(4, "Mellin-Barnes k=1 equivalence", 30.0,
                [] { return from_suite(cli::run_suite("mellin_barnes", 0x5eed)); });
  run_criterion(5, "path A vs path B (t=12, alpha=0, r~=0)", 120.0, criterion5);
  run_criterion(6, "tau-Laplace series vs weighted Monte Carlo (t=10)", 300.0, criterion6);
  run_criterion(7, "Airy_{2->1} distribution properties", 600.0, criterion7);
  run_criterion(8, "gap trend over t in {10, 20, 40}", 1800.0, criterion8);
  run_criterion(9, "determinism across thread counts", 600.0, criterion9);
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
