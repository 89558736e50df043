#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace aseplab::cli {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string command;  // simulate, moment, laplace, airy21, tw, limit, validate
  double tau = 0.005;
  double t = 4.0;
  int x = 0;
  double alpha = 0.0;
  double rtilde = 0.0;
  int m = 1;
  int kmax = 4;
  int nodes = 64;
  std::size_t npaths = 0;
  std::uint64_t seed = 0x5eed;
  std::string out_path;
  std::string format = "csv";
  int threads = 0;

  // laplace
  std::optional<double> e;  // zeta exponent; scaled binding from (t, alpha, rtilde) when absent
  std::string path = "auto";
  // simulate
  int steps = 0;  // > 0 writes a JSONL trajectory of the first path
  // airy21 / tw / limit grids
  std::vector<double> t1{0.0};
  std::vector<double> y{-2.0, -1.0, 0.0, 1.0, 2.0};
  bool all_orders = false;
  int beta = 2;
  std::vector<double> s{-3.0, -2.0, -1.0, 0.0, 1.0};
  std::vector<double> alphas{-1.0, 0.0, 1.0};
  std::vector<double> rtildes{-0.5, 0.0, 0.5};
  std::vector<double> tgrid{10.0, 20.0, 40.0};
  // validate
  std::string suite = "identities";

  // Throws ConfigError on invalid values.
  void validate() const;
};

// Parses the command line. Returns an exit code when parsing alone ends the run (help or a flag error).
std::optional<int> parse(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out, std::ostream& err);

// Runs one command. Results go to cfg.out_path when set, otherwise to `out`; warnings and errors go to `err`
// as single JSON lines. Exit 0 on success, 2 configuration or domain error, 3 numeric or quadrature failure
// (including a failed validate check), 4 non-convergence.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv);

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst observed error measure
  double tolerance = 0.0;
};

// Named check suites: "identities" (= "cauchy" + "qexp" + "mellin_barnes"), "airy" and "all".
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace aseplab::cli
