#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aseplab/cli.hpp"

using namespace aseplab;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args, int threads = 0) {
  args.insert(args.begin(), "aseplab");
  if (threads > 0) {
    args.push_back("--threads");
    args.push_back(std::to_string(threads));
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::RunConfig cfg;
  Outcome o;
  if (auto code = cli::parse(static_cast<int>(argv.size()), argv.data(), cfg, out, err))
    o.code = *code;
  else
    o.code = cli::run(cfg, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream is(csv);
  std::string l;
  while (std::getline(is, l))
    if (!l.empty() && l[0] != '#') lines.push_back(l);
  return lines;
}

}  // namespace

TEST_CASE("zeroth moment is exactly one") {
  const Outcome o = invoke({"moment", "--m", "0"});
  CHECK(o.code == 0);
  const auto lines = data_lines(o.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "m,t,x,value,imag_residual,quad_error,mc,mc_stderr");
  CHECK(lines[1].rfind("0,4.0,0,1.0,", 0) == 0);
}

TEST_CASE("json output carries configuration metadata") {
  const Outcome o = invoke({"tw", "--beta", "2", "--s", "-1.8047", "--format", "json"});
  CHECK(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["meta"]["config"]["beta"] == 2);
  CHECK(j["rows"][0]["cdf"].get<double>() == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("flag errors exit with the configuration code") {
  CHECK(invoke({"moment", "--bogus"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"moment", "--format", "xml"}).code == 2);
  const Outcome o = invoke({"moment", "--m", "9"});
  CHECK(o.code == 2);
  const auto j = nlohmann::json::parse(o.err);
  CHECK(j["error"] == "config");
  CHECK(invoke({"tw", "--beta", "3"}).code == 2);
  CHECK(invoke({"laplace", "--kmax", "5", "--e", "0"}).code == 2);
}

TEST_CASE("domain errors exit with code 2") {
  const Outcome o = invoke({"tw", "--s", "9"});
  CHECK(o.code == 2);
  CHECK(nlohmann::json::parse(o.err)["error"] == "domain");
}

TEST_CASE("large tau runs with a warning") {
  const Outcome o = invoke({"laplace", "--tau", "0.5", "--t", "1", "--e", "0", "--kmax", "1"});
  CHECK(o.code == 0);
  CHECK(o.err.find("tau_small_check failed, convergence not guaranteed") != std::string::npos);
}

TEST_CASE("help and version") {
  CHECK(invoke({"--help"}).code == 0);
  const Outcome v = invoke({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(cli::kVersion) != std::string::npos);
}

TEST_CASE("output file") {
  const std::string path = "aseplab_cli_test_out.csv";
  const Outcome o = invoke({"tw", "--s", "0", "--out", path});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(data_lines(ss.str()).size() == 2);
  std::remove(path.c_str());
}

TEST_CASE("simulation output is independent of the thread count") {
  const std::vector<std::string> args{"simulate", "--t", "3", "--x", "1", "--npaths", "200", "--seed", "4"};
  const Outcome a = invoke(args, 1), b = invoke(args, 4);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(data_lines(a.out).size() == 201);
  const Outcome c = invoke({"simulate", "--t", "3", "--npaths", "200", "--seed", "5"}, 1);
  CHECK(c.out != a.out);
}

TEST_CASE("trajectory mode writes one line per snapshot plus metadata") {
  const Outcome o = invoke({"simulate", "--t", "1", "--steps", "3"});
  CHECK(o.code == 0);
  std::istringstream is(o.out);
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    CHECK(nlohmann::json::accept(line));
    ++n;
  }
  CHECK(n == 5);
}

TEST_CASE("laplace through the scaled binding and with an explicit exponent") {
  const Outcome a = invoke({"laplace", "--t", "2", "--alpha", "0", "--rtilde", "0", "--kmax", "2", "--path", "A"});
  CHECK(a.code == 0);
  const auto la = data_lines(a.out);
  REQUIRE(la.size() == 4);
  CHECK(la[3].rfind("total,", 0) == 0);
  const Outcome b = invoke({"laplace", "--t", "2", "--e", "-0.5", "--kmax", "1", "--format", "json"});
  CHECK(b.code == 0);
  const auto j = nlohmann::json::parse(b.out);
  CHECK(j["meta"]["model"]["e"] == -0.5);
}

TEST_CASE("identity validation suite passes") {
  const Outcome o = invoke({"validate", "--suite", "identities"});
  CHECK(o.code == 0);
  const auto lines = data_lines(o.out);
  CHECK(lines.size() == 5);
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].find(",true,") != std::string::npos);
}
