// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const fs::path tmp = fs::temp_directory_path() / ("wrmt_cli_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = env + " \"" WRMT_CLI_PATH "\" " + args + " > \"" + tmp.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(tmp);
  return r;
}

std::vector<std::string> data_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

fs::path write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / (name + std::to_string(::getpid()));
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("poly: monic leading coefficients and metadata header") {
  const Run r = run("poly --n 2 --nu 1 --a 0.5");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# wrmt poly\n", 0) == 0);
  CHECK(r.out.find("# params n=2 nu=1 a=0.5") != std::string::npos);
  CHECK(r.out.find("# c_minus") != std::string::npos);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() > 1);
  CHECK(lines[0] == "l,h,power,coefficient");
  // Leading coefficient is the row with power == l.
  int checked = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    int l = 0, pw = 0;
    double h = 0, c = 0;
    REQUIRE(std::sscanf(lines[i].c_str(), "%d,%lf,%d,%lf", &l, &h, &pw, &c) == 4);
    if (l == pw) {
      CHECK(c == doctest::Approx(1.0).epsilon(1e-14));
      ++checked;
    }
  }
  CHECK(checked == 1 + 2 * 2 + 1 + 1);
}

TEST_CASE("skewpoly columns and o values") {
  const Run r = run("skewpoly --n 2 --nu 1 --a 0.5 --mu-r 0.3 --mu-l -0.2");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# o l=0 0.41017531904311") != std::string::npos);
  CHECK(r.out.find("odd_recursion_residual=") != std::string::npos);
  const auto lines = data_lines(r.out);
  CHECK(lines[0] == "l,parity,degree,coefficient");
  CHECK(lines[1] == "0,even,0,-0.025000000000000001");
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const std::string args = "mc --n 2 --nu 1 --a 0.5 --samples 2000 --seed 5 --bins 20";
  const Run a = run(args, "WRMT_THREADS=1"), b = run(args, "WRMT_THREADS=3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("kind,x_lo,x_hi,y_lo,y_hi,density,std_error") != std::string::npos);
  const Run d1 = run("density --which d5 --n 2 --nu 1 --a 0.5 --grid -3:3:21");
  const Run d2 = run("density --which d5 --n 2 --nu 1 --a 0.5 --grid -3:3:21", "WRMT_THREADS=4");
  REQUIRE(d1.code == 0);
  CHECK(d1.out == d2.out);
  CHECK(data_lines(d1.out).size() == 22);
}

TEST_CASE("config file and flag precedence") {
  const fs::path cfg = write_temp("wrmt_cfg", R"({"n": 3, "nu": 2, "a": 0.4, "mu_r": 0.1, "mu_l": -0.1})");
  const Run r = run("poly --config " + cfg.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# params n=3 nu=2 a=0.40000000000000002") != std::string::npos);
  const Run o = run("poly --config " + cfg.string() + " --n 2");
  CHECK(o.out.find("# params n=2 nu=2") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("invalid configuration exits with 1") {
  CHECK(run("poly --n 0").code == 1);
  CHECK(run("skewpoly --a 1.5 --branch minus").code == 1);
  CHECK(run("density --grid 3:1:10").code == 1);
  CHECK(run("density --which sideways").code == 1);
  CHECK(run("poly --bogus").code == 1);
  CHECK(run("").code == 1);
  const fs::path bad = write_temp("wrmt_bad", "{not json");
  CHECK(run("poly --config " + bad.string()).code == 1);
  fs::remove(bad);
  const fs::path unk = write_temp("wrmt_unk", R"({"n": 2, "colour": "red"})");
  CHECK(run("poly --config " + unk.string()).code == 1);
  fs::remove(unk);
  CHECK(run("poly --config /nonexistent/wrmt.json").code == 1);
  CHECK(run("kernel --masses 0.1").code == 1);
}

TEST_CASE("kernel, corr and micro subcommands") {
  const Run k = run("kernel --branch plus --grid -1:1:3");
  REQUIRE(k.code == 0);
  CHECK(data_lines(k.out).size() == 10);
  CHECK(data_lines(k.out)[0].find("K6_re") != std::string::npos);
  const Run c = run("corr --branch minus --points 0.3");
  REQUIRE(c.code == 0);
  CHECK(data_lines(c.out)[1].find("1,0,0,1.12306955") == 0);
  const Run m = run("micro --branch plus --nu 1 --ahat 1 --m6 0.5 --l7 0.2 --grid 2:2:1");
  REQUIRE(m.code == 0);
  CHECK(data_lines(m.out)[1].find("2,-1.02957947") == 0);
}

TEST_CASE("verify --quick passes and emits JSON") {
  const Run r = run("verify --quick");
  CHECK(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["passed"].get<bool>());
  CHECK(j["criteria"].size() == 10);
  for (const auto& c : j["criteria"]) CHECK(c["checks"].size() > 0);
}
