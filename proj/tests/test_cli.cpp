#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FANO_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(P_tmpdir) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("ring and classify") {
  const auto fermat = temp_file("fano_cli_fermat.txt", "z0^3+z1^3+z2^3+z3^3+z4^3\n");
  auto r = run("ring --cubic " + fermat + " --field 0");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["dims"] == nlohmann::json({1, 5, 10, 10, 5, 1}));
  CHECK(j["smooth"] == true);

  r = run("classify --cubic " + fermat + " --line '1,0,0,0,0;0,1,0,0,0' --field 7");
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["in_V"] == false);
  CHECK(j["type"] == "second");
  std::remove(fermat.c_str());
}

TEST_CASE("exit codes") {
  const auto bad = temp_file("fano_cli_bad.txt", "z0^2 + z1^3\n");
  auto r = run("ring --cubic " + bad);
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.out)["error"]["reason"] == "non_homogeneous");
  std::remove(bad.c_str());

  CHECK(run("nonsense").code == 2);
  CHECK(run("ring --expr 'z0^3' --field 6").code == 2);
  CHECK(run("ring --cubic /nonexistent/file.txt").code == 2);

  r = run("classify --expr 'z0^3+z1^3' --field 7 --line '1,0,0,0,0;0,1,0,0,0'");
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["error"]["reason"] == "singular_cubic");

  r = run("census --expr 'z0^3+z1^3+z2^3+z3^3+z4^3' --field 0 --quiet");
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["error"]["reason"] == "rational_field");
}

TEST_CASE("census is reproducible across workers") {
  const std::string base = "census --random --seed 5 --field 5 --quiet --tasks lines,sigma,double,eckardt";
  auto one = run(base + " --workers 1");
  auto eight = run(base + " --workers 8");
  REQUIRE(one.code == 0);
  CHECK(one.out == eight.out);
  auto j = nlohmann::json::parse(one.out);
  CHECK(j["timing"].is_null());
  CHECK(j["counts"]["lines_scanned"] == 20306);
}
