#include "mixent/serialization.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = 0;
  std::string out;
};

// Runs the CLI with stderr merged into stdout.
Run cli(const std::string& args) {
  const std::string cmd = std::string(MIXENT_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mixent_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

int count_lines(const std::string& s) { return int(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("rates table has one row per k") {
  const Run r = cli("rates table --p 1 --q 2 --r inf --u inf --b 4 --d 16 --kmin 1 --kmax 64");
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 64 + 2);
  CHECK(r.out.rfind("# seed=", 0) == 0);
}

TEST_CASE("grid enum") {
  const Run r = cli("grid enum --b 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("1/1 1/2") != std::string::npos);
  CHECK(r.out.find("cardinality=3") != std::string::npos);
}

TEST_CASE("packing build, verify, tamper") {
  const std::string good = scratch("pack.json"), bad = scratch("bad.json");
  CHECK(cli("pack build --construction two_level --p 1 --q 1 --r inf --u inf --b 8 --d 8 --max-points 64 -o " + good).code == 0);
  CHECK(cli("pack verify " + good).code == 0);
  CHECK(cli("verify " + good).code == 0);

  mixent::Json doc = mixent::read_json_file(good);
  doc["points"][3] = doc["points"][2];
  mixent::write_text_file(bad, doc.dump());
  const Run r = cli("pack verify " + bad);
  CHECK(r.code == 4);
  CHECK(r.out.find("\"pair\":[2,3]") != std::string::npos);
}

TEST_CASE("covering build and verify") {
  const std::string path = scratch("cover.json");
  CHECK(cli("cover build --construction et --p 1 --q 1 --r inf --u inf --b 8 --d 2 --k 8 --samples 2000 -o " + path).code == 0);
  CHECK(cli("cover verify " + path + " --samples 3000 --seed 9").code == 0);
  mixent::Json doc = mixent::read_json_file(path);
  doc["claimed_radius"] = 0.01;
  mixent::write_text_file(path, doc.dump());
  CHECK(cli("verify " + path + " --samples 500").code == 4);
}

TEST_CASE("exit codes") {
  CHECK(cli("rates table --p nope").code == 2);
  CHECK(cli("rates table --b 0").code == 2);
  CHECK(cli("cover build --construction cuboid --b 2 --d 1 --k 4 --provider interval").code == 2);
  const Run h = cli("besov check-hypotheses --r0 0.5 --r1 0 --p0 1 --p1 2 --q0 1/2 --q1 2 --n 2");
  CHECK(h.code == 3);
  CHECK(h.out.find("\"hypothesis\"") != std::string::npos);
  CHECK(cli("besov slope --r0 0.4 --r1 0 --p0 2 --p1 2 --q0 1 --q1 inf --n 2").code == 0);
}

TEST_CASE("crosscheck output is deterministic and ordered") {
  const std::string args = "crosscheck --p 1 --q inf --r inf --u inf --b 2 --d 2 --kmax 8 --samples 500";
  const Run a = cli(args), b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 8 + 2);
}

TEST_CASE("output directory from the environment") {
  const std::string dir = scratch("outdir");
  const Run r = cli("oracle sweep --p 1 --q 1 --r inf --u inf --b 2 --d 1 --kmax 4 --mesh 0.1 -o sweep.csv");
  CHECK(r.code == 0);
  setenv("MIXENT_OUTPUT_DIR", dir.c_str(), 1);
  CHECK(cli("oracle sweep --p 1 --q 1 --r inf --u inf --b 2 --d 1 --kmax 4 --mesh 0.1 -o sweep.csv").code == 0);
  unsetenv("MIXENT_OUTPUT_DIR");
  CHECK(std::filesystem::exists(dir + "/sweep.csv"));
  std::filesystem::remove("sweep.csv");
}
