#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "common.hpp"
#include "frugal/io.hpp"

namespace {

struct Run {
  int status = 0;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FRUGAL_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string scratch(const std::string& name) {
  return std::string(FRUGAL_SCRATCH_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("run on the diamond") {
  const auto r = run("run --mechanism kpath --k 1 --instance " + fixture::path("diamond.json"));
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["outcome"]["total_payment"].get<double>() == doctest::Approx(8.0));
  CHECK(j["frugality"]["nu"].get<double>() == doctest::Approx(6.0));
  CHECK(j["frugality"]["ratio_nu"].get<double>() == doctest::Approx(1.3333333333));
  CHECK(j["instance_digest"].get<std::string>().size() == 16);
}

TEST_CASE("benchmark with a probe grid") {
  const auto r = run("benchmark --grid 2 --instance " + fixture::path("star4.json"));
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["nu"]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["mu"]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["probe"]["rows"].size() == 5 * 3);
}

TEST_CASE("gen writes the fixture bytes") {
  const auto r = run("gen --kind star --param m=4 --seed 0");
  REQUIRE(r.status == 0);
  CHECK(r.out == frugal::read_text(fixture::path("star4.json")));
}

TEST_CASE("experiment sweep") {
  const auto out = scratch("sweep.csv");
  const auto a = run("experiment --kind layered-dag --count 100 --seed 1 --out " + out);
  REQUIRE(a.status == 0);
  const std::string first = frugal::read_text(out);
  CHECK(std::count(first.begin(), first.end(), '\n') == 101);
  const auto summary = nlohmann::json::parse(frugal::read_text(out + ".json"));
  CHECK(summary["violations"].get<int>() == 0);
  const auto b = run("experiment --kind layered-dag --count 100 --seed 1");
  CHECK(b.out == first);
}

TEST_CASE("verify on the fixture pack") {
  const auto r = run("verify --count 2 --fixtures " + std::string(FRUGAL_FIXTURE_DIR));
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["failed"].get<int>() == 0);
}

TEST_CASE("errors are machine readable") {
  const std::string cmd =
      std::string(FRUGAL_CLI) + " run --instance /nonexistent.json 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string err;
  char buf[512];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) err.append(buf, n);
  const int raw = pclose(pipe);
  CHECK(WEXITSTATUS(raw) == 2);
  const auto j = nlohmann::json::parse(err);
  CHECK(j.contains("error"));
  CHECK(j.contains("message"));

  CHECK(run("run --mechanism auction --instance " + fixture::path("diamond.json")).status == 2);
  CHECK(run("frobnicate").status != 0);
}
