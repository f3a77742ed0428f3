#include <doctest.h>

#include <filesystem>

#include "common.hpp"
#include "frugal/error.hpp"
#include "frugal/io.hpp"
#include "frugal/report.hpp"

using namespace frugal;

namespace {

std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(FRUGAL_FIXTURE_DIR)) {
    out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("fixtures round-trip byte for byte") {
  const auto files = fixture_files();
  CHECK(files.size() >= 7);
  for (const auto& f : files) {
    CAPTURE(f);
    const std::string text = read_text(f);
    const Instance inst = parse_instance(text);
    CHECK(serialize_instance(inst) == text);
  }
}

TEST_CASE("diamond and PARA fixtures") {
  const auto d = load_instance(fixture::path("diamond.json"));
  REQUIRE(d.system.as<KPathSystem>());
  CHECK(d.system.as<KPathSystem>()->k == 1);
  CHECK(d.system.num_agents() == 4);

  const auto p = load_instance(fixture::path("para4.json"));
  CHECK(p.costs == fixture::para_costs(4));
  CHECK(p.system.num_agents() == 5);
}

TEST_CASE("generated instances equal the fixtures") {
  const auto star = generate("star", {{"m", "4"}}, 0);
  CHECK(serialize_instance(star) == read_text(fixture::path("star4.json")));
  const auto para = generate("parallel-paths", {{"lengths", "1,4"}}, 0);
  CHECK(serialize_instance(para) == read_text(fixture::path("para4.json")));
}

TEST_CASE("generation is deterministic") {
  const GeneratorParams p{{"layers", "3"}, {"width", "3"}, {"k", "2"}};
  CHECK(serialize_instance(generate("layered-dag", p, 7)) ==
        serialize_instance(generate("layered-dag", p, 7)));
  CHECK(serialize_instance(generate("layered-dag", p, 7)) !=
        serialize_instance(generate("layered-dag", p, 8)));
  for (const auto& kind : generator_kinds()) {
    CAPTURE(kind);
    const auto a = frugal::generate(kind, GeneratorParams{}, 3);
    CHECK(parse_instance(serialize_instance(a)).costs == a.costs);
  }
}

TEST_CASE("layered networks carry k+1 paths") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int k = 1; k <= 3; ++k) {
      const auto inst = generate("layered-dag", {{"k", std::to_string(k)}}, seed);
      CHECK(max_flow_value(inst.system.as<KPathSystem>()->graph) >= k + 1);
    }
  }
}

TEST_CASE("generator parameter errors") {
  CHECK_THROWS_AS(generate("moebius", {}, 1), ValidationError);
  CHECK_THROWS_AS(generate("star", {{"m", "x"}}, 1), ValidationError);
  CHECK_THROWS_AS(generate("star", {{"leaves", "3"}}, 1), ValidationError);
  CHECK_THROWS_AS(generate("layered-dag", {{"k", "3"}, {"width", "2"}}, 1), ValidationError);
}

TEST_CASE("splitmix reference stream") {
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  SplitMix64 r(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.between(-3, 3);
    CHECK((v >= -3 && v <= 3));
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_instance("{\n  \"kind\": \"kpath\",\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 3);
  }
}

TEST_CASE("validation errors") {
  const std::string dangling =
      R"({"version":1,"kind":"kpath","vertices":3,"source":0,"sink":2,"edges":[[0,1],[1,7]],"k":1,"costs":[1,1]})";
  CHECK_THROWS_AS(parse_instance(dangling), ValidationError);
  const std::string bad_version =
      R"({"version":9,"kind":"vertex-cover","vertices":2,"edges":[[0,1]],"costs":[1,1]})";
  CHECK_THROWS_AS(parse_instance(bad_version), ValidationError);
  const std::string short_costs =
      R"({"version":1,"kind":"vertex-cover","vertices":2,"edges":[[0,1]],"costs":[1]})";
  CHECK_THROWS_AS(parse_instance(short_costs), ValidationError);
  const std::string monopoly =
      R"({"version":1,"kind":"kpath","vertices":3,"source":0,"sink":2,"edges":[[0,1],[1,2]],"k":1,"costs":[1,1]})";
  CHECK_THROWS_AS(parse_instance(monopoly), MonopolyError);
  CHECK_THROWS_AS(load_instance("/nonexistent/x.json"), Error);
}

TEST_CASE("digest is stable") {
  const auto d = load_instance(fixture::path("diamond.json"));
  const auto digest = instance_digest(d);
  CHECK(digest.size() == 16);
  CHECK(digest == instance_digest(parse_instance(serialize_instance(d))));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("report formatting") {
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::nan(""), true).empty());
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(number_json(std::nan("")).is_null());
  CHECK(csv_header().rfind("instance_digest,mechanism,k,", 0) == 0);
  CsvRow row;
  row.instance_digest = "00";
  row.mechanism = "kpath";
  row.k = 1;
  row.bound_nu = std::nan("");
  const auto line = csv_line(row);
  CHECK(line.rfind("00,kpath,1,", 0) == 0);
  CHECK(line.back() == '\n');
}
