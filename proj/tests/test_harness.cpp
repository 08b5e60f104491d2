#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hurwitz/errors.hpp"
#include "hurwitz/harness.hpp"

using namespace hurwitz;

namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.samples = 40;
  c.J_max = 1;
  c.cases = {Case::A};
  return c;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hurwitz_test_" + name)).string();
}

std::vector<json> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const SuiteConfig c = SuiteConfig::from_json(json::parse(
      R"({"seed": 5, "samples": 10, "cases": ["B"], "tolerances": {"opcalc.eq17": 1e-3}})"));
  CHECK(c.seed == 5);
  CHECK(c.samples == 10);
  CHECK(c.cases.size() == 1);
  CHECK(c.tolerance("opcalc.eq17", 1.0) == 1e-3);
  CHECK(c.tolerance("other", 1.0) == 1.0);
  CHECK_THROWS_AS(SuiteConfig::from_json(json::parse(R"({"sample": 3})")), ConfigInvalid);
  CHECK_THROWS_AS(SuiteConfig::from_json(json::parse(R"({"J_max": 4})")), ConfigInvalid);
  CHECK_THROWS_AS(SuiteConfig::from_json(json::parse(R"({"samples": 0})")), ConfigInvalid);
  CHECK_THROWS_AS(SuiteConfig::from_json(json::parse(R"({"fd_step": -1})")), ConfigInvalid);
  CHECK_THROWS_AS(SuiteConfig::from_json(json::parse(R"({"cases": ["C"]})")), ConfigInvalid);
  CHECK_THROWS_AS(SuiteConfig::from_json(json::parse(R"({"seed": -2})")), ConfigInvalid);
  CHECK_THROWS_AS(SuiteConfig::load("/nonexistent/cfg.json"), IoError);
}

TEST_CASE("small suite passes and reports conventions") {
  const Report r = run_suite(small_config());
  CHECK(r.pass());
  const json j = r.to_json();
  CHECK(j["schema_version"] == report_schema_version);
  CHECK(j["conventions"]["gamma_tilde"]["choice"] == "i*gamma_1*gamma_3");
  CHECK(j["conventions"]["octet_corrections"].size() == 1);
  CHECK(j["conventions"].contains("convention_map"));
  CHECK(j["conventions"].contains("G_expansion"));
  CHECK(r.find("opcalc.eq17", "A") != nullptr);
  CHECK(r.find("separation.consistency.J0", "A") != nullptr);
}

TEST_CASE("zero tolerance forces a named failure") {
  SuiteConfig c = small_config();
  c.tolerances["opcalc.eq17"] = 0.0;
  const Report r = run_suite(c);
  CHECK_FALSE(r.pass());
  const CheckRecord* rec = r.find("opcalc.eq17", "A");
  REQUIRE(rec != nullptr);
  CHECK_FALSE(rec->pass);
  int failed = 0;
  for (const auto& x : r.checks) failed += !x.pass;
  CHECK(failed == 1);
}

TEST_CASE("same seed gives the same numbers") {
  json a = run_suite(small_config()).to_json();
  json b = run_suite(small_config()).to_json();
  a.erase("environment");
  b.erase("environment");
  CHECK(a.dump() == b.dump());
  SuiteConfig other = small_config();
  other.seed += 1;
  json c = run_suite(other).to_json();
  c.erase("environment");
  CHECK(c["checks"].dump() != a["checks"].dump());
}

TEST_CASE("HURWITZ_SEED overrides the config seed") {
  SuiteConfig c = small_config();
  c.seed = 99;
  ::setenv("HURWITZ_SEED", "7", 1);
  const json a = run_suite(c).to_json();
  ::setenv("HURWITZ_SEED", "bad", 1);
  CHECK_THROWS_AS(run_suite(c), ConfigInvalid);
  ::unsetenv("HURWITZ_SEED");
  CHECK(a["config"]["seed"] == 7);
}

TEST_CASE("fields export") {
  const std::string path = tmp_path("fields.jsonl");
  FieldsSummary s = fields_cmd(Case::A, 1, "north", path);
  CHECK(s.written == 1);
  auto recs = read_lines(path);
  REQUIRE(recs.size() == 1);
  for (const auto& row : recs[0]["A"])
    for (const auto& v : row) CHECK(v.get<double>() == 0.0);

  s = fields_cmd(Case::A, 1000, "random", path);
  CHECK(s.written == 1000);
  CHECK(s.skipped == 0);
  recs = read_lines(path);
  CHECK(recs.size() == 1000);
  for (const auto& r : recs) {
    CHECK(r["x"].size() == 5);
    CHECK(r["A"].size() == 5);
    CHECK(r["props"]["transversality"].get<double>() < 1e-12);
    CHECK(r["props"]["normalization_residual"].get<double>() < 1e-12);
  }

  s = fields_cmd(Case::B, 10, "axis", path);
  CHECK(s.skipped == 5);
  CHECK(s.written == 5);
  CHECK(s.to_json()["skipped"] == 5);

  CHECK_THROWS_AS(fields_cmd(Case::A, 1, "random", "/nonexistent/dir/out.jsonl"), IoError);
  CHECK_THROWS_AS(fields_cmd(Case::A, 1, "moon", path), ConfigInvalid);
  std::filesystem::remove(path);
}

TEST_CASE("separation export") {
  const std::string path = tmp_path("sep.json");
  const json j = separate_cmd(1, 0, Case::A, {0.3, -0.2, 0.5, 0.1, 0.4},
                              BranchSelector::parse("eq45"), path);
  REQUIRE(j["records"].size() == 5);
  for (const auto& r : j["records"]) {
    CHECK(r["roots"].size() == 3);
    CHECK(r["g"].size() == 3);
    CHECK(r["eq44_residual"].get<double>() < 1e-12);
  }
  CHECK(j["eq45"]["max_signed_difference"].get<double>() < 1e-12);
  std::ifstream in(path);
  CHECK(json::parse(in) == j);

  const json z = separation_json(0, 0, Case::B, {0.3, -0.2, 0.5, 0.1, 0.4}, {});
  for (const auto& r : z["records"]) {
    CHECK(r["roots"] == json::array({0.0}));
    CHECK(r["centrifugal"] == 0.0);
  }
  CHECK_FALSE(z.contains("eq45"));
  CHECK_THROWS_AS(separation_json(1, 0, Case::A, {0, 0, 0, 0, -1}, {}), SingularAxis);
  CHECK_THROWS_AS(separation_json(1, 2, Case::A, {0.3, 0, 0, 0, 1}, {}), ConfigInvalid);
  std::filesystem::remove(path);
}
