#include "doctest.h"

#include "berger/cli.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = berger::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("berger_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kFlat2Manifest = R"({
  "name": "m", "coordinates": ["x", "y"],
  "metric": [["1", "0"], ["0", "1"]], "F": [["0", "1"], ["1", "0"]],
  "V": ["1", "0"], "alpha": "ALPHA", "domain": [[-1, 1], [-1, 1]] })";

std::string manifest_with_alpha(const std::string& alpha) {
  std::string text = kFlat2Manifest;
  text.replace(text.find("ALPHA"), 5, alpha);
  return text;
}

}  // namespace

TEST_CASE("validate built-ins") {
  const Run r = run({"validate", "flat2"});
  CHECK(r.code == 0);
  CHECK(run({"validate", "flat4", "--samples", "20"}).code == 0);
}

TEST_CASE("harmonic notes") {
  const Run from = run({"harmonic", "flat2", "--direction", "from-deformed"});
  CHECK(from.code == 0);
  CHECK(from.out.rfind("harmonic (dim M = 2)", 0) == 0);
  const Run to = run({"harmonic", "flat2", "--direction", "to-deformed"});
  CHECK(to.code == 0);
  CHECK(to.out.rfind("not harmonic", 0) == 0);
  CHECK(run({"harmonic", "flat2", "--direction", "sideways"}).code == 2);
  CHECK(run({"harmonic", "flat2"}).code == 2);
}

TEST_CASE("manifest errors exit with 2") {
  const std::string mismatch = write_temp("mismatch.json", R"({
    "dimension": 4, "coordinates": ["a", "b", "c"],
    "metric": [["1","0","0"],["0","1","0"],["0","0","1"]],
    "F": [["1","0","0"],["0","1","0"],["0","0","1"]], "V": ["1","0","0"], "alpha": "1",
    "domain": [[0,1],[0,1],[0,1]] })");
  const Run r = run({"validate", mismatch});
  CHECK(r.code == 2);
  CHECK(r.err.find("dimension") != std::string::npos);

  const Run syntax = run({"validate", write_temp("syntax.json", manifest_with_alpha("x +"))});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("offset 3") != std::string::npos);

  CHECK(run({"validate", write_temp("broken.json", "{ not json")}).code == 2);
  CHECK(run({"validate", "/nonexistent/berger.json"}).code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"validate", "flat2", "--bogus"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"compare", "flat2", "--formula", "nope"}).code == 2);
  CHECK(run({"report", "flat2", "--point", "1"}).code == 2);
}

TEST_CASE("JSON schema") {
  const Run r = run({"compare", "flat2", "--formula", "connection", "--samples", "10", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("spec") == "flat2");
  CHECK(j.at("command") == "compare");
  CHECK(j.at("pass") == true);
  REQUIRE(j.at("results").is_array());
  REQUIRE(j.at("results").size() == 1);
  const auto& entry = j.at("results")[0];
  for (const char* key : {"formula", "max_abs", "max_rel", "worst_point", "pass"}) CHECK(entry.contains(key));
  CHECK(entry.at("formula") == "connection");
  CHECK(entry.at("worst_point").size() == 2);

  const Run v = run({"validate", "flat4", "--samples", "10", "--json"});
  const auto vj = nlohmann::json::parse(v.out);
  CHECK(vj.at("command") == "validate");
  for (const auto& e : vj.at("results")) {
    CHECK(e.contains("formula"));
    CHECK(e.at("max_rel") == e.at("max_abs"));
  }

  const Run m = run({"map-tension", std::string(BERGER_DATA_DIR "/curved4_to_flat2.json"), "--samples", "10", "--json"});
  CHECK(m.code == 0);
  CHECK(nlohmann::json::parse(m.out).at("results").size() == 1);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args{"compare", "flat2", "--seed", "7", "--samples", "20", "--json"};
  CHECK(run(args).out == run(args).out);
  const Run other = run({"compare", "flat2", "--seed", "8", "--samples", "20", "--json"});
  CHECK(other.out != run(args).out);
}

TEST_CASE("structural failures are refused unless forced") {
  const std::string bad = write_temp("bad_alpha.json", manifest_with_alpha("2 + y"));
  CHECK(run({"validate", bad}).code == 1);
  const Run refused = run({"compare", bad, "--formula", "connection", "--samples", "10"});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("FV_alpha") != std::string::npos);
  const Run forced = run({"compare", bad, "--formula", "connection", "--samples", "10", "--force"});
  CHECK(forced.out.find("FORCED") != std::string::npos);
  const Run forced_json = run({"compare", bad, "--formula", "connection", "--samples", "10", "--force", "--json"});
  CHECK(nlohmann::json::parse(forced_json.out).at("forced") == true);
}

TEST_CASE("killing refusal and report") {
  CHECK(run({"compare", "flat2", "--formula", "killing"}).code == 1);
  const Run r = run({"report", "flat2", "--point", "1,0", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  bool saw_scalar = false;
  for (const auto& e : j.at("results"))
    if (e.at("formula") == "scalar") {
      saw_scalar = true;
      CHECK(e.contains("closed"));
      CHECK(e.contains("oracle"));
    }
  CHECK(saw_scalar);
}
