#include <doctest.h>

#include <json.hpp>

#include "dilato/io.hpp"
#include "test_util.hpp"

using namespace dilato;
using testutil::diff;

TEST_CASE("pair json round trip is faithful and byte stable") {
  const CommutingPair pair = random_pair(3, 17, PairScheme::kPolyInOneMatrix);
  const std::string text = pair_to_json_text(pair);
  const CommutingPair loaded = pair_from_json_text(text);
  CHECK(diff(loaded.t1, pair.t1) < 1e-15);
  CHECK(diff(loaded.t2, pair.t2) < 1e-15);
  CHECK(pair_to_json_text(loaded) == text);
}

TEST_CASE("instance loader rejects malformed input") {
  CHECK_THROWS_AS(pair_from_json_text("not json"), Error);
  CHECK_THROWS_AS(pair_from_json_text(R"({"schema":"other","dim":1})"), Error);
  CHECK_THROWS_AS(pair_from_json_text(R"({"schema":"pair-v1","dim":1,"t1":[[0.5]],"t2":[[0.5]]})"),
                  Error);  // scalars must be [re, im]
  CHECK_THROWS_AS(
      pair_from_json_text(
          R"({"schema":"pair-v1","dim":2,"t1":[[[0,0],[0,0]]],"t2":[[[0,0],[0,0]]]})"),
      Error);  // row count mismatch
}

TEST_CASE("instance loader surfaces validation failures") {
  // Non-commuting entries parse but fail validation.
  const std::string bad = R"({"schema":"pair-v1","dim":2,
    "t1":[[[1,0],[0,0]],[[0,0],[0,0]]],
    "t2":[[[0,0],[1,0]],[[0,0],[0,0]]]})";
  CHECK_THROWS_AS(pair_from_json_text(bad), Error);
  try {
    pair_from_json_text(bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCommuting);
  }
}

TEST_CASE("file round trip") {
  const CommutingPair pair = random_pair(2, 23, PairScheme::kDiagonalPlusRotation);
  const std::string path = "io_roundtrip_instance.json";
  save_pair(pair, path);
  const CommutingPair loaded = load_pair(path);
  CHECK(diff(loaded.t1, pair.t1) < 1e-15);
  CHECK_THROWS_AS(load_pair("definitely_missing_file.json"), Error);
}

TEST_CASE("reports serialize to valid json") {
  VerifyOptions opt;
  opt.count = 4;
  opt.dim_max = 3;
  const std::vector<SuiteReport> reports = run_suites("regression", opt);
  const std::string text = reports_to_json(reports);
  const nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc.contains("suites"));
  CHECK(doc["pass"].is_boolean());
  CHECK(doc["suites"][0]["checks"].size() > 0);

  const std::string human = reports_to_text(reports);
  CHECK(human.find("regression") != std::string::npos);
  CHECK(human.find("PASS") != std::string::npos);
}
