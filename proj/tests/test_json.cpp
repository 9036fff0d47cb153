#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/json_io.hpp"
#include "casimir/monodromy.hpp"
#include "casimir/verify.hpp"

using namespace casimir;

TEST_CASE("trace json") {
  Json j = to_json(trace_series(parse_rep("M0"), 1, 5));
  CHECK(j.dump() == R"({"variable":"q","order":"5","terms":[["0","1/1"],["1","1/1"],["4","1/1"]]})");
  CHECK(qseries_from_json(j) == trace_series(parse_rep("M0"), 1, 5));
  QSeries half = trace_series(parse_rep("M-1"), 1, 6);
  CHECK(qseries_from_json(to_json(half)) == half);
  CHECK_THROWS(qseries_from_json(Json::parse(R"({"variable":"x"})")));
}

TEST_CASE("deformed json") {
  Json j = to_json(trace_deformed(parse_rep("M-2"), 1, 5));
  CHECK(j["variables"] == Json::array({"q", "x"}));
  CHECK(j["terms"].size() == 2);
}

TEST_CASE("matrix and spectral json") {
  ModuleExpr p = parse_rep("P");
  Json m = to_json(RatMatrix{{-4, 2}, {-2, 0}});
  CHECK(m.dump() == R"([["-4/1","2/1"],["-2/1","0/1"]])");
  Json s = to_json(spectral(p, -4));
  CHECK(s["dimension"] == 2);
  CHECK(to_json(monodromy_matrix(p, -2, 1)).contains("entries"));
  CHECK(to_json(flat_sections(p, -2)).is_object());
}

TEST_CASE("report json") {
  CheckReport r = check_theorem1(3);
  Json j = to_json(r);
  CHECK(j["name"] == "theorem1");
  CHECK(j["status"] == "pass");
}
