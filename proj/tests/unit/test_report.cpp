#include "doctest.h"

#include "diffcoh/errors.hpp"
#include "diffcoh/report.hpp"

using namespace diffcoh;
using namespace diffcoh::report;

namespace {

RunReport sample() {
    RunReport r;
    r.command = "torus-table";
    r.parameters = {{"group_rank", "2"}, {"format", "json"}, {"alpha", "irrational"}};
    r.tables.push_back({"torus", {"k", "H", "provenance"}, {{"1", "2", "input"}, {"2", "[0,1]", "interval, \"open\""}}});
    r.checks.push_back({"H^1_nabla", true, "forced to 2", "forced"});
    r.checks.push_back({"square 4", false, "unstable, window 3", "derived"});
    return r;
}

}  // namespace

TEST_CASE("json roundtrip is lossless") {
    RunReport r = sample();
    CHECK(r.schema == "diffcoh.report/1");
    CHECK(!r.version.empty());
    RunReport back = from_json(to_json(r));
    CHECK(back == r);
    CHECK(to_json(back) == to_json(r));

    r.wall_time_s = 0.1 + 0.2;
    back = from_json(to_json(r));
    REQUIRE(back.wall_time_s);
    CHECK(*back.wall_time_s == *r.wall_time_s);
    CHECK(back == r);
}

TEST_CASE("wall time is absent unless set") {
    RunReport r = sample();
    CHECK(to_json(r).find("wall_time") == std::string::npos);
    CHECK(to_json(r) == to_json(sample()));
}

TEST_CASE("ok is the conjunction of the checks") {
    RunReport r = sample();
    CHECK(!r.ok());
    r.checks[1].passed = true;
    CHECK(r.ok());
    CHECK(RunReport{}.ok());
}

TEST_CASE("csv projection") {
    std::string csv = to_csv(sample());
    CHECK(csv == "k,H,provenance\n1,2,input\n2,\"[0,1]\",\"interval, \"\"open\"\"\"\n");
    RunReport only_checks = sample();
    only_checks.tables.clear();
    CHECK(to_csv(only_checks).rfind("check,passed,detail,provenance\n", 0) == 0);
}

TEST_CASE("malformed reports") {
    CHECK_THROWS_AS(from_json("{\"schema\": \"other/2\"}"), ParseError);
    CHECK_THROWS_AS(from_json("[1, 2]"), ParseError);
    std::string text = to_json(sample());
    text.replace(text.find("\"passed\": true"), 14, "\"passed\": 1");
    CHECK_THROWS_AS(from_json(text), ParseError);
}
