#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "diffcoh/report.hpp"

using namespace diffcoh;

namespace {

struct Run {
    int status;
    std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(DIFFCOH_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const report::Table& table(const report::RunReport& r, const std::string& name) {
    for (const auto& t : r.tables)
        if (t.name == name) return t;
    FAIL("no table " << name);
    return r.tables.front();
}

std::string tmp_file(const std::string& name, const std::string& body) {
    std::string path = "/tmp/diffcoh_cli_" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("torus-table") {
    Run r = cli("torus-table");
    REQUIRE(r.status == 0);
    auto rep = report::from_json(r.out);
    CHECK(rep.command == "torus-table");
    const auto& t = table(rep, "irrational torus");
    REQUIRE(t.rows.size() == 5);
    // columns k, H, H_dR, H_nabla, H_conn, H_triv
    CHECK(t.rows[1][0] == "1");
    CHECK(t.rows[1][1] == "2");
    CHECK(t.rows[1][3] == "2");
    CHECK(t.rows[1][4] == "1");
    CHECK(t.rows[2][1] == "1");
    CHECK(t.rows[2][3] == "1");
    CHECK(t.rows[2][4] == "[0,1]");
    CHECK(t.rows[2][6].find("H_conn interval") != std::string::npos);

    Run csv = cli("torus-table --format csv");
    REQUIRE(csv.status == 0);
    CHECK(csv.out.find("1,2,1,2,1,1,") != std::string::npos);
    CHECK(csv.out.find("2,1,0,1,\"[0,1]\",\"[0,1]\",") != std::string::npos);

    Run three = cli("torus-table --group-rank 3 --format csv");
    REQUIRE(three.status == 0);
    auto rep3 = report::from_json(cli("torus-table --group-rank 3").out);
    std::vector<std::string> col;
    for (const auto& row : table(rep3, "irrational torus").rows) col.push_back(row[1]);
    CHECK(col == std::vector<std::string>{"1", "3", "3", "1", "0"});
}

TEST_CASE("output is deterministic and timing is opt-in") {
    Run a = cli("torus-table"), b = cli("torus-table");
    CHECK(a.out == b.out);
    CHECK(a.out.find("wall_time") == std::string::npos);
    Run t = cli("torus-table --timing");
    CHECK(report::from_json(t.out).wall_time_s.has_value());

    std::string path = "/tmp/diffcoh_cli_out.json";
    std::remove(path.c_str());
    Run o = cli("torus-table --out " + path);
    CHECK(o.status == 0);
    CHECK(o.out.empty());
    std::ifstream f(path);
    std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(body == a.out);
}

TEST_CASE("verify-squares") {
    Run one = cli("verify-squares --square 6 --k 2 --n 2");
    CHECK(one.status == 0);
    auto rep = report::from_json(one.out);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].passed);
    CHECK(table(rep, "squares").rows[0][0] == "6");

    Run tiny = cli("verify-squares --square 4 --k 2 --n 1 --D 1");
    CHECK(tiny.status == 1);
    auto bad = report::from_json(tiny.out);
    CHECK(!bad.ok());
    CHECK(bad.checks[0].detail.find("UnstableWindow") != std::string::npos);

    Run all = cli("verify-squares --k 1 --n 1");
    CHECK(all.status == 0);
    CHECK(report::from_json(all.out).checks.size() == 9);

    // thread count does not change the report
    Run serial = cli("verify-squares --k 1..2 --n 1");
    Run threaded = cli("verify-squares --k 1..2 --n 1", "DIFFCOH_THREADS=3");
    CHECK(serial.out == threaded.out);
    CHECK(cli("verify-squares --square 99").status == 1);
}

TEST_CASE("cohomology") {
    auto dims = [](const Run& r) {
        std::vector<std::string> v;
        auto rep = report::from_json(r.out);
        for (const auto& row : table(rep, "cohomology").rows) v.push_back(row[1]);
        return v;
    };
    Run c = cli("cohomology circle_3arc --stack Rdelta --degrees 0..2");
    REQUIRE(c.status == 0);
    CHECK(dims(c) == std::vector<std::string>{"1", "1", "0"});
    Run t = cli("cohomology torus_9patch --stack Rdelta --degrees 0..2 --D 1");
    REQUIRE(t.status == 0);
    CHECK(dims(t) == std::vector<std::string>{"1", "2", "1"});
    Run f = cli("cohomology " + std::string(DIFFCOH_SOURCE_DIR) + "/data/interval_2chart.json --degrees 0,1");
    REQUIRE(f.status == 0);
    CHECK(dims(f) == std::vector<std::string>{"1", "0"});

    std::string broken = tmp_file("broken.json", R"({
  "objects": [{"id": "A", "dim": 1}, {"id": "B", "dim": 1}],
  "morphisms": [
    {"id": "f", "src": "A", "tgt": "Q", "polys": [[[[1], 1]]]}
  ]
})");
    Run b = cli("cohomology " + broken);
    CHECK(b.status == 2);
    CHECK(b.out.find("broken.json:4") != std::string::npos);
    CHECK(b.out.find("unknown object 'Q'") != std::string::npos);

    // parses, but is not a category: g o f is missing from the table
    std::string invalid = tmp_file("invalid.json", R"({
  "objects": [{"id": "A", "dim": 1}, {"id": "B", "dim": 1}, {"id": "C", "dim": 1}],
  "morphisms": [
    {"id": "f", "src": "A", "tgt": "B", "polys": [[[[1], 1]]]},
    {"id": "g", "src": "B", "tgt": "C", "polys": [[[[1], 1]]]}
  ]
})");
    Run v = cli("cohomology " + invalid);
    CHECK(v.status == 2);
    CHECK(v.out.find("InvalidDiagram") != std::string::npos);
    CHECK(v.out.find("missing") != std::string::npos);
}

TEST_CASE("selftest") {
    Run s = cli("selftest --scale 0.25");
    CHECK(s.status == 0);
    auto rep = report::from_json(s.out);
    CHECK(rep.checks.size() == 9);
    CHECK(rep.ok());

    Run other = cli("selftest --scale 0.25 --seed 77");
    CHECK(other.status == 0);
    CHECK(report::from_json(other.out).parameters[0].second == "77");

    Run corrupt = cli("selftest --scale 0.25 --corrupt-sign-table");
    CHECK(corrupt.status == 1);
    auto bad = report::from_json(corrupt.out);
    for (const auto& c : bad.checks) CHECK(c.passed == (c.name != "sign_iso"));
    // the fixture flag is not advertised
    CHECK(cli("selftest --help").out.find("corrupt") == std::string::npos);
}

TEST_CASE("exact-solve") {
    std::string spec = tmp_file("seq.json", R"({
  "terms": [{"name": "a", "dim": 3}, {"name": "b", "dim": null}],
  "exact_at": [0, 1], "left_zero": true, "right_zero": true
})");
    Run r = cli("exact-solve " + spec + " --format csv");
    CHECK(r.status == 0);
    CHECK(r.out.find("b,3,forced") != std::string::npos);

    std::string bad = tmp_file("seq_bad.json", R"({
  "terms": [{"name": "a", "dim": 1}, {"name": "b", "dim": 1}, {"name": "c", "dim": 1}],
  "exact_at": [0, 1, 2], "left_zero": true, "right_zero": true
})");
    CHECK(cli("exact-solve " + bad).status == 1);

    std::string malformed = tmp_file("seq_malformed.json", "{\n  \"terms\": [{\"name\": \"a\"}],\n  \"exact_at\": [3]\n}");
    Run m = cli("exact-solve " + malformed);
    CHECK(m.status == 2);
    CHECK(m.out.find("seq_malformed.json:3") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(cli("").status != 0);
    CHECK(cli("torus-table --format xml").status != 0);
    CHECK(cli("verify-squares --k 3..1").status == 2);
    CHECK(cli("--version").out.find(report::toolkit_version()) != std::string::npos);
}
