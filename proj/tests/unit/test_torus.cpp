#include "doctest.h"

#include "diffcoh/errors.hpp"
#include "diffcoh/torus.hpp"

using namespace diffcoh;
using namespace diffcoh::torus;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

ExactSeqSpec seq(std::vector<SeqTerm> t, std::vector<std::size_t> exact, bool l, bool r) {
    ExactSeqSpec s;
    s.terms = std::move(t);
    s.exact_at = std::move(exact);
    s.left_zero = l;
    s.right_zero = r;
    return s;
}

}  // namespace

TEST_CASE("group cohomology of lattices") {
    SUBCASE("Z^2 matches the torus") {
        std::vector<std::size_t> got;
        for (std::size_t k = 0; k <= 4; ++k) got.push_back(koszul_group_cohomology(2, k));
        CHECK(got == std::vector<std::size_t>{1, 2, 1, 0, 0});
    }
    CHECK(koszul_group_cohomology(1, 0) == 1);
    CHECK(koszul_group_cohomology(1, 1) == 1);
    CHECK(koszul_group_cohomology(1, 2) == 0);
    CHECK(koszul_group_cohomology(0, 0) == 1);
    CHECK(koszul_group_cohomology(0, 1) == 0);
    CHECK(koszul_group_cohomology(0, 2) == 0);
    for (std::size_t n = 0; n <= 5; ++n)
        for (std::size_t k = 0; k <= 5; ++k) CHECK(koszul_group_cohomology(n, k) == binom(n, k));
}

TEST_CASE("bar complex oracle") {
    CHECK(bar_cohomology(2, 1) == 2);
    CHECK(bar_cohomology(2, 2) == 1);
    CHECK(bar_cohomology(1, 0) == 1);
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t k = 0; k <= 2; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(bar_cohomology(n, k) == koszul_group_cohomology(n, k));
            // higher truncations add no classes
            CHECK(bar_cohomology(n, k, k + 1) == koszul_group_cohomology(n, k));
        }
    CHECK_THROWS_AS(bar_cohomology(2, 3), OracleRangeExceeded);
    CHECK_THROWS_AS(bar_cohomology(4, 1), OracleRangeExceeded);
    CHECK_THROWS_AS(bar_cohomology(2, 2, 1), InvalidParameters);
}

TEST_CASE("de Rham input of the irrational torus") {
    CHECK(derham_input_torus(0) == 1);
    CHECK(derham_input_torus(1) == 1);
    CHECK(derham_input_torus(2) == 0);
    CHECK(derham_input_torus(7) == 0);
}

TEST_CASE("exact sequence solver") {
    SUBCASE("short exact with one side known") {
        auto r = exact_solve(seq({{"a", 3}, {"b", {}}}, {0, 1}, true, true));
        CHECK(r.find("b")->dim == Interval{3, 3});
        REQUIRE(r.maps.size() == 1);
        CHECK(r.maps[0].rank == Interval{3, 3});
    }
    SUBCASE("prePIZ in degree 1 for T_alpha") {
        auto r = exact_solve(seq({{"H1", 2}, {"H1_nabla", {}}, {"Om2", 0}, {"H2", 1}}, {0, 1, 2}, true, false));
        CHECK(r.find("H1_nabla")->dim.forced());
        CHECK(r.find("H1_nabla")->dim.lo == 2);
    }
    SUBCASE("degree-2 PIZ leaves an interval") {
        auto r = exact_solve(seq({{"H2", 1}, {"H2_conn", {}}, {"H3_dR", 0}, {"H3", 0}}, {1, 2}, false, false));
        CHECK(r.find("H2_conn")->dim == Interval{0, 1});
        CHECK(r.find("H2_conn")->dim.str() == "[0,1]");
    }
    SUBCASE("unconstrained term") {
        auto r = exact_solve(seq({{"a", 1}, {"b", {}}}, {}, false, false));
        CHECK(r.find("b")->dim.lo == 0);
        CHECK(!r.find("b")->dim.bounded());
        CHECK(r.find("b")->dim.str() == "[0,inf)");
    }
    SUBCASE("exactness bounds below") {
        // 0 -> a -> b with a = 2: b >= 2
        auto r = exact_solve(seq({{"a", 2}, {"b", {}}}, {0}, true, false));
        CHECK(r.find("b")->dim.lo == 2);
        CHECK(!r.find("b")->dim.bounded());
    }
    SUBCASE("fully known sequences are validated") {
        CHECK_NOTHROW(exact_solve(seq({{"a", 1}, {"b", 3}, {"c", 2}}, {0, 1, 2}, true, true)));
        // Euler characteristic 1 - 1 + 1 != 0
        CHECK_THROWS_AS(exact_solve(seq({{"a", 1}, {"b", 1}, {"c", 1}}, {0, 1, 2}, true, true)), InconsistentSpec);
        SolveOptions o;
        o.throw_on_inconsistent = false;
        CHECK(!exact_solve(seq({{"a", 1}, {"b", 1}, {"c", 1}}, {0, 1, 2}, true, true), o).consistent);
    }
    SUBCASE("parity is found by search, not by propagation") {
        // 0 -> a -> b -> a -> 0 exact forces b = 2a; with b = 3 there is no solution
        CHECK_THROWS_AS(exact_solve(seq({{"a", {}}, {"b", 3}, {"a", {}}}, {0, 1, 2}, true, true)), InconsistentSpec);
        auto r = exact_solve(seq({{"a", {}}, {"b", 4}, {"a", {}}}, {0, 1, 2}, true, true));
        CHECK(r.find("a")->dim == Interval{2, 2});
    }
    SUBCASE("known ranks") {
        auto s = seq({{"a", {}}, {"b", 5}, {"c", {}}}, {1}, false, false);
        s.ranks = {{0, 2}, {1, 3}};
        auto r = exact_solve(s);
        CHECK(r.find("a")->dim.lo == 2);
        CHECK(r.find("c")->dim.lo == 3);
    }
    SUBCASE("conflicting inputs across sequences") {
        std::vector<ExactSeqSpec> v{seq({{"a", 1}}, {}, false, false), seq({{"a", 2}}, {}, false, false)};
        CHECK_THROWS_AS(exact_solve(v), InconsistentSpec);
    }
    SUBCASE("malformed specs") {
        CHECK_THROWS_AS(exact_solve(seq({{"a", 1}}, {1}, true, true)), InvalidParameters);
        CHECK_THROWS_AS(exact_solve(seq({}, {}, true, true)), InvalidParameters);
        auto s = seq({{"a", 1}, {"b", 1}}, {}, false, false);
        s.ranks = {{1, 0}};
        CHECK_THROWS_AS(exact_solve(s), InvalidParameters);
    }
}

TEST_CASE("forced values respect the Euler characteristic") {
    // every forced fully-known exact sequence has alternating sum zero
    for (std::size_t a = 0; a <= 3; ++a)
        for (std::size_t b = 0; b <= 3; ++b) {
            auto r = exact_solve(seq({{"a", a}, {"b", b}, {"c", {}}, {"d", {}}}, {0, 1, 2, 3}, true, true),
                                 SolveOptions{false, 0, true});
            if (!r.consistent) continue;
            auto c = r.find("c")->dim, d = r.find("d")->dim;
            if (c.forced() && d.forced()) CHECK(long(a) - long(b) + long(c.lo) - long(d.lo) == 0);
            // any point in the intervals with the alternating sum zero is admissible
            if (c.bounded() && d.bounded()) CHECK(c.lo <= *c.hi);
        }
}

TEST_CASE("spec files") {
    auto v = parse_exact_specs(R"({
  "terms": [{"name": "a", "dim": 3}, {"name": "b", "dim": null}],
  "exact_at": [0, 1],
  "left_zero": true,
  "right_zero": true
})");
    REQUIRE(v.size() == 1);
    CHECK(exact_solve(v).find("b")->dim == Interval{3, 3});
    auto again = parse_exact_specs(write_exact_spec(v[0]));
    REQUIRE(again.size() == 1);
    CHECK(write_exact_spec(again[0]) == write_exact_spec(v[0]));

    auto many = parse_exact_specs(R"({"sequences": [
  {"terms": [{"name": "x", "dim": 2}, {"name": "y"}], "exact_at": [0, 1], "left_zero": true, "right_zero": true},
  {"terms": [{"name": "y"}, {"name": "z"}], "exact_at": [0, 1], "left_zero": true, "right_zero": true}
]})");
    REQUIRE(many.size() == 2);
    CHECK(exact_solve(many).find("z")->dim == Interval{2, 2});

    try {
        parse_exact_specs("{\n  \"terms\": [{\"name\": \"a\"}],\n  \"exact_at\": [4]\n}", "bad.json");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("bad.json:3") != std::string::npos);
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_exact_specs("{\"terms\": [], \"extra\": 1}"), ParseError);
    CHECK_THROWS_AS(parse_exact_specs("{\"terms\": [{\"name\": \"a\", \"dim\": -1}]}"), ParseError);
}

TEST_CASE("irrational torus table") {
    auto t = torus_report();
    auto val = [&](const char* q, std::size_t k) {
        const TableEntry* e = t.find(q, k);
        REQUIRE(e);
        return e->value;
    };
    auto prov = [&](const char* q, std::size_t k) { return t.find(q, k)->provenance; };

    std::vector<std::size_t> cech;
    for (std::size_t k = 0; k <= 4; ++k) cech.push_back(val("H", k).lo);
    CHECK(cech == std::vector<std::size_t>{1, 2, 1, 0, 0});
    CHECK(prov("H", 1) == "input:group-cohomology");
    CHECK(prov("H_dR", 1) == "input:de-rham");

    CHECK(val("H_nabla", 1) == Interval{2, 2});
    CHECK(val("H_nabla", 2) == Interval{1, 1});
    for (std::size_t k = 3; k <= 4; ++k) CHECK(val("H_nabla", k) == Interval{0, 0});
    CHECK(prov("H_nabla", 1) == "forced");
    CHECK(val("H_conn", 1) == Interval{1, 1});
    CHECK(val("H_triv", 1) == Interval{1, 1});
    CHECK(prov("H_triv", 1) == "forced");

    CHECK(val("H_conn", 2) == Interval{0, 1});
    CHECK(prov("H_conn", 2) == "interval");
    CHECK(!val("H_conn", 2).forced());
    CHECK(val("H_triv", 2) == Interval{0, 1});
    CHECK(val("H_conn", 3) == Interval{0, 0});
    CHECK(!t.find("H_nabla", 0));
}

TEST_CASE("solver confluence") {
    auto seqs = torus_sequences();
    auto base = exact_solve(seqs);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        SolveOptions o;
        o.shuffle_seed = seed;
        auto r = exact_solve(seqs, o);
        REQUIRE(r.terms.size() == base.terms.size());
        for (std::size_t i = 0; i < r.terms.size(); ++i) CHECK(r.terms[i].dim == base.terms[i].dim);
        for (std::size_t i = 0; i < r.maps.size(); ++i) CHECK(r.maps[i].rank == base.maps[i].rank);
    }
    // forced values come from propagation alone; shaving only tightens intervals
    SolveOptions raw;
    raw.shave = false;
    auto p = exact_solve(seqs, raw);
    for (std::size_t i = 0; i < p.terms.size(); ++i)
        if (p.terms[i].dim.forced()) CHECK(p.terms[i].dim == base.terms[i].dim);
}

TEST_CASE("other group ranks") {
    auto t = torus_report(3);
    std::vector<std::size_t> cech;
    for (std::size_t k = 0; k <= 4; ++k) cech.push_back(t.find("H", k)->value.lo);
    CHECK(cech == std::vector<std::size_t>{1, 3, 3, 1, 0});
    CHECK(t.find("H_nabla", 1)->value == Interval{3, 3});
    CHECK(t.find("H_conn", 1)->value == Interval{2, 2});
}
