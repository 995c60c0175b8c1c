#include "doctest.h"

#include "diffcoh/errors.hpp"
#include "diffcoh/random.hpp"
#include "diffcoh/simplicial.hpp"
#include "oracles.hpp"

using namespace diffcoh;
using namespace diffcoh::simplicial;
using chaincx::ChainComplex;

TEST_CASE("surjections are ordered lexicographically") {
    auto s = surjections(2);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == Monotone{0, 0, 0});
    CHECK(s[1] == Monotone{0, 0, 1});
    CHECK(s[2] == Monotone{0, 1, 1});
    CHECK(s[3] == Monotone{0, 1, 2});
}

TEST_CASE("Dold-Kan of Q[1] has level dimensions 0, 1, 2, 3") {
    ChainComplex q1 = ChainComplex::concentrated(1, 1);
    SimplicialVect v = dold_kan(q1, 3);
    for (std::size_t n = 0; n <= 3; ++n) CHECK(v.dim(n) == std::size_t(oracle::binomial(long(n), 1)));
}

TEST_CASE("Dold-Kan refuses to drop degrees") {
    ChainComplex q3 = ChainComplex::concentrated(1, 3);
    CHECK_THROWS_AS(dold_kan(q3, 2), TruncationTooSmall);
    CHECK_NOTHROW(dold_kan(q3, 3));
}

TEST_CASE("normalized chains invert Dold-Kan exactly") {
    rnd::Rng rng(101);
    for (int t = 0; t < 60; ++t) {
        ChainComplex c = rnd::random_complex(rng, 4, 3);
        ChainComplex back = normalized_chains(dold_kan(c, c.length()));
        CHECK(back == c);
    }
}

TEST_CASE("free simplex chains") {
    ChainComplex c1 = free_simplex_chains(1);
    CHECK(c1.dims() == std::vector<std::size_t>{2, 1});
    CHECK(c1.d(1) == Matrix::from_ints({{-1}, {1}}));
    ChainComplex c2 = free_simplex_chains(2);
    CHECK(c2.dims() == std::vector<std::size_t>{3, 3, 1});
    CHECK(oracle::betti(c2) == std::vector<std::size_t>{1, 0, 0});
    for (std::size_t n = 0; n <= 4; ++n) {
        ChainComplex c = free_simplex_chains(n);
        for (std::size_t k = 0; k <= n; ++k) CHECK(c.dim(long(k)) == std::size_t(oracle::binomial(long(n + 1), long(k + 1))));
        auto h = oracle::betti(c);
        CHECK(h[0] == 1);
        for (std::size_t k = 1; k <= n; ++k) CHECK(h[k] == 0);
    }
}

TEST_CASE("induced maps of simplices are functorial") {
    Monotone f{0, 2};        // [1] -> [2]
    Monotone g{0, 1, 1, 3};  // [3] -> [3]... composed below
    Monotone h{0, 0, 1};     // [2] -> [1]
    auto a = free_simplex_map(compose(h, f), 1);
    auto b = chaincx::compose(free_simplex_map(h, 1), free_simplex_map(f, 2));
    CHECK(a == b);
    (void)g;
}

TEST_CASE("identity violations are reported") {
    // two faces that disagree on V_2 -> V_0
    Matrix one = Matrix::identity(1);
    std::vector<std::vector<Matrix>> faces(2), degens(2);
    faces[1] = {one, one};
    degens[0] = {one};
    CHECK_NOTHROW(SimplicialVect({1, 1}, faces, degens));
    faces[1] = {one, Matrix::scalar(1, 2)};
    CHECK_THROWS_AS(SimplicialVect({1, 1}, faces, degens), IdentityViolation);
}

TEST_CASE("matching object: relation direction and surjectivity") {
    rnd::Rng rng(31);
    int lower_fails = 0, upper_fails = 0;
    for (int t = 0; t < 40; ++t) {
        ChainComplex c = rnd::random_complex_exact_length(rng, 3, 2);
        CosimplicialVect a = CosimplicialVect::dual(dold_kan(c, 3));
        CHECK_THROWS_AS(matching_object(a, 0), DegreeOutOfRange);
        CHECK_THROWS_AS(matching_object(a, 4), DegreeOutOfRange);
        for (std::size_t n = 1; n <= 3; ++n) {
            MatchingObject lo = matching_object(a, n, MatchingRelation::LowerEq);
            MatchingObject hi = matching_object(a, n, MatchingRelation::GreaterEq);
            LinearSubspace img = image(lo.matching_map);
            if (!lo.subspace.contains(img)) ++lower_fails;
            if (!hi.subspace.contains(image(hi.matching_map))) ++upper_fails;
            CHECK(rank(lo.matching_map) == lo.subspace.dim());
        }
    }
    CHECK(lower_fails == 0);
    CHECK(upper_fails > 0);
}
