#include "doctest.h"

#include "diffcoh/errors.hpp"
#include "diffcoh/random.hpp"
#include "diffcoh/subspace.hpp"
#include "oracles.hpp"

using namespace diffcoh;

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK((a + Rational(3, 2)).is_zero());
    CHECK((Rational(1, 3) * Rational(3)).is_one());
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK_THROWS_AS(Rational::parse("x/2"), ParseError);
}

TEST_CASE("rational promotes to bignum and back") {
    Rational big(std::int64_t(1) << 62);
    Rational sq = big * big;
    CHECK(sq.str() == "21267647932558653966460912964485513216");
    Rational back = sq / big;
    CHECK(back == big);
    CHECK((sq - sq).is_zero());
    Rational x(1, std::int64_t(1) << 62);
    CHECK((x * x * big * big).is_one());
}

TEST_CASE("rank of small matrices") {
    CHECK(rank(Matrix(0, 0)) == 0);
    CHECK(rank(Matrix::identity(3)) == 3);
    CHECK(rank(Matrix::from_ints({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel(Matrix::identity(3)).dim() == 0);
    CHECK(kernel(Matrix(2, 3)).dim() == 3);
    LinearSubspace k = kernel(Matrix::from_ints({{1, 1, 0}, {0, 0, 1}}));
    REQUIRE(k.dim() == 1);
    CHECK(k.basis() == Matrix::from_ints({{1, -1, 0}}));
}

TEST_CASE("image example") {
    LinearSubspace im = image(Matrix::from_ints({{1, 2}, {2, 4}}));
    REQUIRE(im.dim() == 1);
    CHECK(im == LinearSubspace::span(Matrix::from_ints({{1, 2}})));
}

TEST_CASE("quotient dimension") {
    LinearSubspace a = kernel(Matrix::from_ints({{0, 0}}));
    LinearSubspace b = LinearSubspace::span(Matrix::from_ints({{1, 0}}));
    CHECK(quotient_dim(a, b) == 1);
    CHECK_THROWS_AS(quotient_dim(b, a), SubspaceNotContained);
}

TEST_CASE("solve examples") {
    auto x = solve(Matrix::from_ints({{2}}), Vector{Rational(1)});
    REQUIRE(x);
    CHECK((*x)[0] == Rational(1, 2));
    CHECK_FALSE(solve(Matrix(2, 2), Vector{Rational(1), Rational(0)}));
    // x + y = 2 has the canonical solution (1, 1), orthogonal to (1, -1)
    auto y = solve(Matrix::from_ints({{1, 1}}), Vector{Rational(2)});
    REQUIRE(y);
    CHECK((*y)[0] == Rational(1));
    CHECK((*y)[1] == Rational(1));
}

TEST_CASE("canonical basis does not depend on the spanning set") {
    LinearSubspace a = LinearSubspace::span(Matrix::from_ints({{1, 2, 3}, {0, 1, 1}}));
    LinearSubspace b = LinearSubspace::span(Matrix::from_ints({{1, 3, 4}, {2, 5, 7}, {1, 2, 3}}));
    CHECK(a == b);
}

TEST_CASE("random matrices: rank-nullity, canonical forms, solve") {
    rnd::Rng rng(7);
    for (int t = 0; t < 150; ++t) {
        std::size_t r = std::size_t(rng.uniform(0, 7)), c = std::size_t(rng.uniform(0, 7));
        Matrix m = rnd::random_matrix(rng, r, c, 3, 1);
        std::size_t rk = rank(m);
        CHECK(rk == oracle::rank(oracle::to_dense(m)));
        CHECK(rk + kernel(m).dim() == c);
        CHECK(image(m).dim() == rk);
        CHECK((m * kernel(m).basis().transpose()).is_zero());
        // the canonical basis is a fixed point
        CHECK(LinearSubspace::span(kernel(m).basis()) == kernel(m));
        Vector x0(c);
        for (auto& v : x0) v = rng.small_rational();
        Vector b = m.apply(x0);
        auto x = solve(m, b);
        REQUIRE(x);
        CHECK(m.apply(*x) == b);
        CHECK(kernel(m).basis().apply(*x) == Vector(kernel(m).dim()));
    }
}

TEST_CASE("intersection and preimage") {
    LinearSubspace a = LinearSubspace::span(Matrix::from_ints({{1, 0, 0}, {0, 1, 0}}));
    LinearSubspace b = LinearSubspace::span(Matrix::from_ints({{0, 1, 0}, {0, 0, 1}}));
    CHECK(a.intersect(b) == LinearSubspace::span(Matrix::from_ints({{0, 1, 0}})));
    CHECK(a.sum(b).dim() == 3);
    Matrix m = Matrix::from_ints({{1, 1}, {0, 0}, {0, 0}});
    LinearSubspace t = LinearSubspace::span(Matrix::from_ints({{0, 1, 0}}));
    CHECK(preimage(m, t) == LinearSubspace::span(Matrix::from_ints({{1, -1}})));
}
