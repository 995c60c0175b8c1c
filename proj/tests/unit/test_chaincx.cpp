#include "doctest.h"

#include "diffcoh/chaincx.hpp"
#include "diffcoh/errors.hpp"
#include "diffcoh/random.hpp"
#include "oracles.hpp"

using namespace diffcoh;
using namespace diffcoh::chaincx;

namespace {

ChainComplex two_term(const Matrix& d1) { return ChainComplex({d1.rows(), d1.cols()}, {d1}); }

}  // namespace

TEST_CASE("homology of two-term complexes") {
    ChainComplex id = two_term(Matrix::identity(1));
    CHECK(homology_dim(id, 0) == 0);
    CHECK(homology_dim(id, 1) == 0);
    ChainComplex zero = two_term(Matrix(1, 1));
    CHECK(homology_dim(zero, 0) == 1);
    CHECK(homology_dim(zero, 1) == 1);
    CHECK_THROWS_AS(homology_dim(zero, 2), DegreeOutOfRange);
    CHECK_THROWS_AS(homology_dim(zero, -1), DegreeOutOfRange);
}

TEST_CASE("d o d is checked at construction") {
    CHECK_THROWS_AS(ChainComplex({1, 1, 1}, {Matrix::identity(1), Matrix::identity(1)}), InvalidComplex);
    CHECK_THROWS_AS(ChainComplex({1, 2}, {Matrix::identity(1)}), ShapeMismatch);
}

TEST_CASE("mapping complex of [Q -0-> Q] to itself") {
    ChainComplex c = two_term(Matrix(1, 1));
    ChainComplex m = mapping_complex(c, c);
    CHECK(m.dim(0) == 2);
}

TEST_CASE("mapping complex degree 0 is the chain-map solution space") {
    rnd::Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        ChainComplex c = rnd::random_complex(rng, 3, 3);
        ChainComplex d = rnd::random_complex(rng, 3, 3);
        // brute force: unknown f_k entries, equations d f_k = f_{k-1} d
        std::size_t L = std::max(c.length(), d.length());
        std::vector<std::size_t> off;
        std::size_t n = 0;
        for (std::size_t k = 0; k <= L; ++k) {
            off.push_back(n);
            n += c.dim(long(k)) * d.dim(long(k));
        }
        oracle::Dense eqs;
        for (std::size_t k = 1; k <= L; ++k) {
            auto dd = oracle::to_dense(d.d(long(k)));
            auto dc = oracle::to_dense(c.d(long(k)));
            std::size_t ck = c.dim(long(k)), dk = d.dim(long(k));
            std::size_t ck1 = c.dim(long(k) - 1), dk1 = d.dim(long(k) - 1);
            for (std::size_t a = 0; a < dk1; ++a)
                for (std::size_t b = 0; b < ck; ++b) {
                    std::vector<mpq_class> row(n);
                    for (std::size_t j = 0; j < dk; ++j) row[off[k] + j * ck + b] += dd[a][j];
                    for (std::size_t j = 0; j < ck1; ++j) row[off[k - 1] + a * ck1 + j] -= dc[j][b];
                    eqs.push_back(row);
                }
        }
        std::size_t expect = n - (eqs.empty() ? 0 : oracle::rank(eqs));
        CHECK(mapping_complex(c, d).dim(0) == expect);
    }
}

TEST_CASE("smart truncation keeps degree-0 cycles") {
    UnboundedComplex u;
    u.min_degree = -1;
    u.dims = {1, 2};
    u.d = {Matrix(), Matrix::from_ints({{1, 1}})};
    ChainComplex t = smart_truncate(u);
    CHECK(t.dim(0) == 1);
    CHECK(t.length() == 0);
}

TEST_CASE("path object of a small complex") {
    ChainComplex c = two_term(Matrix::from_ints({{1}, {0}}));
    PathObject p = path_object(c);
    CHECK(p.path.dim(0) == 3);
    CHECK(p.path.dim(1) == 2);
    CHECK(compose(p.proj, p.incl) ==
          pair_map(ChainMap::identity(c), ChainMap::identity(c)));
}

TEST_CASE("path object properties on random complexes") {
    rnd::Rng rng(3);
    for (int t = 0; t < 60; ++t) {
        ChainComplex c = rnd::random_complex(rng, 4, 3);
        PathObject p = path_object(c);
        CHECK(oracle::betti(p.path) == oracle::betti(c));
        CHECK(is_fibration(p.proj));
        CHECK(is_quasi_iso(p.incl));
        CHECK(oracle::cone_acyclic(p.incl));
    }
}

TEST_CASE("quasi-iso agrees with the cone test") {
    rnd::Rng rng(5);
    int yes = 0, no = 0;
    for (int t = 0; t < 120; ++t) {
        ChainComplex c = rnd::random_complex(rng, 3, 3);
        ChainComplex d = rnd::random_complex(rng, 3, 3);
        ChainMap f = rnd::random_chain_map(rng, c, d);
        bool q = is_quasi_iso(f);
        CHECK(q == oracle::cone_acyclic(f));
        (q ? yes : no)++;
    }
    CHECK(no > 0);
    CHECK(yes > 0);
}

TEST_CASE("zero complex is first class") {
    ChainComplex z;
    CHECK(z.length() == 0);
    CHECK(homology_dim(z, 0) == 0);
    PathObject p = path_object(z);
    CHECK(p.path.is_zero());
    ChainComplex c = two_term(Matrix(1, 1));
    ChainMap f = ChainMap::zero(z, c);
    CHECK(f.length() == 1);
    CHECK(mapping_complex(z, c).dim(0) == 0);  // only the zero map
    CHECK(mapping_complex(c, c).dim(0) == 2);
}

TEST_CASE("homotopy pullback with zero legs is the loop complex") {
    rnd::Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        ChainComplex z = rnd::random_complex(rng, 4, 3);
        ChainComplex zero;
        HomotopyPullback hp = homotopy_pullback(ChainMap::zero(zero, z), ChainMap::zero(zero, z));
        auto hz = oracle::betti(z);
        auto hl = oracle::betti(hp.apex);
        for (std::size_t n = 0; n + 1 < hz.size(); ++n) CHECK(hl[n] == hz[n + 1]);
    }
}

TEST_CASE("square comparison and homotopies") {
    ChainComplex q = two_term(Matrix(1, 1));
    ChainComplex zero;
    // the homotopy pullback square of a cospan always passes
    rnd::Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        ChainComplex x = rnd::random_complex(rng, 3, 2);
        ChainComplex y = rnd::random_complex(rng, 3, 2);
        ChainComplex z = rnd::random_complex(rng, 3, 2);
        ChainMap f = rnd::random_chain_map(rng, x, z);
        ChainMap g = rnd::random_chain_map(rng, y, z);
        Square s = homotopy_pullback_square(f, g);
        Comparison c = compare_into_homotopy_pullback(s);
        CHECK(c.quasi_iso);
    }
    // a non-commuting square without homotopy is rejected
    ChainComplex pt = ChainComplex::concentrated(1, 0);
    ChainMap id = ChainMap::identity(pt);
    ChainMap z0 = ChainMap::zero(pt, pt);
    Square bad{id, id, id, z0, std::nullopt};
    CHECK_THROWS_AS(compare_into_homotopy_pullback(bad), SquareNotCommuting);
}
