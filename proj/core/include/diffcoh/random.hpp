#pragma once

#include <cstdint>
#include <random>

#include "diffcoh/chaincx.hpp"
#include "diffcoh/matrix.hpp"
#include "diffcoh/polyforms.hpp"
#include "diffcoh/totalize.hpp"

namespace diffcoh::rnd {

// Deterministic across platforms: only the raw mt19937_64 stream is used,
// never the implementation-defined distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    long uniform(long lo, long hi);  // inclusive
    bool chance(long num, long den) { return uniform(0, den - 1) < num; }
    Rational small_rational(long range = 3);

private:
    std::mt19937_64 gen_;
};

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range = 2, long zero_bias = 1);

// length <= max_length, dims <= max_dim, differentials built from kernel bases
chaincx::ChainComplex random_complex(Rng& rng, std::size_t max_length, std::size_t max_dim);
chaincx::ChainComplex random_complex_exact_length(Rng& rng, std::size_t length, std::size_t max_dim);
// random element of the chain-map space Hom_0(C, D)
chaincx::ChainMap random_chain_map(Rng& rng, const chaincx::ChainComplex& c, const chaincx::ChainComplex& d);
// random chain map surjective in positive degrees, built as a projection off a direct summand
chaincx::ChainMap random_fibration_onto(Rng& rng, const chaincx::ChainComplex& z, std::size_t max_dim);

// sums of tensor products U (x) V, conjugated cellwise by random invertible matrices
totalize::DoubleComplex random_double_complex(Rng& rng, std::size_t width, std::size_t height, std::size_t max_dim);
// cosimplicial Dold-Kan of a random double complex of the given width
totalize::CosimplicialChain random_cosimplicial_chain(Rng& rng, std::size_t level, std::size_t height,
                                                      std::size_t max_dim);

Polynomial random_polynomial(Rng& rng, std::size_t nvars, long max_degree, std::size_t terms = 3);
forms::PolyForm random_form(Rng& rng, std::size_t n, std::size_t k, long bound, std::size_t terms = 4);
// components of degree <= max_degree
PolyMap random_polymap(Rng& rng, std::size_t m, std::size_t n, long max_degree);

}  // namespace diffcoh::rnd
