#pragma once

#include <cstddef>
#include <vector>

#include "diffcoh/chaincx.hpp"
#include "diffcoh/matrix.hpp"
#include "diffcoh/subspace.hpp"

namespace diffcoh::simplicial {

// monotone map [m] -> [n] written as its value sequence (length m + 1)
using Monotone = std::vector<std::size_t>;

Monotone coface_map(std::size_t n, std::size_t i);       // [n-1] -> [n], skips i
Monotone codegeneracy_map(std::size_t n, std::size_t j);  // [n+1] -> [n], hits j twice
Monotone compose(const Monotone& g, const Monotone& f);   // g after f
// every surjection [n] ->> [k], 0 <= k <= n, sorted lexicographically by values
std::vector<Monotone> surjections(std::size_t n);

// Levels V_0..V_N with faces d_i : V_n -> V_{n-1} and degeneracies s_j : V_n -> V_{n+1}.
class SimplicialVect {
public:
    SimplicialVect(std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> faces,
                   std::vector<std::vector<Matrix>> degeneracies);

    std::size_t top() const { return dims_.size() - 1; }
    std::size_t dim(std::size_t n) const { return dims_.at(n); }
    const Matrix& face(std::size_t n, std::size_t i) const { return faces_.at(n).at(i); }
    const Matrix& degeneracy(std::size_t n, std::size_t j) const { return degens_.at(n).at(j); }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> faces_;   // faces_[n][i], n >= 1
    std::vector<std::vector<Matrix>> degens_;  // degens_[n][j], n < N
};

// Levels A^0..A^N with cofaces d^i : A^{n-1} -> A^n and codegeneracies s^j : A^n -> A^{n-1}.
class CosimplicialVect {
public:
    CosimplicialVect(std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> cofaces,
                     std::vector<std::vector<Matrix>> codegeneracies);

    // levelwise linear dual of a simplicial vector space
    static CosimplicialVect dual(const SimplicialVect& v);

    std::size_t top() const { return dims_.size() - 1; }
    std::size_t dim(std::size_t n) const { return dims_.at(n); }
    const Matrix& coface(std::size_t n, std::size_t i) const { return cofaces_.at(n).at(i); }
    const Matrix& codegeneracy(std::size_t n, std::size_t j) const { return codegens_.at(n).at(j); }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> cofaces_;   // cofaces_[n][i] : A^{n-1} -> A^n
    std::vector<std::vector<Matrix>> codegens_;  // codegens_[n][j] : A^n -> A^{n-1}
};

chaincx::ChainComplex normalized_chains(const SimplicialVect& v);

// DK(C)_n = sum over surjections [n] ->> [k] of C_k, levels 0..level
SimplicialVect dold_kan(const chaincx::ChainComplex& c, std::size_t level);

// normalized chains on the standard n-simplex; degree k has the (k+1)-subsets in lex order
chaincx::ChainComplex free_simplex_chains(std::size_t n);
// the map N(Q Delta^m) -> N(Q Delta^n) induced by a monotone f : [m] -> [n]
chaincx::ChainMap free_simplex_map(const Monotone& f, std::size_t n);
// (k+1)-subsets of {0..n}, the basis of degree k above
std::vector<std::vector<std::size_t>> simplex_faces(std::size_t n, std::size_t k);

enum class MatchingRelation {
    LowerEq,   // s^j a_i = s^i a_{j+1} for i <= j
    GreaterEq  // the same equation read for i >= j
};

struct MatchingObject {
    LinearSubspace subspace;  // inside (A^{n-1})^n
    Matrix matching_map;      // A^n -> (A^{n-1})^n, a -> (s^0 a, ..., s^{n-1} a)
};

MatchingObject matching_object(const CosimplicialVect& a, std::size_t n,
                               MatchingRelation rel = MatchingRelation::LowerEq);

}  // namespace diffcoh::simplicial
