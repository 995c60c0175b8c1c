#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "diffcoh/chaincx.hpp"
#include "diffcoh/simplicial.hpp"

namespace diffcoh::totalize {

using chaincx::ChainComplex;
using chaincx::ChainMap;

// Cosimplicial object in bounded chain complexes, levels C^0..C^N.
// coface(p, i) : C^{p-1} -> C^p, codegeneracy(p, j) : C^p -> C^{p-1}.
// exhaustive means every level above N is zero.
class CosimplicialChain {
public:
    CosimplicialChain(std::vector<ChainComplex> levels, std::vector<std::vector<ChainMap>> cofaces,
                      std::vector<std::vector<ChainMap>> codegeneracies, bool exhaustive = false);

    static CosimplicialChain constant(const ChainComplex& k, std::size_t top);
    // levels 0..top only; no longer exhaustive unless nothing was dropped
    CosimplicialChain truncated(std::size_t top) const;

    std::size_t top() const { return levels_.size() - 1; }
    std::size_t height() const;  // max chain length over the levels
    bool exhaustive() const { return exhaustive_; }
    const ChainComplex& level(std::size_t p) const { return levels_.at(p); }
    const ChainMap& coface(std::size_t p, std::size_t i) const { return cofaces_.at(p).at(i); }
    const ChainMap& codegeneracy(std::size_t p, std::size_t j) const { return codegens_.at(p).at(j); }

private:
    std::vector<ChainComplex> levels_;
    std::vector<std::vector<ChainMap>> cofaces_;
    std::vector<std::vector<ChainMap>> codegens_;
    bool exhaustive_;
};

// levelwise chain maps commuting with all cofaces and codegeneracies
struct CosimplicialMap {
    CosimplicialChain source;
    CosimplicialChain target;
    std::vector<ChainMap> levels;
    void check() const;
};

// Grid C^{p,q}, 0 <= p <= P, 0 <= q <= Q, with vertical d : C^{p,q} -> C^{p,q-1}
// and horizontal delta : C^{p,q} -> C^{p+1,q}; checked for dd = 0, delta delta = 0, d delta = delta d.
class DoubleComplex {
public:
    DoubleComplex(std::vector<std::vector<std::size_t>> dims, std::vector<std::vector<Matrix>> vertical,
                  std::vector<std::vector<Matrix>> horizontal, bool exhaustive = false);

    std::size_t width() const { return dims_.size() - 1; }   // P
    std::size_t height() const { return height_; }           // Q
    bool exhaustive() const { return exhaustive_; }
    std::size_t dim(long p, long q) const;
    Matrix d(long p, long q) const;      // C^{p,q} -> C^{p,q-1}
    Matrix delta(long p, long q) const;  // C^{p,q} -> C^{p+1,q}

    // truncation at column P is invisible in tot degrees >= stable_from()
    long stable_from() const;

private:
    std::vector<std::vector<std::size_t>> dims_;   // dims_[p][q]
    std::vector<std::vector<Matrix>> vertical_;    // vertical_[p][q]
    std::vector<std::vector<Matrix>> horizontal_;  // horizontal_[p][q], p < P
    std::size_t height_ = 0;
    bool exhaustive_ = false;
};

// delta = sum_{i=0}^{p+1} (-1)^i d^i
DoubleComplex to_double_complex(const CosimplicialChain& c);
// same on the normalized part, the intersection of the kernels of all codegeneracies
DoubleComplex to_normalized_double_complex(const CosimplicialChain& c);

enum class SignConvention {
    Mapping,  // D = d - (-1)^{q-p} delta
    Vertical  // D = d + (-1)^q delta
};

struct TotBlock {
    long p;
    long q;
    std::size_t offset;
};

struct TotComplex {
    chaincx::UnboundedComplex full;    // degrees -1 .. Q
    chaincx::Truncation truncated;     // tau_{>=0}
    std::vector<std::vector<TotBlock>> layout;  // layout[k + 1] lists the blocks of degree k
    SignConvention convention;
    long stable_from;

    const ChainComplex& complex() const { return truncated.complex; }
    bool stable(long k) const { return k >= stable_from; }
};

TotComplex tot(const DoubleComplex& dc);
TotComplex tot_dv(const DoubleComplex& dc);
TotComplex tot_with(const DoubleComplex& dc, SignConvention conv);

struct FlaggedDim {
    std::size_t dim;
    bool stable;
};

std::size_t tot_cohomology(const DoubleComplex& dc, long n);
FlaggedDim tot_cohomology_flagged(const DoubleComplex& dc, long n);

using SignTable = std::function<int(long p)>;
int default_sign(long p);  // + for p = 0, 3 mod 4, - otherwise

// chain isomorphism tot -> tot_dv, sigma_{p,q} = sign(p) id; throws SignIsoFailure
ChainMap sign_iso(const DoubleComplex& dc, const SignTable& sign = default_sign);

struct EndReport {
    std::vector<std::size_t> end_dims;
    std::vector<std::size_t> tot_dims;
    bool dims_agree = false;
    bool isomorphism = false;          // x_n = phi_n(top simplex) is bijective in every degree
    bool differential_agrees = false;  // and intertwines the differentials
    bool stable_homology_agrees = false;  // against the unnormalized tot, stable degrees only
    bool ok() const { return dims_agree && isomorphism && differential_agrees && stable_homology_agrees; }
};

// the end over the levels of c of Map(N Q Delta^n, C^n), built from its equalizer description.
// Its elements are killed by the codegeneracies, so it is compared cell by cell with the
// normalized totalization and on homology with the unnormalized one.
EndReport verify_end_formula(const CosimplicialChain& c);

ChainMap tot_map(const CosimplicialMap& f, SignConvention conv = SignConvention::Mapping);

// cosimplicial Dold-Kan applied in the horizontal direction of a double complex
// whose columns p > level are zero
CosimplicialChain cosimplicial_dold_kan(const DoubleComplex& b, std::size_t level);

}  // namespace diffcoh::totalize
