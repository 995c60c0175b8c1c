#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "diffcoh/matrix.hpp"
#include "diffcoh/subspace.hpp"

namespace diffcoh::chaincx {

// Bounded chain complex C_0 <- C_1 <- ... <- C_L of finite-dimensional Q-spaces.
// d(k) : C_k -> C_{k-1}; degrees outside [0, L] are zero.
class ChainComplex {
public:
    ChainComplex() : dims_{0}, d_{Matrix(0, 0)} {}
    ChainComplex(std::vector<std::size_t> dims, std::vector<Matrix> d);  // d[k-1] = d_k

    static ChainComplex zero(std::size_t length = 0);
    static ChainComplex concentrated(std::size_t dim, std::size_t degree);

    std::size_t length() const { return dims_.size() - 1; }
    std::size_t dim(long k) const;
    Matrix d(long k) const;
    std::vector<std::size_t> dims() const { return dims_; }
    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0; }

    ChainComplex padded(std::size_t length) const;

    friend bool operator==(const ChainComplex& a, const ChainComplex& b);

private:
    std::vector<std::size_t> dims_;
    std::vector<Matrix> d_;  // d_[k] = d_k, d_[0] : C_0 -> 0
};

// Degree-preserving map, checked to commute with the differentials.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components);

    static ChainMap identity(const ChainComplex& c);
    static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    std::size_t length() const { return std::max(source_.length(), target_.length()); }
    Matrix component(long k) const;
    const std::vector<Matrix>& components() const { return f_; }

    friend ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-(const ChainMap& o) const;
    ChainMap scaled(const Rational& c) const;

    friend bool operator==(const ChainMap& a, const ChainMap& b);

private:
    ChainComplex source_;
    ChainComplex target_;
    std::vector<Matrix> f_;
};

// Graded map of degree k: f_i : C_i -> D_{i+k}; no commutation required.
class DegreeKMap {
public:
    DegreeKMap() = default;
    DegreeKMap(ChainComplex source, ChainComplex target, long k, std::vector<Matrix> components);

    static DegreeKMap zero(const ChainComplex& source, const ChainComplex& target, long k);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    long degree() const { return k_; }
    Matrix component(long i) const;

    // d_D f - (-1)^k f d_C, a map of degree k - 1
    DegreeKMap boundary() const;

private:
    ChainComplex source_;
    ChainComplex target_;
    long k_ = 0;
    std::vector<Matrix> f_;  // f_[i] for i = 0..source.length()
};

ChainMap compose(const ChainMap& g, const ChainMap& f);
DegreeKMap compose(const DegreeKMap& g, const DegreeKMap& f);
DegreeKMap compose(const ChainMap& g, const DegreeKMap& f);
DegreeKMap compose(const DegreeKMap& g, const ChainMap& f);
DegreeKMap as_degree_map(const ChainMap& f);
DegreeKMap operator+(const DegreeKMap& a, const DegreeKMap& b);

// chain complex indexed from min_degree (usually -1) up, before truncation
struct UnboundedComplex {
    long min_degree = 0;
    std::vector<std::size_t> dims;  // dims[i] is the dimension in degree min_degree + i
    std::vector<Matrix> d;          // d[i] : degree min_degree+i -> min_degree+i-1, d[0] unused
    std::size_t dim(long k) const;
    Matrix diff(long k) const;
    void check() const;
};

struct Truncation {
    ChainComplex complex;
    LinearSubspace cycles0;  // degree-0 cycles inside the untruncated C_0
};

Truncation smart_truncate_with_basis(const UnboundedComplex& c);
ChainComplex smart_truncate(const UnboundedComplex& c);

std::size_t homology_dim(const ChainComplex& c, long n);
std::vector<std::size_t> homology_dims(const ChainComplex& c);
LinearSubspace cycles(const ChainComplex& c, long n);
LinearSubspace boundaries(const ChainComplex& c, long n);

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);
// (f, g) : A -> X + Y
ChainMap pair_map(const ChainMap& f, const ChainMap& g);

struct MappingComplex {
    UnboundedComplex full;    // degrees -1 .. L_D
    Truncation truncated;
    ChainComplex source;
    ChainComplex target;
    // degree-0 coordinates (in the truncated basis) to a chain map
    ChainMap chain_map(const Vector& coords) const;
};

MappingComplex mapping_complex_data(const ChainComplex& c, const ChainComplex& d);
ChainComplex mapping_complex(const ChainComplex& c, const ChainComplex& d);

struct PathObject {
    ChainComplex path;
    ChainMap incl;  // C -> C^I
    ChainMap proj;  // C^I -> C + C
};

PathObject path_object(const ChainComplex& c);

struct Pullback {
    ChainComplex apex;
    ChainMap leg_x;
    ChainMap leg_y;
    std::vector<LinearSubspace> subspaces;  // P_n inside X_n + Y_n
};

Pullback pullback(const ChainMap& f, const ChainMap& g);
// the map A -> P induced by a : A -> X, b : A -> Y with f a = g b
ChainMap factor_through(const Pullback& p, const ChainMap& a, const ChainMap& b);

bool is_fibration(const ChainMap& f);
bool is_quasi_iso(const ChainMap& f);

struct HomotopyPullback {
    ChainComplex apex;
    ChainMap leg_x;
    ChainMap leg_y;
    ChainMap leg_path;
    PathObject path;
    Pullback pb;  // of (f + g) against the path projection
};

HomotopyPullback homotopy_pullback(const ChainMap& f, const ChainMap& g);

// A --top--> Y
// |          |
// left     right
// v          v
// X --bot--> Z
// homotopy K : A -> Z of degree +1 with dK + Kd = right top - bottom left
struct Square {
    ChainMap top;
    ChainMap left;
    ChainMap right;
    ChainMap bottom;
    std::optional<DegreeKMap> homotopy;
};

enum class Commutes { Strict, Homotopy };

// throws SquareNotCommuting
Commutes check_square(const Square& s);

struct Comparison {
    ChainMap map;  // A -> homotopy pullback of (bottom, right)
    HomotopyPullback hp;
    Commutes commutes;
    bool quasi_iso;
};

Comparison compare_into_homotopy_pullback(const Square& s);

// [L | R] with L.right == R.left
Square paste_horizontal(const Square& l, const Square& r);
// U over Lo with U.bottom == Lo.top
Square paste_vertical(const Square& upper, const Square& lower);

// the homotopy pullback square of a cospan, with its canonical homotopy
Square homotopy_pullback_square(const ChainMap& f, const ChainMap& g);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace diffcoh::chaincx
