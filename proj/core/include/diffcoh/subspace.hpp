#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "diffcoh/matrix.hpp"

namespace diffcoh {

// Incremental Gaussian elimination on row vectors of fixed length.
// With reduced = true the stored rows are kept in reduced row echelon form.
class Echelon {
public:
    explicit Echelon(std::size_t ambient, bool reduced = true);

    // returns true when v was independent of the rows added so far
    bool add(const SparseVector& v);
    void add_rows(const Matrix& m);

    std::size_t rank() const { return rows_.size(); }
    std::size_t ambient() const { return ambient_; }

    // v minus its projection along pivot columns (requires reduced = true)
    SparseVector reduce(const SparseVector& v) const;

    // rows sorted by pivot column
    Matrix basis() const;
    std::vector<std::size_t> pivots() const;

private:
    SparseVector eliminate(const SparseVector& v, bool full) const;

    std::size_t ambient_;
    bool reduced_;
    std::vector<SparseVector> rows_;
    std::vector<long> pivot_row_;  // column -> row index or -1
};

// Subspace of Q^n held as its canonical reduced row echelon basis.
class LinearSubspace {
public:
    LinearSubspace() = default;
    explicit LinearSubspace(std::size_t ambient) : basis_(0, ambient), ambient_(ambient) {}

    static LinearSubspace span(const Matrix& rows);
    static LinearSubspace full(std::size_t n);

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient_dim() const { return ambient_; }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const SparseVector& v) const;
    bool contains(const Vector& v) const { return contains(SparseVector::from_dense(v)); }
    bool contains(const LinearSubspace& other) const;

    // coordinates in the canonical basis; throws SubspaceNotContained
    Vector coordinates(const SparseVector& v) const;
    Vector coordinates(const Vector& v) const { return coordinates(SparseVector::from_dense(v)); }
    // columns of m are vectors of the subspace; returns dim x m.cols coordinate matrix
    Matrix coordinates_of_columns(const Matrix& m, bool verify = true) const;

    // normal form of v modulo the subspace (zero at every pivot column)
    SparseVector reduce(const SparseVector& v) const;

    LinearSubspace sum(const LinearSubspace& other) const;
    LinearSubspace intersect(const LinearSubspace& other) const;

    friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    Matrix basis_;
    std::vector<std::size_t> pivots_;
    std::size_t ambient_ = 0;
};

std::size_t rank(const Matrix& m);
LinearSubspace kernel(const Matrix& m);
LinearSubspace image(const Matrix& m);
LinearSubspace row_space(const Matrix& m);
std::size_t quotient_dim(const LinearSubspace& a, const LinearSubspace& b);
// canonical solution: the unique one orthogonal to ker m
std::optional<Vector> solve(const Matrix& m, const Vector& v);

// matrix of m restricted to src, written in tgt coordinates
Matrix restrict_map(const Matrix& m, const LinearSubspace& src, const LinearSubspace& tgt, bool verify = true);
// preimage m^{-1}(target) inside Q^{m.cols}
LinearSubspace preimage(const Matrix& m, const LinearSubspace& target);
bool is_injective(const Matrix& m);
bool is_surjective(const Matrix& m);

}  // namespace diffcoh
