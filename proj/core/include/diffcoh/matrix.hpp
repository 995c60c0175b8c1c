#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <utility>
#include <vector>

#include "diffcoh/rational.hpp"

namespace diffcoh {

using Vector = std::vector<Rational>;

// Sorted (index, value) pairs with no stored zeros.
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVector() = default;
    static SparseVector from_dense(const Vector& v);

    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    std::vector<Entry>& entries() { return entries_; }

    Rational get(std::size_t i) const;
    void set(std::size_t i, const Rational& v);
    std::size_t leading() const { return entries_.front().first; }

    // *this += a * other
    void axpy(const Rational& a, const SparseVector& other);
    void scale(const Rational& a);
    Vector to_dense(std::size_t n) const;

    // caller guarantees strictly increasing indices and nonzero values
    void push_back_unchecked(std::size_t i, Rational v) { entries_.emplace_back(i, std::move(v)); }

    friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

private:
    std::vector<Entry> entries_;
};

// Row-major sparse matrix acting on column vectors: rows x cols maps Q^cols -> Q^rows.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n);
    static Matrix scalar(std::size_t n, const Rational& c);
    static Matrix from_dense(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_ints(std::initializer_list<std::initializer_list<long long>> rows);
    static Matrix from_ints(const std::vector<std::vector<long long>>& rows, std::size_t cols);
    static Matrix from_rows(std::vector<SparseVector> rows, std::size_t cols);
    static Matrix column(const Vector& v);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool empty_shape() const { return rows_.empty() || cols_ == 0; }

    Rational at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Rational& v);
    void add_to(std::size_t i, std::size_t j, const Rational& v);
    const SparseVector& row(std::size_t i) const { return rows_[i]; }
    SparseVector& row(std::size_t i) { return rows_[i]; }
    const std::vector<SparseVector>& row_data() const { return rows_; }

    std::size_t nnz() const;
    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Vector apply(const Vector& v) const;
    SparseVector apply(const SparseVector& v) const;

    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    // copy of this embedded at (r0, c0) of a larger zero matrix
    Matrix embed(std::size_t rows, std::size_t cols, std::size_t r0, std::size_t c0) const;
    void add_block(std::size_t r0, std::size_t c0, const Matrix& b, const Rational& coeff = 1);

    static Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows);
    static Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols);
    static Matrix block_diag(const std::vector<Matrix>& blocks);

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Rational& c);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& c) { return a *= c; }
    friend Matrix operator*(const Rational& c, Matrix a) { return a *= c; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix operator-() const;

    std::vector<Vector> to_dense() const;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::vector<SparseVector> rows_;
    std::size_t cols_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace diffcoh
