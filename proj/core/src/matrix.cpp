#include "diffcoh/matrix.hpp"

#include <algorithm>
#include <ostream>

#include "diffcoh/errors.hpp"

namespace diffcoh {

namespace {

// Dense scratch row that remembers which slots it touched.
class Accumulator {
public:
    explicit Accumulator(std::size_t n) : vals_(n), mark_(n, 0) {}

    void add(std::size_t i, const Rational& a, const Rational& b) {
        if (!mark_[i]) {
            mark_[i] = 1;
            touched_.push_back(i);
        }
        vals_[i].add_mul(a, b);
    }

    SparseVector flush() {
        std::sort(touched_.begin(), touched_.end());
        SparseVector out;
        for (std::size_t i : touched_) {
            if (!vals_[i].is_zero()) out.push_back_unchecked(i, std::move(vals_[i]));
            vals_[i] = Rational();
            mark_[i] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    Vector vals_;
    std::vector<char> mark_;
    std::vector<std::size_t> touched_;
};

}  // namespace

SparseVector SparseVector::from_dense(const Vector& v) {
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.entries_.emplace_back(i, v[i]);
    return s;
}

Rational SparseVector::get(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) return it->second;
    return Rational();
}

void SparseVector::set(std::size_t i, const Rational& v) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) {
        if (v.is_zero())
            entries_.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        entries_.insert(it, Entry(i, v));
    }
}

void SparseVector::axpy(const Rational& a, const SparseVector& other) {
    if (a.is_zero() || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto i = entries_.begin();
    auto j = other.entries_.begin();
    while (i != entries_.end() || j != other.entries_.end()) {
        if (j == other.entries_.end() || (i != entries_.end() && i->first < j->first)) {
            out.push_back(std::move(*i));
            ++i;
        } else if (i == entries_.end() || j->first < i->first) {
            out.emplace_back(j->first, a * j->second);
            ++j;
        } else {
            Rational v = std::move(i->second);
            v.add_mul(a, j->second);
            if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    entries_ = std::move(out);
}

void SparseVector::scale(const Rational& a) {
    if (a.is_zero()) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_) e.second *= a;
}

Vector SparseVector::to_dense(std::size_t n) const {
    Vector v(n);
    for (const auto& [i, x] : entries_) v[i] = x;
    return v;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

Matrix Matrix::identity(std::size_t n) { return scalar(n, 1); }

Matrix Matrix::scalar(std::size_t n, const Rational& c) {
    Matrix m(n, n);
    if (c.is_zero()) return m;
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back_unchecked(i, c);
    return m;
}

Matrix Matrix::from_dense(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ShapeMismatch("ragged dense matrix");
        m.rows_[i] = SparseVector::from_dense(rows[i]);
    }
    return m;
}

Matrix Matrix::from_ints(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> r;
    for (auto& row : rows) r.emplace_back(row);
    return from_ints(r, r.empty() ? 0 : r.front().size());
}

Matrix Matrix::from_ints(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ShapeMismatch("ragged integer matrix");
        for (std::size_t j = 0; j < cols; ++j)
            if (rows[i][j] != 0) m.rows_[i].push_back_unchecked(j, Rational(rows[i][j]));
    }
    return m;
}

Matrix Matrix::from_rows(std::vector<SparseVector> rows, std::size_t cols) {
    Matrix m;
    m.rows_ = std::move(rows);
    m.cols_ = cols;
    for (const auto& r : m.rows_)
        if (!r.empty() && r.entries().back().first >= cols) throw ShapeMismatch("row entry out of range");
    return m;
}

Matrix Matrix::column(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) m.rows_[i].push_back_unchecked(0, v[i]);
    return m;
}

Rational Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols_) throw ShapeMismatch("index out of range");
    return rows_[i].get(j);
}

void Matrix::set(std::size_t i, std::size_t j, const Rational& v) {
    if (i >= rows() || j >= cols_) throw ShapeMismatch("index out of range");
    rows_[i].set(j, v);
}

void Matrix::add_to(std::size_t i, std::size_t j, const Rational& v) {
    if (v.is_zero()) return;
    set(i, j, at(i, j) + v);
}

std::size_t Matrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.nnz();
    return n;
}

bool Matrix::is_zero() const {
    for (const auto& r : rows_)
        if (!r.empty()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows() != cols_) return false;
    for (std::size_t i = 0; i < rows(); ++i) {
        const auto& e = rows_[i].entries();
        if (e.size() != 1 || e[0].first != i || !e[0].second.is_one()) return false;
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& [j, v] : rows_[i].entries()) t.rows_[j].push_back_unchecked(i, v);
    return t;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw ShapeMismatch("apply: vector length");
    Vector out(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
        Rational s;
        for (const auto& [j, a] : rows_[i].entries()) s.add_mul(a, v[j]);
        out[i] = std::move(s);
    }
    return out;
}

SparseVector Matrix::apply(const SparseVector& v) const {
    SparseVector out;
    for (std::size_t i = 0; i < rows(); ++i) {
        Rational s;
        const auto& a = rows_[i].entries();
        const auto& b = v.entries();
        std::size_t p = 0, q = 0;
        while (p < a.size() && q < b.size()) {
            if (a[p].first < b[q].first)
                ++p;
            else if (b[q].first < a[p].first)
                ++q;
            else {
                s.add_mul(a[p].second, b[q].second);
                ++p;
                ++q;
            }
        }
        if (!s.is_zero()) out.push_back_unchecked(i, std::move(s));
    }
    return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) m.rows_[i] = rows_.at(idx[i]);
    return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    std::vector<long> where(cols_, -1);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= cols_) throw ShapeMismatch("select_cols out of range");
        where[idx[k]] = long(k);
    }
    bool sorted = std::is_sorted(idx.begin(), idx.end());
    Matrix m(rows(), idx.size());
    for (std::size_t i = 0; i < rows(); ++i) {
        for (const auto& [j, v] : rows_[i].entries())
            if (where[j] >= 0) m.rows_[i].push_back_unchecked(std::size_t(where[j]), v);
        if (!sorted)
            std::sort(m.rows_[i].entries().begin(), m.rows_[i].entries().end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return m;
}

Matrix Matrix::embed(std::size_t rows, std::size_t cols, std::size_t r0, std::size_t c0) const {
    Matrix m(rows, cols);
    m.add_block(r0, c0, *this);
    return m;
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b, const Rational& coeff) {
    if (r0 + b.rows() > rows() || c0 + b.cols() > cols_) throw ShapeMismatch("add_block out of range");
    if (coeff.is_zero()) return;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        if (b.rows_[i].empty()) continue;
        SparseVector shifted;
        for (const auto& [j, v] : b.rows_[i].entries()) shifted.push_back_unchecked(j + c0, v);
        rows_[r0 + i].axpy(coeff, shifted);
    }
}

Matrix Matrix::hstack(const std::vector<Matrix>& blocks, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw ShapeMismatch("hstack row count");
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (const auto& [j, v] : b.rows_[i].entries()) m.rows_[i].push_back_unchecked(j + c0, v);
        c0 += b.cols();
    }
    return m;
}

Matrix Matrix::vstack(const std::vector<Matrix>& blocks, std::size_t cols) {
    Matrix m(0, cols);
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw ShapeMismatch("vstack column count");
        m.rows_.insert(m.rows_.end(), b.rows_.begin(), b.rows_.end());
    }
    return m;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (const auto& [j, v] : b.rows_[i].entries()) m.rows_[r0 + i].push_back_unchecked(j + c0, v);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows() != o.rows() || cols_ != o.cols_) throw ShapeMismatch("matrix sum");
    for (std::size_t i = 0; i < rows(); ++i) rows_[i].axpy(1, o.rows_[i]);
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows() != o.rows() || cols_ != o.cols_) throw ShapeMismatch("matrix difference");
    for (std::size_t i = 0; i < rows(); ++i) rows_[i].axpy(-1, o.rows_[i]);
    return *this;
}

Matrix& Matrix::operator*=(const Rational& c) {
    for (auto& r : rows_) r.scale(c);
    return *this;
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    m *= Rational(-1);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matrix product");
    Matrix m(a.rows(), b.cols());
    if (b.cols() == 0 || a.rows() == 0) return m;
    Accumulator acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto& ar = a.rows_[i].entries();
        if (ar.empty()) continue;
        if (ar.size() == 1) {
            SparseVector r = b.rows_[ar[0].first];
            r.scale(ar[0].second);
            m.rows_[i] = std::move(r);
            continue;
        }
        for (const auto& [k, av] : ar)
            for (const auto& [j, bv] : b.rows_[k].entries()) acc.add(j, av, bv);
        m.rows_[i] = acc.flush();
    }
    return m;
}

std::vector<Vector> Matrix::to_dense() const {
    std::vector<Vector> out;
    for (const auto& r : rows_) out.push_back(r.to_dense(cols_));
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "") << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m.at(i, j);
        os << "]";
    }
    return os << "]";
}

}  // namespace diffcoh
