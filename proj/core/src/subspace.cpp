#include "diffcoh/subspace.hpp"

#include <algorithm>
#include <numeric>

#include "diffcoh/errors.hpp"

namespace diffcoh {

Echelon::Echelon(std::size_t ambient, bool reduced)
    : ambient_(ambient), reduced_(reduced), pivot_row_(ambient, -1) {}

SparseVector Echelon::eliminate(const SparseVector& v, bool full) const {
    if (v.empty() || rows_.empty()) return v;
    // dense sweep in column order; pivot rows only touch columns >= their pivot
    Vector acc(ambient_);
    std::size_t lo = v.leading();
    for (const auto& [i, x] : v.entries()) acc[i] = x;
    std::vector<char> live(ambient_, 0);
    for (const auto& e : v.entries()) live[e.first] = 1;
    for (std::size_t c = lo; c < ambient_; ++c) {
        if (!live[c] || acc[c].is_zero()) continue;
        long r = pivot_row_[c];
        if (r < 0) {
            if (!full) break;
            continue;
        }
        Rational f = acc[c];
        for (const auto& [j, x] : rows_[std::size_t(r)].entries()) {
            acc[j].sub_mul(f, x);
            live[j] = 1;
        }
    }
    SparseVector out;
    for (std::size_t c = lo; c < ambient_; ++c)
        if (live[c] && !acc[c].is_zero()) out.push_back_unchecked(c, std::move(acc[c]));
    return out;
}

bool Echelon::add(const SparseVector& v) {
    SparseVector r = eliminate(v, reduced_);
    if (r.empty()) return false;
    std::size_t c = r.leading();
    if (!r.entries().front().second.is_one()) r.scale(r.entries().front().second.inverse());
    if (reduced_) {
        for (auto& row : rows_) {
            Rational f = row.get(c);
            if (!f.is_zero()) row.axpy(-f, r);
        }
    }
    pivot_row_[c] = long(rows_.size());
    rows_.push_back(std::move(r));
    return true;
}

void Echelon::add_rows(const Matrix& m) {
    if (m.cols() != ambient_) throw ShapeMismatch("echelon row length");
    for (std::size_t i = 0; i < m.rows(); ++i) add(m.row(i));
}

SparseVector Echelon::reduce(const SparseVector& v) const {
    if (!reduced_) throw InvalidParameters("reduce needs a reduced echelon");
    return eliminate(v, true);
}

Matrix Echelon::basis() const {
    std::vector<SparseVector> rows;
    for (std::size_t c = 0; c < ambient_; ++c)
        if (pivot_row_[c] >= 0) rows.push_back(rows_[std::size_t(pivot_row_[c])]);
    return Matrix::from_rows(std::move(rows), ambient_);
}

std::vector<std::size_t> Echelon::pivots() const {
    std::vector<std::size_t> p;
    for (std::size_t c = 0; c < ambient_; ++c)
        if (pivot_row_[c] >= 0) p.push_back(c);
    return p;
}

LinearSubspace LinearSubspace::span(const Matrix& rows) {
    Echelon e(rows.cols(), true);
    e.add_rows(rows);
    LinearSubspace s(rows.cols());
    s.basis_ = e.basis();
    s.pivots_ = e.pivots();
    return s;
}

LinearSubspace LinearSubspace::full(std::size_t n) {
    LinearSubspace s(n);
    s.basis_ = Matrix::identity(n);
    s.pivots_.resize(n);
    std::iota(s.pivots_.begin(), s.pivots_.end(), 0);
    return s;
}

SparseVector LinearSubspace::reduce(const SparseVector& v) const {
    SparseVector r = v;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
        Rational f = r.get(pivots_[k]);
        if (!f.is_zero()) r.axpy(-f, basis_.row(k));
    }
    return r;
}

bool LinearSubspace::contains(const SparseVector& v) const { return reduce(v).empty(); }

bool LinearSubspace::contains(const LinearSubspace& other) const {
    if (other.ambient_ != ambient_) throw ShapeMismatch("subspaces of different spaces");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Vector LinearSubspace::coordinates(const SparseVector& v) const {
    if (!contains(v)) throw SubspaceNotContained("vector is not in the subspace");
    Vector c(dim());
    for (std::size_t k = 0; k < pivots_.size(); ++k) c[k] = v.get(pivots_[k]);
    return c;
}

Matrix LinearSubspace::coordinates_of_columns(const Matrix& m, bool verify) const {
    if (m.rows() != ambient_) throw ShapeMismatch("coordinates_of_columns");
    Matrix c = m.select_rows(pivots_);
    if (verify) {
        Matrix back = basis_.transpose() * c;
        if (!(back == m)) throw SubspaceNotContained("columns leave the subspace");
    }
    return c;
}

LinearSubspace LinearSubspace::sum(const LinearSubspace& other) const {
    if (other.ambient_ != ambient_) throw ShapeMismatch("sum of subspaces");
    return span(Matrix::vstack({basis_, other.basis_}, ambient_));
}

LinearSubspace LinearSubspace::intersect(const LinearSubspace& other) const {
    if (other.ambient_ != ambient_) throw ShapeMismatch("intersection of subspaces");
    // x = B^T a = C^T b  <=>  [B^T  -C^T] (a, b) = 0
    Matrix m = Matrix::hstack({basis_.transpose(), -other.basis_.transpose()}, ambient_);
    LinearSubspace k = kernel(m);
    std::vector<std::size_t> first(dim());
    std::iota(first.begin(), first.end(), 0);
    Matrix coeffs = k.basis().select_cols(first);
    return span(coeffs * basis_);
}

std::size_t rank(const Matrix& m) {
    if (m.rows() > m.cols()) return rank(m.transpose());
    Echelon e(m.cols(), false);
    e.add_rows(m);
    return e.rank();
}

LinearSubspace row_space(const Matrix& m) { return LinearSubspace::span(m); }

LinearSubspace kernel(const Matrix& m) {
    Echelon e(m.cols(), true);
    e.add_rows(m);
    Matrix r = e.basis();
    std::vector<std::size_t> piv = e.pivots();
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : piv) is_pivot[p] = 1;
    // transpose once so each free column's entries come out as a row
    Matrix rt = r.transpose();
    std::vector<SparseVector> vecs;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        SparseVector v;
        std::vector<std::pair<std::size_t, Rational>> ent;
        for (const auto& [row, x] : rt.row(f).entries()) ent.emplace_back(piv[row], -x);
        ent.emplace_back(f, Rational(1));
        std::sort(ent.begin(), ent.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [i, x] : ent) v.push_back_unchecked(i, std::move(x));
        vecs.push_back(std::move(v));
    }
    return LinearSubspace::span(Matrix::from_rows(std::move(vecs), m.cols()));
}

LinearSubspace image(const Matrix& m) { return LinearSubspace::span(m.transpose()); }

std::size_t quotient_dim(const LinearSubspace& a, const LinearSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ShapeMismatch("quotient of different spaces");
    if (!a.contains(b)) throw SubspaceNotContained("quotient_dim: b is not inside a");
    return a.dim() - b.dim();
}

std::optional<Vector> solve(const Matrix& m, const Vector& v) {
    if (v.size() != m.rows()) throw ShapeMismatch("solve: right hand side length");
    std::size_t n = m.cols();
    Matrix aug = Matrix::hstack({m, Matrix::column(v)}, m.rows());
    Echelon e(n + 1, true);
    e.add_rows(aug);
    Matrix r = e.basis();
    std::vector<std::size_t> piv = e.pivots();
    Vector x(n);
    for (std::size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == n) return std::nullopt;
        x[piv[k]] = r.row(k).get(n);
    }
    LinearSubspace ker = kernel(m);
    if (ker.dim() == 0) return x;
    // remove the kernel component: K (x - K^T c) = 0, i.e. (K K^T) c = K x
    const Matrix& k = ker.basis();
    Matrix gram = k * k.transpose();
    Vector rhs = k.apply(x);
    Matrix g_aug = Matrix::hstack({gram, Matrix::column(rhs)}, gram.rows());
    Echelon ge(gram.cols() + 1, true);
    ge.add_rows(g_aug);
    Matrix gr = ge.basis();
    Vector c(gram.cols());
    std::vector<std::size_t> gp = ge.pivots();
    for (std::size_t i = 0; i < gp.size(); ++i) c[gp[i]] = gr.row(i).get(gram.cols());
    Vector kc = k.transpose().apply(c);
    for (std::size_t i = 0; i < n; ++i) x[i] -= kc[i];
    return x;
}

Matrix restrict_map(const Matrix& m, const LinearSubspace& src, const LinearSubspace& tgt, bool verify) {
    if (m.cols() != src.ambient_dim() || m.rows() != tgt.ambient_dim()) throw ShapeMismatch("restrict_map");
    Matrix images = m * src.basis().transpose();
    return tgt.coordinates_of_columns(images, verify);
}

LinearSubspace preimage(const Matrix& m, const LinearSubspace& target) {
    if (m.rows() != target.ambient_dim()) throw ShapeMismatch("preimage");
    // x with m x in target  <=>  (projection killing target) m x = 0
    // rows of the annihilator: kernel of target basis viewed as functionals
    LinearSubspace ann = kernel(target.basis());
    return kernel(ann.basis() * m);
}

bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }
bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }

}  // namespace diffcoh
