#include "diffcoh/chaincx.hpp"

#include <algorithm>

#include "diffcoh/errors.hpp"

namespace diffcoh::chaincx {

namespace {

Rational sign_pow(long n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }


std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

void check_shape(const Matrix& m, std::size_t r, std::size_t c, const char* what) {
    if (m.rows() != r || m.cols() != c)
        throw ShapeMismatch(std::string(what) + ": expected " + std::to_string(r) + "x" + std::to_string(c) +
                            ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// projection of the sum onto the block [lo, lo + n)
Matrix block_projection(std::size_t total, std::size_t lo, std::size_t n) {
    Matrix p(n, total);
    for (std::size_t i = 0; i < n; ++i) p.set(i, lo + i, 1);
    return p;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (const auto& [j, x] : a.row(i).entries())
            for (std::size_t k = 0; k < b.rows(); ++k) {
                auto& row = m.row(i * b.rows() + k);
                for (const auto& [l, y] : b.row(k).entries()) row.push_back_unchecked(j * b.cols() + l, x * y);
            }
    return m;
}

// ---------------------------------------------------------------- ChainComplex

ChainComplex::ChainComplex(std::vector<std::size_t> dims, std::vector<Matrix> d) : dims_(std::move(dims)) {
    if (dims_.empty()) dims_.push_back(0);
    std::size_t L = dims_.size() - 1;
    if (d.size() != L)
        throw ShapeMismatch("chain complex of length " + std::to_string(L) + " needs " + std::to_string(L) +
                            " differentials, got " + std::to_string(d.size()));
    d_.resize(L + 1);
    d_[0] = Matrix(0, dims_[0]);
    for (std::size_t k = 1; k <= L; ++k) {
        check_shape(d[k - 1], dims_[k - 1], dims_[k], "differential");
        d_[k] = std::move(d[k - 1]);
    }
    for (std::size_t k = 2; k <= L; ++k)
        if (!(d_[k - 1] * d_[k]).is_zero())
            throw InvalidComplex("d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " != 0");
}

ChainComplex ChainComplex::zero(std::size_t length) {
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= length; ++k) d.emplace_back(0, 0);
    return ChainComplex(std::vector<std::size_t>(length + 1, 0), std::move(d));
}

ChainComplex ChainComplex::concentrated(std::size_t dim, std::size_t degree) {
    std::vector<std::size_t> dims(degree + 1, 0);
    dims[degree] = dim;
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= degree; ++k) d.emplace_back(dims[k - 1], dims[k]);
    return ChainComplex(dims, std::move(d));
}

std::size_t ChainComplex::dim(long k) const {
    if (k < 0 || std::size_t(k) >= dims_.size()) return 0;
    return dims_[std::size_t(k)];
}

Matrix ChainComplex::d(long k) const {
    if (k >= 0 && std::size_t(k) < d_.size()) return d_[std::size_t(k)];
    return Matrix(dim(k - 1), dim(k));
}

std::size_t ChainComplex::total_dim() const {
    std::size_t s = 0;
    for (auto x : dims_) s += x;
    return s;
}

ChainComplex ChainComplex::padded(std::size_t length) const {
    if (length <= this->length()) return *this;
    std::vector<std::size_t> dims = dims_;
    dims.resize(length + 1, 0);
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= length; ++k) d.push_back(this->d(long(k)));
    return ChainComplex(dims, std::move(d));
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
    std::size_t L = std::max(a.length(), b.length());
    for (std::size_t k = 0; k <= L; ++k) {
        if (a.dim(long(k)) != b.dim(long(k))) return false;
        if (!(a.d(long(k)) == b.d(long(k)))) return false;
    }
    return true;
}

// ---------------------------------------------------------------- ChainMap

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
    std::size_t L = length();
    if (f_.size() > L + 1) {
        for (std::size_t k = L + 1; k < f_.size(); ++k)
            if (!f_[k].is_zero()) throw ShapeMismatch("chain map component beyond both bounds");
        f_.resize(L + 1);
    }
    while (f_.size() < L + 1) f_.emplace_back(target_.dim(long(f_.size())), source_.dim(long(f_.size())));
    for (std::size_t k = 0; k <= L; ++k) check_shape(f_[k], target_.dim(long(k)), source_.dim(long(k)), "chain map");
    for (std::size_t k = 1; k <= L; ++k) {
        Matrix lhs = target_.d(long(k)) * f_[k];
        Matrix rhs = f_[k - 1] * source_.d(long(k));
        if (!(lhs == rhs)) throw InvalidComplex("chain map does not commute with d in degree " + std::to_string(k));
    }
}

ChainMap ChainMap::identity(const ChainComplex& c) {
    std::vector<Matrix> f;
    for (std::size_t k = 0; k <= c.length(); ++k) f.push_back(Matrix::identity(c.dim(long(k))));
    return ChainMap(c, c, std::move(f));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
    return ChainMap(source, target, {});
}

Matrix ChainMap::component(long k) const {
    if (k >= 0 && std::size_t(k) < f_.size()) return f_[std::size_t(k)];
    return Matrix(target_.dim(k), source_.dim(k));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.target() == g.source())) throw ShapeMismatch("compose: target/source mismatch");
    std::size_t L = std::max(f.length(), g.length());
    std::vector<Matrix> h;
    for (std::size_t k = 0; k <= L; ++k) h.push_back(g.component(long(k)) * f.component(long(k)));
    return ChainMap(f.source(), g.target(), std::move(h));
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
    if (!(source_ == o.source_) || !(target_ == o.target_)) throw ShapeMismatch("sum of chain maps");
    std::vector<Matrix> h;
    for (std::size_t k = 0; k <= length(); ++k) h.push_back(component(long(k)) + o.component(long(k)));
    return ChainMap(source_, target_, std::move(h));
}

ChainMap ChainMap::operator-(const ChainMap& o) const { return *this + o.scaled(-1); }

ChainMap ChainMap::scaled(const Rational& c) const {
    std::vector<Matrix> h;
    for (const auto& m : f_) h.push_back(m * c);
    return ChainMap(source_, target_, std::move(h));
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    std::size_t L = std::max(a.length(), b.length());
    for (std::size_t k = 0; k <= L; ++k)
        if (!(a.component(long(k)) == b.component(long(k)))) return false;
    return true;
}

// ---------------------------------------------------------------- DegreeKMap

DegreeKMap::DegreeKMap(ChainComplex source, ChainComplex target, long k, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), k_(k), f_(std::move(components)) {
    std::size_t L = source_.length();
    if (f_.size() > L + 1) f_.resize(L + 1);
    while (f_.size() < L + 1) {
        long i = long(f_.size());
        f_.emplace_back(target_.dim(i + k_), source_.dim(i));
    }
    for (std::size_t i = 0; i <= L; ++i)
        check_shape(f_[i], target_.dim(long(i) + k_), source_.dim(long(i)), "degree-k map");
}

DegreeKMap DegreeKMap::zero(const ChainComplex& source, const ChainComplex& target, long k) {
    return DegreeKMap(source, target, k, {});
}

Matrix DegreeKMap::component(long i) const {
    if (i >= 0 && std::size_t(i) < f_.size()) return f_[std::size_t(i)];
    return Matrix(target_.dim(i + k_), source_.dim(i));
}

DegreeKMap DegreeKMap::boundary() const {
    std::vector<Matrix> out;
    Rational s = sign_pow(k_);
    for (std::size_t i = 0; i <= source_.length(); ++i) {
        long li = long(i);
        Matrix m = target_.d(li + k_) * component(li);
        m -= (component(li - 1) * source_.d(li)) * s;
        out.push_back(std::move(m));
    }
    return DegreeKMap(source_, target_, k_ - 1, std::move(out));
}

DegreeKMap compose(const DegreeKMap& g, const DegreeKMap& f) {
    if (!(f.target() == g.source())) throw ShapeMismatch("compose degree maps");
    std::vector<Matrix> h;
    for (std::size_t i = 0; i <= f.source().length(); ++i)
        h.push_back(g.component(long(i) + f.degree()) * f.component(long(i)));
    return DegreeKMap(f.source(), g.target(), f.degree() + g.degree(), std::move(h));
}

DegreeKMap as_degree_map(const ChainMap& f) {
    std::vector<Matrix> h;
    for (std::size_t i = 0; i <= f.source().length(); ++i) h.push_back(f.component(long(i)));
    return DegreeKMap(f.source(), f.target(), 0, std::move(h));
}

DegreeKMap compose(const ChainMap& g, const DegreeKMap& f) { return compose(as_degree_map(g), f); }
DegreeKMap compose(const DegreeKMap& g, const ChainMap& f) { return compose(g, as_degree_map(f)); }

DegreeKMap operator+(const DegreeKMap& a, const DegreeKMap& b) {
    if (a.degree() != b.degree() || !(a.source() == b.source()) || !(a.target() == b.target()))
        throw ShapeMismatch("sum of degree maps");
    std::vector<Matrix> h;
    for (std::size_t i = 0; i <= a.source().length(); ++i) h.push_back(a.component(long(i)) + b.component(long(i)));
    return DegreeKMap(a.source(), a.target(), a.degree(), std::move(h));
}

// ---------------------------------------------------------------- truncation

std::size_t UnboundedComplex::dim(long k) const {
    long i = k - min_degree;
    if (i < 0 || std::size_t(i) >= dims.size()) return 0;
    return dims[std::size_t(i)];
}

Matrix UnboundedComplex::diff(long k) const {
    long i = k - min_degree;
    if (i >= 1 && std::size_t(i) < d.size()) return d[std::size_t(i)];
    return Matrix(dim(k - 1), dim(k));
}

void UnboundedComplex::check() const {
    long top = min_degree + long(dims.size()) - 1;
    for (long k = min_degree + 1; k <= top; ++k) check_shape(diff(k), dim(k - 1), dim(k), "unbounded differential");
    for (long k = min_degree + 2; k <= top; ++k)
        if (!(diff(k - 1) * diff(k)).is_zero()) throw InvalidComplex("d^2 != 0 in degree " + std::to_string(k));
}

Truncation smart_truncate_with_basis(const UnboundedComplex& c) {
    long top = c.min_degree + long(c.dims.size()) - 1;
    std::size_t L = top < 0 ? 0 : std::size_t(top);
    LinearSubspace z0 = kernel(c.diff(0));
    std::vector<std::size_t> dims(L + 1);
    dims[0] = z0.dim();
    for (std::size_t k = 1; k <= L; ++k) dims[k] = c.dim(long(k));
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= L; ++k) {
        if (k == 1)
            d.push_back(z0.coordinates_of_columns(c.diff(1)));
        else
            d.push_back(c.diff(long(k)));
    }
    return Truncation{ChainComplex(dims, std::move(d)), z0};
}

ChainComplex smart_truncate(const UnboundedComplex& c) { return smart_truncate_with_basis(c).complex; }

// ---------------------------------------------------------------- homology

std::size_t homology_dim(const ChainComplex& c, long n) {
    if (n < 0 || std::size_t(n) > c.length())
        throw DegreeOutOfRange("degree " + std::to_string(n) + " outside [0, " + std::to_string(c.length()) + "]");
    return c.dim(n) - rank(c.d(n)) - rank(c.d(n + 1));
}

std::vector<std::size_t> homology_dims(const ChainComplex& c) {
    std::vector<std::size_t> h;
    for (std::size_t n = 0; n <= c.length(); ++n) h.push_back(homology_dim(c, long(n)));
    return h;
}

LinearSubspace cycles(const ChainComplex& c, long n) { return kernel(c.d(n)); }
LinearSubspace boundaries(const ChainComplex& c, long n) { return image(c.d(n + 1)); }

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    std::size_t L = std::max(a.length(), b.length());
    std::vector<std::size_t> dims;
    std::vector<Matrix> d;
    for (std::size_t k = 0; k <= L; ++k) dims.push_back(a.dim(long(k)) + b.dim(long(k)));
    for (std::size_t k = 1; k <= L; ++k) d.push_back(Matrix::block_diag({a.d(long(k)), b.d(long(k))}));
    return ChainComplex(dims, std::move(d));
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    ChainComplex s = direct_sum(f.source(), g.source());
    ChainComplex t = direct_sum(f.target(), g.target());
    std::size_t L = std::max(s.length(), t.length());
    std::vector<Matrix> h;
    for (std::size_t k = 0; k <= L; ++k) h.push_back(Matrix::block_diag({f.component(long(k)), g.component(long(k))}));
    return ChainMap(s, t, std::move(h));
}

ChainMap pair_map(const ChainMap& f, const ChainMap& g) {
    if (!(f.source() == g.source())) throw ShapeMismatch("pair_map: different sources");
    ChainComplex t = direct_sum(f.target(), g.target());
    std::size_t L = std::max(f.source().length(), t.length());
    std::vector<Matrix> h;
    for (std::size_t k = 0; k <= L; ++k)
        h.push_back(Matrix::vstack({f.component(long(k)), g.component(long(k))}, f.source().dim(long(k))));
    return ChainMap(f.source(), t, std::move(h));
}

namespace {

ChainMap sum_projection(const ChainComplex& a, const ChainComplex& b, bool first) {
    ChainComplex s = direct_sum(a, b);
    const ChainComplex& t = first ? a : b;
    std::vector<Matrix> h;
    for (std::size_t k = 0; k <= s.length(); ++k) {
        std::size_t da = a.dim(long(k)), db = b.dim(long(k));
        h.push_back(first ? block_projection(da + db, 0, da) : block_projection(da + db, da, db));
    }
    return ChainMap(s, t, std::move(h));
}

}  // namespace

// ---------------------------------------------------------------- mapping complex

namespace {

struct HomLayout {
    // blocks Hom(C_i, D_{i+k}) in increasing i
    std::vector<long> i_of_block;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
};

HomLayout hom_layout(const ChainComplex& c, const ChainComplex& d, long k) {
    HomLayout h;
    for (long i = 0; i <= long(c.length()); ++i) {
        long j = i + k;
        if (j < 0 || j > long(d.length())) continue;
        h.i_of_block.push_back(i);
        h.offset.push_back(h.total);
        h.total += c.dim(i) * d.dim(j);
    }
    return h;
}

long block_of(const HomLayout& h, long i) {
    for (std::size_t b = 0; b < h.i_of_block.size(); ++b)
        if (h.i_of_block[b] == i) return long(b);
    return -1;
}

}  // namespace

MappingComplex mapping_complex_data(const ChainComplex& c, const ChainComplex& d) {
    long top = long(d.length());
    long lo = -1;
    UnboundedComplex u;
    u.min_degree = lo;
    std::vector<HomLayout> lay;
    for (long k = lo; k <= top; ++k) {
        lay.push_back(hom_layout(c, d, k));
        u.dims.push_back(lay.back().total);
    }
    u.d.emplace_back(0, 0);
    for (long k = lo + 1; k <= top; ++k) {
        const HomLayout& src = lay[std::size_t(k - lo)];
        const HomLayout& tgt = lay[std::size_t(k - 1 - lo)];
        Matrix m(tgt.total, src.total);
        Rational s = -sign_pow(k);
        for (std::size_t b = 0; b < src.i_of_block.size(); ++b) {
            long i = src.i_of_block[b];
            std::size_t ci = c.dim(i), dj = d.dim(i + k);
            // d_D f_i lands in the block of the same i
            long tb = block_of(tgt, i);
            if (tb >= 0 && i + k - 1 >= 0) {
                Matrix left = kron(d.d(i + k), Matrix::identity(ci));
                m.add_block(tgt.offset[std::size_t(tb)], src.offset[b], left);
            }
            // -(-1)^k f_i d_C lands in the block of i+1
            long tb2 = block_of(tgt, i + 1);
            if (tb2 >= 0) {
                Matrix right = kron(Matrix::identity(dj), c.d(i + 1).transpose());
                m.add_block(tgt.offset[std::size_t(tb2)], src.offset[b], right, s);
            }
        }
        u.d.push_back(std::move(m));
    }
    u.check();
    MappingComplex mc{u, smart_truncate_with_basis(u), c, d};
    return mc;
}

ChainComplex mapping_complex(const ChainComplex& c, const ChainComplex& d) {
    return mapping_complex_data(c, d).truncated.complex;
}

ChainMap MappingComplex::chain_map(const Vector& coords) const {
    const LinearSubspace& z0 = truncated.cycles0;
    if (coords.size() != z0.dim()) throw ShapeMismatch("chain_map: coordinate length");
    Vector v = z0.basis().transpose().apply(coords);
    HomLayout h = hom_layout(source, target, 0);
    std::vector<Matrix> f;
    std::size_t L = std::max(source.length(), target.length());
    for (std::size_t i = 0; i <= L; ++i) f.emplace_back(target.dim(long(i)), source.dim(long(i)));
    for (std::size_t b = 0; b < h.i_of_block.size(); ++b) {
        long i = h.i_of_block[b];
        std::size_t ci = source.dim(i), di = target.dim(i);
        for (std::size_t r = 0; r < di; ++r)
            for (std::size_t col = 0; col < ci; ++col) {
                const Rational& x = v[h.offset[b] + r * ci + col];
                if (!x.is_zero()) f[std::size_t(i)].set(r, col, x);
            }
    }
    return ChainMap(source, target, std::move(f));
}

// ---------------------------------------------------------------- path object

PathObject path_object(const ChainComplex& c) {
    std::size_t L = c.length();
    std::vector<std::size_t> dims(L + 1);
    dims[0] = c.dim(0) + c.dim(1);
    for (std::size_t n = 1; n <= L; ++n) dims[n] = 2 * c.dim(long(n)) + c.dim(long(n) + 1);

    std::vector<Matrix> d;
    for (std::size_t n = 1; n <= L; ++n) {
        long ln = long(n);
        std::size_t cn = c.dim(ln), cm = c.dim(ln - 1), cp = c.dim(ln + 1);
        Matrix dn = c.d(ln);
        Matrix m(dims[n - 1], dims[n]);
        if (n == 1) {
            // (x, y, z) -> (dx, dz - x + y)
            m.add_block(0, 0, dn);
            m.add_block(cm, 0, Matrix::identity(cn), -1);
            m.add_block(cm, cn, Matrix::identity(cn), 1);
            m.add_block(cm, 2 * cn, c.d(2));
        } else {
            // (x, y, z) -> (dx, dy, dz + (-1)^n x - (-1)^n y)
            Rational s = sign_pow(ln);
            m.add_block(0, 0, dn);
            m.add_block(cm, cn, dn);
            m.add_block(2 * cm, 0, Matrix::identity(cn), s);
            m.add_block(2 * cm, cn, Matrix::identity(cn), -s);
            m.add_block(2 * cm, 2 * cn, c.d(ln + 1));
        }
        (void)cp;
        d.push_back(std::move(m));
    }
    ChainComplex p(dims, std::move(d));
    ChainComplex cc = direct_sum(c, c);

    std::vector<Matrix> pr, in;
    for (std::size_t n = 0; n <= L; ++n) {
        long ln = long(n);
        std::size_t cn = c.dim(ln);
        Matrix a(2 * cn, dims[n]);
        Matrix b(dims[n], cn);
        if (n == 0) {
            // (x, z) -> (x, x + dz);  x -> (x, 0)
            a.add_block(0, 0, Matrix::identity(cn));
            a.add_block(cn, 0, Matrix::identity(cn));
            a.add_block(cn, cn, c.d(1));
            b.add_block(0, 0, Matrix::identity(cn));
        } else {
            a.add_block(0, 0, Matrix::identity(cn));
            a.add_block(cn, cn, Matrix::identity(cn));
            b.add_block(0, 0, Matrix::identity(cn));
            b.add_block(cn, 0, Matrix::identity(cn));
        }
        pr.push_back(std::move(a));
        in.push_back(std::move(b));
    }
    return PathObject{p, ChainMap(c, p, std::move(in)), ChainMap(p, cc, std::move(pr))};
}

// ---------------------------------------------------------------- pullbacks

Pullback pullback(const ChainMap& f, const ChainMap& g) {
    if (!(f.target() == g.target())) throw ShapeMismatch("pullback: cospan targets differ");
    const ChainComplex& x = f.source();
    const ChainComplex& y = g.source();
    std::size_t L = std::max({x.length(), y.length(), f.target().length()});
    std::vector<LinearSubspace> sub;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= L; ++n) {
        long ln = long(n);
        Matrix m = Matrix::hstack({f.component(ln), -g.component(ln)}, f.target().dim(ln));
        sub.push_back(kernel(m));
        dims.push_back(sub.back().dim());
    }
    std::vector<Matrix> d;
    for (std::size_t n = 1; n <= L; ++n) {
        long ln = long(n);
        Matrix dd = Matrix::block_diag({x.d(ln), y.d(ln)});
        d.push_back(restrict_map(dd, sub[n], sub[n - 1]));
    }
    ChainComplex apex(dims, std::move(d));
    std::vector<Matrix> lx, ly;
    for (std::size_t n = 0; n <= L; ++n) {
        long ln = long(n);
        Matrix bt = sub[n].basis().transpose();
        lx.push_back(bt.select_rows(range(0, x.dim(ln))));
        ly.push_back(bt.select_rows(range(x.dim(ln), x.dim(ln) + y.dim(ln))));
    }
    return Pullback{apex, ChainMap(apex, x, std::move(lx)), ChainMap(apex, y, std::move(ly)), std::move(sub)};
}

ChainMap factor_through(const Pullback& p, const ChainMap& a, const ChainMap& b) {
    if (!(a.source() == b.source())) throw ShapeMismatch("factor_through: different sources");
    std::vector<Matrix> h;
    for (std::size_t n = 0; n < p.subspaces.size(); ++n) {
        long ln = long(n);
        Matrix stack = Matrix::vstack({a.component(ln), b.component(ln)}, a.source().dim(ln));
        h.push_back(p.subspaces[n].coordinates_of_columns(stack));
    }
    return ChainMap(a.source(), p.apex, std::move(h));
}

bool is_fibration(const ChainMap& f) {
    for (std::size_t k = 1; k <= f.length(); ++k)
        if (!is_surjective(f.component(long(k)))) return false;
    return true;
}

bool is_quasi_iso(const ChainMap& f) {
    const ChainComplex& c = f.source();
    const ChainComplex& d = f.target();
    std::size_t L = f.length();
    for (std::size_t n = 0; n <= L; ++n) {
        long ln = long(n);
        std::size_t hc = c.dim(ln) - rank(c.d(ln)) - rank(c.d(ln + 1));
        std::size_t hd = d.dim(ln) - rank(d.d(ln)) - rank(d.d(ln + 1));
        if (hc != hd) return false;
        if (hd == 0) continue;
        LinearSubspace zc = kernel(c.d(ln));
        LinearSubspace bd = image(d.d(ln + 1));
        Matrix fz = (f.component(ln) * zc.basis().transpose()).transpose();
        LinearSubspace s = LinearSubspace::span(Matrix::vstack({fz, bd.basis()}, d.dim(ln)));
        if (s.dim() - bd.dim() != hd) return false;
    }
    return true;
}

HomotopyPullback homotopy_pullback(const ChainMap& f, const ChainMap& g) {
    if (!(f.target() == g.target())) throw ShapeMismatch("homotopy_pullback: cospan targets differ");
    PathObject po = path_object(f.target());
    ChainMap fg = direct_sum(f, g);
    // the path object only reaches the bound of Z; pad so the cospan legs agree
    Pullback pb = pullback(fg, po.proj);
    ChainMap px = sum_projection(f.source(), g.source(), true);
    ChainMap py = sum_projection(f.source(), g.source(), false);
    ChainMap lx = compose(px, pb.leg_x);
    ChainMap ly = compose(py, pb.leg_x);
    return HomotopyPullback{pb.apex, lx, ly, pb.leg_y, po, pb};
}

Commutes check_square(const Square& s) {
    if (!(s.top.source() == s.left.source()) || !(s.top.target() == s.right.source()) ||
        !(s.left.target() == s.bottom.source()) || !(s.right.target() == s.bottom.target()))
        throw ShapeMismatch("square corners do not match");
    ChainMap diff = compose(s.right, s.top) - compose(s.bottom, s.left);
    bool strict = true;
    for (std::size_t k = 0; k <= diff.length(); ++k)
        if (!diff.component(long(k)).is_zero()) strict = false;
    if (strict) return Commutes::Strict;
    if (!s.homotopy) throw SquareNotCommuting("square does not commute and no homotopy was supplied");
    const DegreeKMap& K = *s.homotopy;
    if (K.degree() != 1 || !(K.source() == s.top.source()) || !(K.target() == s.right.target()))
        throw ShapeMismatch("homotopy has the wrong shape");
    DegreeKMap bk = K.boundary();
    for (std::size_t i = 0; i <= s.top.source().length(); ++i)
        if (!(bk.component(long(i)) == diff.component(long(i))))
            throw SquareNotCommuting("homotopy fails dK + Kd = right.top - bottom.left in degree " +
                                     std::to_string(i));
    return Commutes::Homotopy;
}

Comparison compare_into_homotopy_pullback(const Square& s) {
    Commutes how = check_square(s);
    HomotopyPullback hp = homotopy_pullback(s.bottom, s.right);
    const ChainComplex& a = s.top.source();
    const ChainComplex& z = s.right.target();
    DegreeKMap K = s.homotopy ? *s.homotopy : DegreeKMap::zero(a, z, 1);
    std::vector<Matrix> comps;
    std::size_t L = hp.apex.length();
    for (std::size_t n = 0; n <= std::max(L, a.length()); ++n) {
        long ln = long(n);
        std::size_t an = a.dim(ln);
        Matrix fa = s.bottom.component(ln) * s.left.component(ln);
        std::vector<Matrix> parts{s.left.component(ln), s.top.component(ln)};
        if (n == 0) {
            parts.push_back(fa);
            parts.push_back(K.component(0));
        } else {
            parts.push_back(fa);
            parts.push_back(s.right.component(ln) * s.top.component(ln));
            parts.push_back(K.component(ln) * sign_pow(ln));
        }
        Matrix col = Matrix::vstack(parts, an);
        if (n >= hp.pb.subspaces.size()) {
            if (!col.is_zero()) throw SquareNotCommuting("comparison leaves the homotopy pullback bound");
            continue;
        }
        try {
            comps.push_back(hp.pb.subspaces[n].coordinates_of_columns(col));
        } catch (const SubspaceNotContained&) {
            throw SquareNotCommuting("comparison map leaves the homotopy pullback in degree " + std::to_string(n));
        }
    }
    ChainMap c;
    try {
        c = ChainMap(a, hp.apex, std::move(comps));
    } catch (const InvalidComplex& e) {
        throw SquareNotCommuting(std::string("comparison is not a chain map: ") + e.what());
    }
    bool q = is_quasi_iso(c);
    return Comparison{c, hp, how, q};
}

Square paste_horizontal(const Square& l, const Square& r) {
    if (!(l.right == r.left)) throw ShapeMismatch("paste_horizontal: shared edge differs");
    Square out{compose(r.top, l.top), l.left, r.right, compose(r.bottom, l.bottom), std::nullopt};
    if (l.homotopy || r.homotopy) {
        const ChainComplex& a = l.top.source();
        const ChainComplex& f = r.right.target();
        DegreeKMap k = DegreeKMap::zero(a, f, 1);
        if (r.homotopy) k = k + compose(*r.homotopy, l.top);
        if (l.homotopy) k = k + compose(r.bottom, *l.homotopy);
        out.homotopy = k;
    }
    return out;
}

Square paste_vertical(const Square& u, const Square& lo) {
    if (!(u.bottom == lo.top)) throw ShapeMismatch("paste_vertical: shared edge differs");
    Square out{u.top, compose(lo.left, u.left), compose(lo.right, u.right), lo.bottom, std::nullopt};
    if (u.homotopy || lo.homotopy) {
        const ChainComplex& a = u.top.source();
        const ChainComplex& f = lo.right.target();
        DegreeKMap k = DegreeKMap::zero(a, f, 1);
        if (u.homotopy) k = k + compose(lo.right, *u.homotopy);
        if (lo.homotopy) k = k + compose(*lo.homotopy, u.left);
        out.homotopy = k;
    }
    return out;
}

Square homotopy_pullback_square(const ChainMap& f, const ChainMap& g) {
    HomotopyPullback hp = homotopy_pullback(f, g);
    const ChainComplex& z = f.target();
    std::vector<Matrix> k;
    for (std::size_t n = 0; n <= hp.apex.length(); ++n) {
        long ln = long(n);
        Matrix leg = hp.leg_path.component(ln);  // P_n -> Z^I_n
        std::size_t zn = z.dim(ln);
        std::size_t skip = n == 0 ? zn : 2 * zn;
        std::vector<std::size_t> rows = range(skip, skip + z.dim(ln + 1));
        k.push_back(leg.select_rows(rows) * sign_pow(ln));
    }
    DegreeKMap K(hp.apex, z, 1, std::move(k));
    return Square{hp.leg_y, hp.leg_x, g, f, K};
}

}  // namespace diffcoh::chaincx
