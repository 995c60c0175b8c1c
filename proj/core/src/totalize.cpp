#include "diffcoh/totalize.hpp"

#include <algorithm>
#include <climits>
#include <string>

#include "diffcoh/errors.hpp"

namespace diffcoh::totalize {

namespace {

Rational sign_pow(long n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

std::string cell(long p, long q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

bool same_complex(const ChainComplex& a, const ChainComplex& b) {
    std::size_t L = std::max(a.length(), b.length());
    return a.padded(L) == b.padded(L);
}

void expect_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt, const std::string& what) {
    if (!same_complex(f.source(), src) || !same_complex(f.target(), tgt))
        throw ShapeMismatch(what + " has the wrong source or target");
}

// the normalized cells N^{p,q} inside C^{p,q}
std::vector<std::vector<LinearSubspace>> normalized_cells(const CosimplicialChain& c) {
    std::size_t Q = c.height();
    std::vector<std::vector<LinearSubspace>> out(c.top() + 1);
    for (std::size_t p = 0; p <= c.top(); ++p)
        for (std::size_t q = 0; q <= Q; ++q) {
            std::size_t n = c.level(p).dim(long(q));
            if (p == 0) {
                out[p].push_back(LinearSubspace::full(n));
                continue;
            }
            std::vector<Matrix> rows;
            for (std::size_t j = 0; j < p; ++j) rows.push_back(c.codegeneracy(p, j).component(long(q)));
            out[p].push_back(kernel(Matrix::vstack(rows, n)));
        }
    return out;
}

struct Layout {
    long lo;
    std::vector<std::vector<TotBlock>> blocks;  // blocks[k - lo]
    std::vector<std::size_t> dims;

    long find(long k, long p) const {
        if (k < lo || std::size_t(k - lo) >= blocks.size()) return -1;
        for (const auto& b : blocks[std::size_t(k - lo)])
            if (b.p == p) return long(b.offset);
        return -1;
    }
};

Layout tot_layout(const DoubleComplex& dc, long lo, long hi) {
    Layout l{lo, {}, {}};
    long P = long(dc.width());
    for (long k = lo; k <= hi; ++k) {
        std::vector<TotBlock> bl;
        std::size_t off = 0;
        for (long p = std::max(0L, -k); p <= P; ++p) {
            long q = p + k;
            if (q > long(dc.height())) break;
            bl.push_back({p, q, off});
            off += dc.dim(p, q);
        }
        l.blocks.push_back(std::move(bl));
        l.dims.push_back(off);
    }
    return l;
}

Matrix tot_differential(const DoubleComplex& dc, const Layout& l, long k, SignConvention conv) {
    std::size_t ti = std::size_t(k - 1 - l.lo), si = std::size_t(k - l.lo);
    Matrix m(l.dims[ti], l.dims[si]);
    for (const auto& b : l.blocks[si]) {
        if (dc.dim(b.p, b.q) == 0) continue;
        long vo = l.find(k - 1, b.p);
        if (vo >= 0 && b.q >= 1) m.add_block(std::size_t(vo), b.offset, dc.d(b.p, b.q));
        long ho = l.find(k - 1, b.p + 1);
        if (ho >= 0) {
            Rational s = conv == SignConvention::Mapping ? -sign_pow(b.q - b.p) : sign_pow(b.q);
            m.add_block(std::size_t(ho), b.offset, dc.delta(b.p, b.q), s);
        }
    }
    return m;
}

// blockwise map between two totalizations with the same block pattern
Matrix blockwise(const Layout& src, const Layout& tgt, long k, const std::function<Matrix(const TotBlock&)>& f) {
    std::size_t i = std::size_t(k - src.lo);
    Matrix m(tgt.dims[i], src.dims[i]);
    for (const auto& b : src.blocks[i]) {
        long to = tgt.find(k, b.p);
        Matrix blk = f(b);
        if (blk.rows() == 0 || blk.cols() == 0) continue;
        m.add_block(std::size_t(to), b.offset, blk);
    }
    return m;
}

// chain map between truncations, given the degree -1.. maps on the untruncated complexes
ChainMap truncated_map(const TotComplex& s, const TotComplex& t, const std::vector<Matrix>& full) {
    std::vector<Matrix> comps;
    std::size_t L = std::max(s.complex().length(), t.complex().length());
    for (std::size_t k = 0; k <= L; ++k) {
        if (k == 0)
            comps.push_back(restrict_map(full[1], s.truncated.cycles0, t.truncated.cycles0));
        else if (k + 1 < full.size())
            comps.push_back(full[k + 1]);
        else
            comps.push_back(Matrix(t.complex().dim(long(k)), s.complex().dim(long(k))));
    }
    return ChainMap(s.complex(), t.complex(), std::move(comps));
}

DoubleComplex double_complex_on(const CosimplicialChain& c, const std::vector<std::vector<LinearSubspace>>* cells,
                                bool exhaustive) {
    std::size_t P = c.top(), Q = c.height();
    auto sub = [&](std::size_t p, std::size_t q) {
        return cells ? (*cells)[p][q] : LinearSubspace::full(c.level(p).dim(long(q)));
    };
    std::vector<std::vector<std::size_t>> dims(P + 1);
    std::vector<std::vector<Matrix>> vert(P + 1), hor(P);
    for (std::size_t p = 0; p <= P; ++p) {
        for (std::size_t q = 0; q <= Q; ++q) dims[p].push_back(sub(p, q).dim());
        for (std::size_t q = 1; q <= Q; ++q)
            vert[p].push_back(restrict_map(c.level(p).d(long(q)), sub(p, q), sub(p, q - 1)));
    }
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q <= Q; ++q) {
            std::size_t src = c.level(p).dim(long(q)), tgt = c.level(p + 1).dim(long(q));
            Matrix delta(tgt, src);
            for (std::size_t i = 0; i <= p + 1; ++i)
                delta = delta + c.coface(p + 1, i).component(long(q)) * sign_pow(long(i));
            hor[p].push_back(restrict_map(delta, sub(p, q), sub(p + 1, q)));
        }
    return DoubleComplex(std::move(dims), std::move(vert), std::move(hor), exhaustive);
}

}  // namespace

// ---------------------------------------------------------------- CosimplicialChain

CosimplicialChain::CosimplicialChain(std::vector<ChainComplex> levels, std::vector<std::vector<ChainMap>> cofaces,
                                     std::vector<std::vector<ChainMap>> codegeneracies, bool exhaustive)
    : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codegens_(std::move(codegeneracies)),
      exhaustive_(exhaustive) {
    if (levels_.empty()) throw InvalidParameters("cosimplicial chain complex needs at least one level");
    std::size_t N = top();
    cofaces_.resize(N + 1);
    codegens_.resize(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        if (cofaces_[n].size() != n + 1 || codegens_[n].size() != n)
            throw ShapeMismatch("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " cofaces and " +
                                std::to_string(n) + " codegeneracies");
        for (std::size_t i = 0; i <= n; ++i)
            expect_map(cofaces_[n][i], levels_[n - 1], levels_[n], "coface d^" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            expect_map(codegens_[n][j], levels_[n], levels_[n - 1], "codegeneracy s^" + std::to_string(j));
    }
    if (!cofaces_[0].empty() || !codegens_[0].empty()) throw ShapeMismatch("level 0 has no cofaces");
    // the identities hold iff they hold in every chain degree
    for (std::size_t q = 0; q <= height(); ++q) {
        std::vector<std::size_t> dims;
        std::vector<std::vector<Matrix>> cf(N + 1), cd(N + 1);
        for (std::size_t n = 0; n <= N; ++n) {
            dims.push_back(levels_[n].dim(long(q)));
            for (const auto& f : cofaces_[n]) cf[n].push_back(f.component(long(q)));
            for (const auto& s : codegens_[n]) cd[n].push_back(s.component(long(q)));
        }
        simplicial::CosimplicialVect(dims, std::move(cf), std::move(cd));
    }
}

CosimplicialChain CosimplicialChain::constant(const ChainComplex& k, std::size_t top) {
    std::vector<ChainComplex> levels(top + 1, k);
    std::vector<std::vector<ChainMap>> cf(top + 1), cd(top + 1);
    ChainMap id = ChainMap::identity(k);
    for (std::size_t n = 1; n <= top; ++n) {
        cf[n].assign(n + 1, id);
        cd[n].assign(n, id);
    }
    return CosimplicialChain(std::move(levels), std::move(cf), std::move(cd), true);
}

CosimplicialChain CosimplicialChain::truncated(std::size_t t) const {
    if (t >= top()) return *this;
    std::vector<ChainComplex> lv(levels_.begin(), levels_.begin() + long(t) + 1);
    std::vector<std::vector<ChainMap>> cf(cofaces_.begin(), cofaces_.begin() + long(t) + 1);
    std::vector<std::vector<ChainMap>> cd(codegens_.begin(), codegens_.begin() + long(t) + 1);
    return CosimplicialChain(std::move(lv), std::move(cf), std::move(cd), false);
}

std::size_t CosimplicialChain::height() const {
    std::size_t h = 0;
    for (const auto& l : levels_) h = std::max(h, l.length());
    return h;
}

void CosimplicialMap::check() const {
    std::size_t N = source.top();
    if (target.top() != N || levels.size() != N + 1) throw ShapeMismatch("cosimplicial map: level count mismatch");
    for (std::size_t n = 0; n <= N; ++n) {
        expect_map(levels[n], source.level(n), target.level(n), "level " + std::to_string(n));
        if (n == 0) continue;
        for (std::size_t i = 0; i <= n; ++i)
            if (!(compose(levels[n], source.coface(n, i)) == compose(target.coface(n, i), levels[n - 1])))
                throw InvalidComplex("cosimplicial map does not commute with d^" + std::to_string(i) + " at level " +
                                     std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            if (!(compose(levels[n - 1], source.codegeneracy(n, j)) ==
                  compose(target.codegeneracy(n, j), levels[n])))
                throw InvalidComplex("cosimplicial map does not commute with s^" + std::to_string(j) +
                                     " at level " + std::to_string(n));
    }
}

// ---------------------------------------------------------------- DoubleComplex

DoubleComplex::DoubleComplex(std::vector<std::vector<std::size_t>> dims, std::vector<std::vector<Matrix>> vertical,
                             std::vector<std::vector<Matrix>> horizontal, bool exhaustive)
    : dims_(std::move(dims)), exhaustive_(exhaustive) {
    if (dims_.empty()) dims_.push_back({0});
    std::size_t P = dims_.size() - 1;
    for (const auto& col : dims_) height_ = std::max(height_, col.empty() ? 0 : col.size() - 1);
    for (auto& col : dims_) col.resize(height_ + 1, 0);
    if (vertical.size() != P + 1 || horizontal.size() != P)
        throw ShapeMismatch("double complex with " + std::to_string(P + 1) + " columns needs " + std::to_string(P + 1) +
                            " vertical and " + std::to_string(P) + " horizontal families");
    vertical_.resize(P + 1);
    horizontal_.resize(P);
    for (std::size_t p = 0; p <= P; ++p) {
        if (vertical[p].size() > height_) throw ShapeMismatch("too many vertical differentials in column " + std::to_string(p));
        vertical[p].resize(height_);
        vertical_[p].push_back(Matrix(0, dims_[p][0]));
        for (std::size_t q = 1; q <= height_; ++q) {
            Matrix& m = vertical[p][q - 1];
            if (m.rows() == 0 && m.cols() == 0) m = Matrix(dims_[p][q - 1], dims_[p][q]);
            if (m.rows() != dims_[p][q - 1] || m.cols() != dims_[p][q])
                throw ShapeMismatch("vertical differential at " + cell(long(p), long(q)) + " has the wrong shape");
            vertical_[p].push_back(std::move(m));
        }
    }
    for (std::size_t p = 0; p < P; ++p) {
        if (horizontal[p].size() > height_ + 1) throw ShapeMismatch("too many horizontal maps in column " + std::to_string(p));
        horizontal[p].resize(height_ + 1);
        for (std::size_t q = 0; q <= height_; ++q) {
            Matrix& m = horizontal[p][q];
            if (m.rows() == 0 && m.cols() == 0) m = Matrix(dims_[p + 1][q], dims_[p][q]);
            if (m.rows() != dims_[p + 1][q] || m.cols() != dims_[p][q])
                throw ShapeMismatch("horizontal differential at " + cell(long(p), long(q)) + " has the wrong shape");
            horizontal_[p].push_back(std::move(m));
        }
    }
    for (long p = 0; p <= long(P); ++p)
        for (long q = 0; q <= long(height_); ++q) {
            if (!(d(p, q - 1) * d(p, q)).is_zero()) throw InvalidComplex("d d != 0 at " + cell(p, q));
            if (!(delta(p + 1, q) * delta(p, q)).is_zero()) throw InvalidComplex("delta delta != 0 at " + cell(p, q));
            if (!(d(p + 1, q) * delta(p, q) == delta(p, q - 1) * d(p, q)))
                throw InvalidComplex("d delta != delta d at " + cell(p, q));
        }
}

std::size_t DoubleComplex::dim(long p, long q) const {
    if (p < 0 || q < 0 || std::size_t(p) > width() || std::size_t(q) > height_) return 0;
    return dims_[std::size_t(p)][std::size_t(q)];
}

Matrix DoubleComplex::d(long p, long q) const {
    if (p < 0 || q < 1 || std::size_t(p) > width() || std::size_t(q) > height_) return Matrix(dim(p, q - 1), dim(p, q));
    return vertical_[std::size_t(p)][std::size_t(q)];
}

Matrix DoubleComplex::delta(long p, long q) const {
    if (p < 0 || q < 0 || std::size_t(p) >= width() || std::size_t(q) > height_) return Matrix(dim(p + 1, q), dim(p, q));
    return horizontal_[std::size_t(p)][std::size_t(q)];
}

long DoubleComplex::stable_from() const {
    if (exhaustive_) return LONG_MIN;
    return long(height_) - long(width()) + 1;
}

DoubleComplex to_double_complex(const CosimplicialChain& c) { return double_complex_on(c, nullptr, false); }

DoubleComplex to_normalized_double_complex(const CosimplicialChain& c) {
    auto cells = normalized_cells(c);
    return double_complex_on(c, &cells, c.exhaustive());
}

// ---------------------------------------------------------------- tot

TotComplex tot_with(const DoubleComplex& dc, SignConvention conv) {
    long lo = -1, hi = long(dc.height());
    Layout l = tot_layout(dc, lo, hi);
    chaincx::UnboundedComplex u;
    u.min_degree = lo;
    u.dims = l.dims;
    u.d.emplace_back(0, l.dims[0]);
    for (long k = lo + 1; k <= hi; ++k) u.d.push_back(tot_differential(dc, l, k, conv));
    u.check();
    TotComplex t{u, chaincx::smart_truncate_with_basis(u), l.blocks, conv, dc.stable_from()};
    return t;
}

TotComplex tot(const DoubleComplex& dc) { return tot_with(dc, SignConvention::Mapping); }
TotComplex tot_dv(const DoubleComplex& dc) { return tot_with(dc, SignConvention::Vertical); }

FlaggedDim tot_cohomology_flagged(const DoubleComplex& dc, long n) {
    if (n < 0) throw DegreeOutOfRange("negative degree " + std::to_string(n));
    TotComplex t = tot(dc);
    std::size_t dim = std::size_t(n) > t.complex().length() ? 0 : chaincx::homology_dim(t.complex(), n);
    return {dim, t.stable(n)};
}

std::size_t tot_cohomology(const DoubleComplex& dc, long n) { return tot_cohomology_flagged(dc, n).dim; }

int default_sign(long p) {
    long r = ((p % 4) + 4) % 4;
    return (r == 0 || r == 3) ? 1 : -1;
}

ChainMap sign_iso(const DoubleComplex& dc, const SignTable& sign) {
    TotComplex a = tot(dc), b = tot_dv(dc);
    // checked on all of tot^Z, including the degrees below -1 that truncation drops
    long lo = -long(dc.width()) - 1, hi = long(dc.height());
    Layout l = tot_layout(dc, lo, hi);
    std::vector<Matrix> psi;
    for (long k = lo; k <= hi; ++k)
        psi.push_back(blockwise(l, l, k, [&](const TotBlock& bl) {
            return Matrix::scalar(dc.dim(bl.p, bl.q), Rational(sign(bl.p)));
        }));
    for (long k = lo + 1; k <= hi; ++k) {
        std::size_t i = std::size_t(k - lo);
        Matrix dm = tot_differential(dc, l, k, SignConvention::Mapping);
        Matrix dv = tot_differential(dc, l, k, SignConvention::Vertical);
        if (!(dv * psi[i] == psi[i - 1] * dm))
            throw SignIsoFailure("sign table does not intertwine the differentials in total degree " +
                                 std::to_string(k));
    }
    psi.erase(psi.begin(), psi.begin() + long(-1 - lo));
    return truncated_map(a, b, psi);
}

ChainMap tot_map(const CosimplicialMap& f, SignConvention conv) {
    f.check();
    DoubleComplex s = to_double_complex(f.source), t = to_double_complex(f.target);
    TotComplex ts = tot_with(s, conv), tt = tot_with(t, conv);
    long lo = -1, hi = long(std::max(s.height(), t.height()));
    Layout ls = tot_layout(s, lo, long(s.height())), lt = tot_layout(t, lo, long(t.height()));
    std::vector<Matrix> comps;
    for (long k = lo; k <= hi; ++k) {
        if (k > long(s.height())) {
            comps.push_back(Matrix(k <= long(t.height()) ? lt.dims[std::size_t(k - lo)] : 0, 0));
            continue;
        }
        std::size_t i = std::size_t(k - lo);
        Matrix m(k <= long(t.height()) ? lt.dims[i] : 0, ls.dims[i]);
        for (const auto& b : ls.blocks[i]) {
            long to = lt.find(k, b.p);
            if (to < 0) continue;
            m.add_block(std::size_t(to), b.offset, f.levels[std::size_t(b.p)].component(b.q));
        }
        comps.push_back(std::move(m));
    }
    return truncated_map(ts, tt, comps);
}

// ---------------------------------------------------------------- end formula

namespace {

// Map_k(N Q Delta^n, C^n) summed over n; block (n, i) is Hom((N Delta^n)_i, C^n_{i+k}), row-major
struct EndLayout {
    struct Block {
        std::size_t n, i, offset, rows, cols;
    };
    std::vector<Block> blocks;
    std::size_t total = 0;
    long find(std::size_t n, std::size_t i) const {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (blocks[b].n == n && blocks[b].i == i) return long(b);
        return -1;
    }
};

EndLayout end_layout(const CosimplicialChain& c, const std::vector<ChainComplex>& simplex, long k) {
    EndLayout l;
    for (std::size_t n = 0; n <= c.top(); ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            std::size_t r = c.level(n).dim(long(i) + k), s = simplex[n].dim(long(i));
            if (r == 0 || s == 0) continue;
            l.blocks.push_back({n, i, l.total, r, s});
            l.total += r * s;
        }
    return l;
}

}  // namespace

EndReport verify_end_formula(const CosimplicialChain& c) {
    std::size_t N = c.top();
    long Q = long(c.height());
    long lo = -1;
    std::vector<ChainComplex> simplex;
    for (std::size_t n = 0; n <= N; ++n) simplex.push_back(simplicial::free_simplex_chains(n));

    struct Gen {
        std::size_t m, n;
        ChainMap on_simplex;  // N Delta^m -> N Delta^n
        ChainMap on_c;        // C^m -> C^n
    };
    std::vector<Gen> gens;
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            gens.push_back({n - 1, n, simplicial::free_simplex_map(simplicial::coface_map(n, i), n), c.coface(n, i)});
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            gens.push_back(
                {n + 1, n, simplicial::free_simplex_map(simplicial::codegeneracy_map(n, j), n), c.codegeneracy(n + 1, j)});

    std::vector<EndLayout> lay;
    std::vector<LinearSubspace> ends;
    for (long k = lo - 1; k <= Q; ++k) {
        EndLayout l = end_layout(c, simplex, k);
        std::vector<Matrix> rows;
        for (const auto& g : gens)
            for (std::size_t i = 0; i <= g.m; ++i) {
                std::size_t r = c.level(g.n).dim(long(i) + k), s = simplex[g.m].dim(long(i));
                if (r == 0 || s == 0) continue;
                Matrix cons(r * s, l.total);
                long b1 = l.find(g.n, i);
                if (b1 >= 0)
                    cons.add_block(0, l.blocks[std::size_t(b1)].offset,
                                   chaincx::kron(Matrix::identity(r), g.on_simplex.component(long(i)).transpose()));
                long b2 = l.find(g.m, i);
                if (b2 >= 0)
                    cons.add_block(0, l.blocks[std::size_t(b2)].offset,
                                   chaincx::kron(g.on_c.component(long(i) + k), Matrix::identity(s)), Rational(-1));
                rows.push_back(std::move(cons));
            }
        ends.push_back(rows.empty() ? LinearSubspace::full(l.total) : kernel(Matrix::vstack(rows, l.total)));
        lay.push_back(std::move(l));
    }
    // lay[k - lo + 1]
    auto at = [&](long k) { return std::size_t(k - lo + 1); };

    auto end_diff = [&](long k) {
        const EndLayout& s = lay[at(k)];
        const EndLayout& t = lay[at(k - 1)];
        Matrix m(t.total, s.total);
        for (const auto& b : s.blocks) {
            const ChainComplex& cn = c.level(b.n);
            long tb = t.find(b.n, b.i);
            if (tb >= 0)
                m.add_block(t.blocks[std::size_t(tb)].offset, b.offset,
                            chaincx::kron(cn.d(long(b.i) + k), Matrix::identity(b.cols)));
            long tb2 = t.find(b.n, b.i + 1);
            if (tb2 >= 0)
                m.add_block(t.blocks[std::size_t(tb2)].offset, b.offset,
                            chaincx::kron(Matrix::identity(b.rows), simplex[b.n].d(long(b.i) + 1).transpose()),
                            -sign_pow(k));
        }
        return m;
    };

    auto cells = normalized_cells(c);
    DoubleComplex dc = double_complex_on(c, &cells, c.exhaustive());
    TotComplex t = tot(dc);
    Layout tl = tot_layout(dc, lo, Q);

    // phi -> (phi_n(top simplex)), written in normalized coordinates
    auto psi = [&](long k) {
        const EndLayout& s = lay[at(k)];
        std::size_t ti = std::size_t(k - lo);
        Matrix m(tl.dims[ti], s.total);
        for (const auto& b : s.blocks) {
            if (b.i != b.n) continue;
            long off = tl.find(k, long(b.n));
            const auto& piv = cells[b.n][b.n + std::size_t(k)].pivots();
            for (std::size_t r = 0; r < piv.size(); ++r) m.set(std::size_t(off) + r, b.offset + piv[r], 1);
        }
        return m;
    };

    EndReport rep;
    rep.isomorphism = true;
    rep.differential_agrees = true;
    chaincx::UnboundedComplex eu;
    eu.min_degree = lo;
    for (long k = lo; k <= Q; ++k) {
        const LinearSubspace& e = ends[at(k)];
        Matrix basis = e.basis().transpose();
        Matrix img = psi(k) * basis;
        if (e.dim() != tl.dims[std::size_t(k - lo)] || rank(img) != e.dim()) rep.isomorphism = false;
        eu.dims.push_back(e.dim());
        if (k == lo) {
            eu.d.emplace_back(0, e.dim());
            continue;
        }
        Matrix dk = end_diff(k);
        eu.d.push_back(restrict_map(dk, e, ends[at(k - 1)]));
        if (!(psi(k - 1) * dk * basis == t.full.d[std::size_t(k - lo)] * img)) rep.differential_agrees = false;
    }
    eu.check();
    ChainComplex ec = chaincx::smart_truncate(eu);
    rep.end_dims = ec.dims();
    rep.tot_dims = t.complex().dims();
    std::size_t L = std::max(rep.end_dims.size(), rep.tot_dims.size());
    auto a = rep.end_dims, b = rep.tot_dims;
    a.resize(L, 0);
    b.resize(L, 0);
    rep.dims_agree = a == b;
    TotComplex un = tot(to_double_complex(c));
    rep.stable_homology_agrees = true;
    for (long n = 0; n <= std::max(long(ec.length()), long(un.complex().length())); ++n) {
        if (!un.stable(n)) continue;
        std::size_t he = std::size_t(n) > ec.length() ? 0 : chaincx::homology_dim(ec, n);
        std::size_t hu = std::size_t(n) > un.complex().length() ? 0 : chaincx::homology_dim(un.complex(), n);
        if (he != hu) rep.stable_homology_agrees = false;
    }
    return rep;
}

// ---------------------------------------------------------------- cosimplicial Dold-Kan

CosimplicialChain cosimplicial_dold_kan(const DoubleComplex& b, std::size_t level) {
    for (std::size_t p = level + 1; p <= b.width(); ++p)
        for (std::size_t q = 0; q <= b.height(); ++q)
            if (b.dim(long(p), long(q)) != 0)
                throw TruncationTooSmall("column " + std::to_string(p) + " is nonzero above level " +
                                         std::to_string(level));
    std::size_t Q = b.height();
    // row q is the chain complex (B^{*,q})^T, dualized back after Dold-Kan
    std::vector<simplicial::CosimplicialVect> rows;
    for (std::size_t q = 0; q <= Q; ++q) {
        std::vector<std::size_t> dims;
        std::vector<Matrix> d;
        for (std::size_t p = 0; p <= std::min(level, b.width()); ++p) dims.push_back(b.dim(long(p), long(q)));
        for (std::size_t p = 1; p < dims.size(); ++p) d.push_back(b.delta(long(p) - 1, long(q)).transpose());
        rows.push_back(simplicial::CosimplicialVect::dual(simplicial::dold_kan(ChainComplex(dims, d), level)));
    }
    std::vector<ChainComplex> levels;
    for (std::size_t n = 0; n <= level; ++n) {
        auto surj = simplicial::surjections(n);
        std::vector<std::size_t> dims;
        std::vector<Matrix> d;
        for (std::size_t q = 0; q <= Q; ++q) dims.push_back(rows[q].dim(n));
        for (std::size_t q = 1; q <= Q; ++q) {
            std::vector<Matrix> blocks;
            for (const auto& s : surj) blocks.push_back(b.d(long(s.back()), long(q)));
            d.push_back(Matrix::block_diag(blocks));
        }
        levels.emplace_back(dims, d);
    }
    std::vector<std::vector<ChainMap>> cf(level + 1), cd(level + 1);
    for (std::size_t n = 1; n <= level; ++n) {
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<Matrix> comps;
            for (std::size_t q = 0; q <= Q; ++q) comps.push_back(rows[q].coface(n, i));
            cf[n].emplace_back(levels[n - 1], levels[n], comps);
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Matrix> comps;
            for (std::size_t q = 0; q <= Q; ++q) comps.push_back(rows[q].codegeneracy(n, j));
            cd[n].emplace_back(levels[n], levels[n - 1], comps);
        }
    }
    return CosimplicialChain(std::move(levels), std::move(cf), std::move(cd), true);
}

}  // namespace diffcoh::totalize
