#include "diffcoh/random.hpp"

#include "diffcoh/errors.hpp"

namespace diffcoh::rnd {

long Rng::uniform(long lo, long hi) {
    if (hi < lo) throw InvalidParameters("empty range");
    std::uint64_t span = std::uint64_t(hi - lo) + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return lo + long(x % span);
}

Rational Rng::small_rational(long range) {
    long n = uniform(-range, range);
    long d = uniform(1, 2);
    return Rational(n, d);
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range, long zero_bias) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (rng.uniform(0, zero_bias) != 0) continue;
            long v = rng.uniform(-range, range);
            if (v) m.set(i, j, v);
        }
    return m;
}

namespace {

Matrix random_columns_in(Rng& rng, const LinearSubspace& s, std::size_t cols) {
    // each column a random small combination of the basis, sometimes zero
    Matrix c = random_matrix(rng, cols, s.dim(), 2, 1);
    return (c * s.basis()).transpose();
}

}  // namespace

chaincx::ChainComplex random_complex_exact_length(Rng& rng, std::size_t length, std::size_t max_dim) {
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k <= length; ++k) dims.push_back(std::size_t(rng.uniform(0, long(max_dim))));
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= length; ++k) {
        Matrix prev = k == 1 ? Matrix(0, dims[0]) : d.back();
        LinearSubspace z = kernel(prev);
        if (z.dim() == 0) {
            d.emplace_back(dims[k - 1], dims[k]);
            continue;
        }
        d.push_back(random_columns_in(rng, z, dims[k]));
    }
    return chaincx::ChainComplex(dims, std::move(d));
}

chaincx::ChainComplex random_complex(Rng& rng, std::size_t max_length, std::size_t max_dim) {
    return random_complex_exact_length(rng, std::size_t(rng.uniform(0, long(max_length))), max_dim);
}

chaincx::ChainMap random_chain_map(Rng& rng, const chaincx::ChainComplex& c, const chaincx::ChainComplex& d) {
    chaincx::MappingComplex mc = chaincx::mapping_complex_data(c, d);
    std::size_t n = mc.truncated.cycles0.dim();
    Vector coords(n);
    for (auto& x : coords) x = Rational(rng.uniform(-2, 2));
    return mc.chain_map(coords);
}

chaincx::ChainMap random_fibration_onto(Rng& rng, const chaincx::ChainComplex& z, std::size_t max_dim) {
    // X = Z + W with a random W, f = projection onto Z twisted by a random map W -> Z
    chaincx::ChainComplex w = random_complex(rng, z.length(), max_dim);
    chaincx::ChainMap t = random_chain_map(rng, w, z);
    chaincx::ChainComplex x = chaincx::direct_sum(z, w);
    std::vector<Matrix> f;
    for (std::size_t k = 0; k <= x.length(); ++k) {
        long lk = long(k);
        f.push_back(Matrix::hstack({Matrix::identity(z.dim(lk)), t.component(lk)}, z.dim(lk)));
    }
    return chaincx::ChainMap(x, z, std::move(f));
}

namespace {

// product of a few elementary matrices and its inverse
std::pair<Matrix, Matrix> random_invertible(Rng& rng, std::size_t n) {
    Matrix g = Matrix::identity(n), gi = Matrix::identity(n);
    if (n < 2) return {g, gi};
    for (int t = 0; t < 3; ++t) {
        std::size_t a = std::size_t(rng.uniform(0, long(n) - 1)), b = std::size_t(rng.uniform(0, long(n) - 1));
        if (a == b) continue;
        Rational c(rng.uniform(-2, 2));
        Matrix e = Matrix::identity(n), ei = Matrix::identity(n);
        e.set(a, b, c);
        ei.set(a, b, -c);
        g = e * g;
        gi = gi * ei;
    }
    return {g, gi};
}

}  // namespace

totalize::DoubleComplex random_double_complex(Rng& rng, std::size_t width, std::size_t height, std::size_t max_dim) {
    std::size_t terms = std::size_t(rng.uniform(1, 2));
    std::vector<chaincx::ChainComplex> us, vs;
    for (std::size_t t = 0; t < terms; ++t) {
        us.push_back(random_complex(rng, width, max_dim).padded(width));
        vs.push_back(random_complex(rng, height, max_dim).padded(height));
    }
    std::vector<std::vector<std::size_t>> dims(width + 1);
    std::vector<std::vector<std::pair<Matrix, Matrix>>> g(width + 1);
    for (std::size_t p = 0; p <= width; ++p)
        for (std::size_t q = 0; q <= height; ++q) {
            std::size_t n = 0;
            for (std::size_t t = 0; t < terms; ++t) n += us[t].dim(long(p)) * vs[t].dim(long(q));
            dims[p].push_back(n);
            g[p].push_back(random_invertible(rng, n));
        }
    std::vector<std::vector<Matrix>> vert(width + 1), hor(width);
    for (std::size_t p = 0; p <= width; ++p)
        for (std::size_t q = 1; q <= height; ++q) {
            std::vector<Matrix> bl;
            for (std::size_t t = 0; t < terms; ++t)
                bl.push_back(chaincx::kron(Matrix::identity(us[t].dim(long(p))), vs[t].d(long(q))));
            vert[p].push_back(g[p][q - 1].first * Matrix::block_diag(bl) * g[p][q].second);
        }
    for (std::size_t p = 0; p < width; ++p)
        for (std::size_t q = 0; q <= height; ++q) {
            std::vector<Matrix> bl;
            for (std::size_t t = 0; t < terms; ++t)
                bl.push_back(chaincx::kron(us[t].d(long(p) + 1).transpose(), Matrix::identity(vs[t].dim(long(q)))));
            hor[p].push_back(g[p + 1][q].first * Matrix::block_diag(bl) * g[p][q].second);
        }
    return totalize::DoubleComplex(std::move(dims), std::move(vert), std::move(hor), true);
}

totalize::CosimplicialChain random_cosimplicial_chain(Rng& rng, std::size_t level, std::size_t height,
                                                      std::size_t max_dim) {
    return totalize::cosimplicial_dold_kan(random_double_complex(rng, level, height, max_dim), level);
}

Polynomial random_polynomial(Rng& rng, std::size_t nvars, long max_degree, std::size_t terms) {
    auto monos = monomials_up_to(nvars, max_degree);
    Polynomial p(nvars);
    if (monos.empty()) return p;
    for (std::size_t t = 0; t < terms; ++t)
        p.add_term(monos[std::size_t(rng.uniform(0, long(monos.size()) - 1))], rng.small_rational());
    return p;
}

forms::PolyForm random_form(Rng& rng, std::size_t n, std::size_t k, long bound, std::size_t terms) {
    forms::FormSpace fs(n, k, bound);
    forms::PolyForm f(n, k, bound);
    if (fs.dim() == 0) return f;
    for (std::size_t t = 0; t < terms; ++t)
        f = f + fs.basis_form(std::size_t(rng.uniform(0, long(fs.dim()) - 1))) * rng.small_rational();
    return f;
}

PolyMap random_polymap(Rng& rng, std::size_t m, std::size_t n, long max_degree) {
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(random_polynomial(rng, m, max_degree, 2));
    return PolyMap(m, std::move(c));
}

}  // namespace diffcoh::rnd
