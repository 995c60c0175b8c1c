#include "diffcoh/simplicial.hpp"

#include <algorithm>
#include <map>

#include "diffcoh/errors.hpp"

namespace diffcoh::simplicial {

namespace {

std::string where(const char* what, std::size_t n, std::size_t i, std::size_t j) {
    return std::string(what) + " at level " + std::to_string(n) + " (" + std::to_string(i) + ", " +
           std::to_string(j) + ")";
}

}  // namespace

Monotone coface_map(std::size_t n, std::size_t i) {
    Monotone m;
    for (std::size_t v = 0; v <= n; ++v)
        if (v != i) m.push_back(v);
    return m;
}

Monotone codegeneracy_map(std::size_t n, std::size_t j) {
    Monotone m;
    for (std::size_t v = 0; v <= n + 1; ++v) m.push_back(v <= j ? v : v - 1);
    return m;
}

Monotone compose(const Monotone& g, const Monotone& f) {
    Monotone h;
    for (auto v : f) h.push_back(g.at(v));
    return h;
}

std::vector<Monotone> surjections(std::size_t n) {
    // a surjection is determined by which of the n steps increase
    std::vector<Monotone> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Monotone m{0};
        for (std::size_t i = 0; i < n; ++i) m.push_back(m.back() + ((mask >> i) & 1));
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- simplicial

SimplicialVect::SimplicialVect(std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> faces,
                               std::vector<std::vector<Matrix>> degeneracies)
    : dims_(std::move(dims)), faces_(std::move(faces)), degens_(std::move(degeneracies)) {
    if (dims_.empty()) throw InvalidParameters("simplicial object needs level 0");
    std::size_t N = top();
    faces_.resize(N + 1);
    degens_.resize(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        if (faces_[n].size() != n + 1) throw ShapeMismatch("level " + std::to_string(n) + " needs n+1 faces");
        for (auto& f : faces_[n])
            if (f.rows() != dims_[n - 1] || f.cols() != dims_[n]) throw ShapeMismatch("face shape");
    }
    for (std::size_t n = 0; n < N; ++n) {
        if (degens_[n].size() != n + 1) throw ShapeMismatch("level " + std::to_string(n) + " needs n+1 degeneracies");
        for (auto& s : degens_[n])
            if (s.rows() != dims_[n + 1] || s.cols() != dims_[n]) throw ShapeMismatch("degeneracy shape");
    }
    // d_i d_j = d_{j-1} d_i for i < j
    for (std::size_t n = 2; n <= N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (!(faces_[n - 1][i] * faces_[n][j] == faces_[n - 1][j - 1] * faces_[n][i]))
                    throw IdentityViolation(where("d_i d_j", n, i, j));
    // s_i s_j = s_{j+1} s_i for i <= j
    for (std::size_t n = 0; n + 2 <= N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= j; ++i)
                if (!(degens_[n + 1][i] * degens_[n][j] == degens_[n + 1][j + 1] * degens_[n][i]))
                    throw IdentityViolation(where("s_i s_j", n, i, j));
    // mixed identities, d_i s_j on V_n with s_j : V_n -> V_{n+1}
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= n + 1; ++i) {
                Matrix lhs = faces_[n + 1][i] * degens_[n][j];
                Matrix rhs;
                if (i == j || i == j + 1)
                    rhs = Matrix::identity(dims_[n]);
                else if (i < j)
                    rhs = degens_[n - 1][j - 1] * faces_[n][i];
                else
                    rhs = degens_[n - 1][j] * faces_[n][i - 1];
                if (!(lhs == rhs)) throw IdentityViolation(where("d_i s_j", n, i, j));
            }
}

CosimplicialVect::CosimplicialVect(std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> cofaces,
                                   std::vector<std::vector<Matrix>> codegeneracies)
    : dims_(std::move(dims)), cofaces_(std::move(cofaces)), codegens_(std::move(codegeneracies)) {
    if (dims_.empty()) throw InvalidParameters("cosimplicial object needs level 0");
    std::size_t N = top();
    cofaces_.resize(N + 1);
    codegens_.resize(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        if (cofaces_[n].size() != n + 1) throw ShapeMismatch("level " + std::to_string(n) + " needs n+1 cofaces");
        if (codegens_[n].size() != n) throw ShapeMismatch("level " + std::to_string(n) + " needs n codegeneracies");
        for (auto& f : cofaces_[n])
            if (f.rows() != dims_[n] || f.cols() != dims_[n - 1]) throw ShapeMismatch("coface shape");
        for (auto& s : codegens_[n])
            if (s.rows() != dims_[n - 1] || s.cols() != dims_[n]) throw ShapeMismatch("codegeneracy shape");
    }
    // d^j d^i = d^i d^{j-1} for i < j, as maps A^{n-2} -> A^n
    for (std::size_t n = 2; n <= N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (!(cofaces_[n][j] * cofaces_[n - 1][i] == cofaces_[n][i] * cofaces_[n - 1][j - 1]))
                    throw IdentityViolation(where("d^j d^i", n, i, j));
    // s^j s^i = s^i s^{j+1} for i <= j, as maps A^n -> A^{n-2}
    for (std::size_t n = 2; n <= N; ++n)
        for (std::size_t j = 0; j + 2 <= n; ++j)
            for (std::size_t i = 0; i <= j; ++i)
                if (!(codegens_[n - 1][j] * codegens_[n][i] == codegens_[n - 1][i] * codegens_[n][j + 1]))
                    throw IdentityViolation(where("s^j s^i", n, i, j));
    // s^j d^i on A^{n}: d^i : A^n -> A^{n+1}, s^j : A^{n+1} -> A^n
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= n + 1; ++i) {
                Matrix lhs = codegens_[n + 1][j] * cofaces_[n + 1][i];
                Matrix rhs;
                if (i == j || i == j + 1)
                    rhs = Matrix::identity(dims_[n]);
                else if (i < j)
                    rhs = cofaces_[n][i] * codegens_[n][j - 1];
                else
                    rhs = cofaces_[n][i - 1] * codegens_[n][j];
                if (!(lhs == rhs)) throw IdentityViolation(where("s^j d^i", n, i, j));
            }
}

CosimplicialVect CosimplicialVect::dual(const SimplicialVect& v) {
    std::size_t N = v.top();
    std::vector<std::size_t> dims;
    std::vector<std::vector<Matrix>> cof(N + 1), cod(N + 1);
    for (std::size_t n = 0; n <= N; ++n) dims.push_back(v.dim(n));
    for (std::size_t n = 1; n <= N; ++n) {
        for (std::size_t i = 0; i <= n; ++i) cof[n].push_back(v.face(n, i).transpose());
        for (std::size_t j = 0; j < n; ++j) cod[n].push_back(v.degeneracy(n - 1, j).transpose());
    }
    return CosimplicialVect(dims, std::move(cof), std::move(cod));
}

chaincx::ChainComplex normalized_chains(const SimplicialVect& v) {
    std::size_t N = v.top();
    std::vector<LinearSubspace> sub;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= N; ++n) {
        if (n == 0) {
            sub.push_back(LinearSubspace::full(v.dim(0)));
        } else {
            std::vector<Matrix> fs;
            for (std::size_t i = 1; i <= n; ++i) fs.push_back(v.face(n, i));
            sub.push_back(kernel(Matrix::vstack(fs, v.dim(n))));
        }
        dims.push_back(sub.back().dim());
    }
    std::vector<Matrix> d;
    for (std::size_t n = 1; n <= N; ++n) d.push_back(restrict_map(v.face(n, 0), sub[n], sub[n - 1]));
    return chaincx::ChainComplex(dims, std::move(d));
}

// ---------------------------------------------------------------- Dold-Kan

namespace {

struct DKLevel {
    std::vector<Monotone> summands;
    std::vector<std::size_t> offset;
    std::map<Monotone, std::size_t> index;
    std::size_t dim = 0;
};

DKLevel dk_level(const chaincx::ChainComplex& c, std::size_t n) {
    DKLevel l;
    for (auto& s : surjections(n)) {
        std::size_t k = s.back();
        l.index[s] = l.summands.size();
        l.summands.push_back(s);
        l.offset.push_back(l.dim);
        l.dim += c.dim(long(k));
    }
    return l;
}

// theta^* : DK_n -> DK_m for theta : [m] -> [n]
Matrix dk_structure_map(const chaincx::ChainComplex& c, const DKLevel& src, const DKLevel& tgt, const Monotone& theta) {
    Matrix out(tgt.dim, src.dim);
    for (std::size_t b = 0; b < src.summands.size(); ++b) {
        const Monotone& sigma = src.summands[b];
        std::size_t k = sigma.back();
        if (c.dim(long(k)) == 0) continue;
        Monotone st = compose(sigma, theta);
        std::vector<std::size_t> img(st.begin(), st.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        Monotone eps;
        for (auto v : st) eps.push_back(std::size_t(std::lower_bound(img.begin(), img.end(), v) - img.begin()));
        std::size_t tb = tgt.index.at(eps);
        if (img.size() == k + 1) {
            out.add_block(tgt.offset[tb], src.offset[b], Matrix::identity(c.dim(long(k))));
        } else if (img.size() == k && img.front() == 1) {
            out.add_block(tgt.offset[tb], src.offset[b], c.d(long(k)));
        }
    }
    return out;
}

}  // namespace

SimplicialVect dold_kan(const chaincx::ChainComplex& c, std::size_t level) {
    for (std::size_t k = level + 1; k <= c.length(); ++k)
        if (c.dim(long(k)) != 0)
            throw TruncationTooSmall("complex is nonzero in degree " + std::to_string(k) + " above level " +
                                     std::to_string(level));
    std::vector<DKLevel> lv;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= level; ++n) {
        lv.push_back(dk_level(c, n));
        dims.push_back(lv.back().dim);
    }
    std::vector<std::vector<Matrix>> faces(level + 1), degens(level + 1);
    for (std::size_t n = 1; n <= level; ++n)
        for (std::size_t i = 0; i <= n; ++i) faces[n].push_back(dk_structure_map(c, lv[n], lv[n - 1], coface_map(n, i)));
    for (std::size_t n = 0; n < level; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            degens[n].push_back(dk_structure_map(c, lv[n], lv[n + 1], codegeneracy_map(n, j)));
    return SimplicialVect(dims, std::move(faces), std::move(degens));
}

// ---------------------------------------------------------------- simplices

std::vector<std::vector<std::size_t>> simplex_faces(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k + 1) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = start; v <= n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

chaincx::ChainComplex free_simplex_chains(std::size_t n) {
    std::vector<std::size_t> dims;
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> idx(n + 1);
    std::vector<std::vector<std::vector<std::size_t>>> faces(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        faces[k] = simplex_faces(n, k);
        for (std::size_t i = 0; i < faces[k].size(); ++i) idx[k][faces[k][i]] = i;
        dims.push_back(faces[k].size());
    }
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix m(dims[k - 1], dims[k]);
        for (std::size_t c = 0; c < faces[k].size(); ++c)
            for (std::size_t i = 0; i <= k; ++i) {
                auto f = faces[k][c];
                f.erase(f.begin() + long(i));
                m.add_to(idx[k - 1].at(f), c, i % 2 == 0 ? 1 : -1);
            }
        d.push_back(std::move(m));
    }
    return chaincx::ChainComplex(dims, std::move(d));
}

chaincx::ChainMap free_simplex_map(const Monotone& f, std::size_t n) {
    std::size_t m = f.size() - 1;
    chaincx::ChainComplex src = free_simplex_chains(m);
    chaincx::ChainComplex tgt = free_simplex_chains(n);
    std::vector<Matrix> comps;
    for (std::size_t k = 0; k <= std::max(m, n); ++k) {
        Matrix c(tgt.dim(long(k)), src.dim(long(k)));
        auto sf = simplex_faces(m, k);
        auto tf = simplex_faces(n, k);
        std::map<std::vector<std::size_t>, std::size_t> tidx;
        for (std::size_t i = 0; i < tf.size(); ++i) tidx[tf[i]] = i;
        for (std::size_t j = 0; j < sf.size(); ++j) {
            std::vector<std::size_t> im;
            for (auto v : sf[j]) im.push_back(f[v]);
            bool degenerate = false;
            for (std::size_t i = 1; i < im.size(); ++i)
                if (im[i] == im[i - 1]) degenerate = true;
            if (!degenerate) c.set(tidx.at(im), j, 1);
        }
        comps.push_back(std::move(c));
    }
    return chaincx::ChainMap(src, tgt, std::move(comps));
}

// ---------------------------------------------------------------- matching object

MatchingObject matching_object(const CosimplicialVect& a, std::size_t n, MatchingRelation rel) {
    if (n == 0 || n > a.top())
        throw DegreeOutOfRange("matching object needs 1 <= n <= " + std::to_string(a.top()) + ", got " +
                               std::to_string(n));
    std::size_t prev = a.dim(n - 1);
    std::size_t amb = n * prev;
    std::vector<Matrix> eqs;
    if (n >= 2) {
        std::size_t low = a.dim(n - 2);
        // relation s^j a_i = s^i a_{j+1}; codegeneracies of level n-1 have indices 0..n-2
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j + 1 < n; ++j) {
                bool use = rel == MatchingRelation::LowerEq ? (i <= j) : (i >= j);
                if (!use || i + 1 >= n) continue;
                Matrix e(low, amb);
                e.add_block(0, i * prev, a.codegeneracy(n - 1, j));
                e.add_block(0, (j + 1) * prev, a.codegeneracy(n - 1, i), -1);
                eqs.push_back(std::move(e));
            }
    }
    LinearSubspace sub = eqs.empty() ? LinearSubspace::full(amb) : kernel(Matrix::vstack(eqs, amb));
    std::vector<Matrix> s;
    for (std::size_t j = 0; j < n; ++j) s.push_back(a.codegeneracy(n, j));
    return MatchingObject{sub, Matrix::vstack(s, a.dim(n))};
}

}  // namespace diffcoh::simplicial
