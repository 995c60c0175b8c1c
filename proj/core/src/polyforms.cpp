#include "diffcoh/polyforms.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "diffcoh/errors.hpp"

namespace diffcoh::forms {

namespace {

void subsets_rec(std::size_t n, std::size_t k, unsigned from, Subset& cur, std::vector<Subset>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (unsigned i = from; i < n; ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// dx_s ^ dx_j written as +-dx_{s + j}; nullopt if j is in s
std::optional<std::pair<Subset, int>> wedge_right(const Subset& s, unsigned j) {
    int sign = 1;
    Subset r;
    bool placed = false;
    for (unsigned v : s) {
        if (v == j) return std::nullopt;
        if (v > j) {
            if (!placed) {
                r.push_back(j);
                placed = true;
            }
            sign = -sign;
        }
        r.push_back(v);
    }
    if (!placed) r.push_back(j);
    // the sign counts elements of s greater than j
    return std::make_pair(r, sign);
}

std::optional<std::pair<Subset, int>> wedge_subsets(const Subset& a, const Subset& b) {
    Subset r(a);
    int sign = 1;
    for (unsigned j : b) {
        auto w = wedge_right(r, j);
        if (!w) return std::nullopt;
        r = w->first;
        sign *= w->second;
    }
    return std::make_pair(r, sign);
}

void check_subset(const Subset& s, std::size_t n, std::size_t k) {
    if (s.size() != k) throw ShapeMismatch("covector subset has " + std::to_string(s.size()) + " entries, expected " +
                                           std::to_string(k));
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= n) throw ShapeMismatch("covector index " + std::to_string(s[i]) + " outside R^" + std::to_string(n));
        if (i > 0 && s[i] <= s[i - 1]) throw ShapeMismatch("covector subset is not strictly increasing");
    }
}

std::string overflow_msg(long need, long bound) {
    return "coefficient degree " + std::to_string(need) + " exceeds the budget " + std::to_string(bound);
}

}  // namespace

std::vector<Subset> subsets(std::size_t n, std::size_t k) {
    std::vector<Subset> out;
    if (k > n) return out;
    Subset cur;
    subsets_rec(n, k, 0, cur, out);
    return out;
}

std::string to_string(Grading g) { return g == Grading::Uniform ? "uniform" : "weight"; }

// ---------------------------------------------------------------- PolyForm

PolyForm::PolyForm(std::size_t n, std::size_t k, long bound) : n_(n), k_(k), bound_(bound) {}

PolyForm PolyForm::function(const Polynomial& f, long bound) {
    PolyForm r(f.nvars(), 0, bound);
    for (const auto& [m, c] : f.terms()) r.add_term(m, {}, c);
    return r;
}

PolyForm PolyForm::dx(std::size_t n, std::size_t i, long bound) {
    PolyForm r(n, 1, bound);
    r.add_term(Monomial(n, 0), {unsigned(i)}, 1);
    return r;
}

long PolyForm::max_coeff_degree() const {
    long d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, long(total_degree(key.first)));
    return d;
}

Polynomial PolyForm::coefficient(const Subset& s) const {
    Polynomial p(n_);
    for (const auto& [key, c] : terms_)
        if (key.second == s) p.add_term(key.first, c);
    return p;
}

void PolyForm::add_term(const Monomial& m, const Subset& s, const Rational& c) {
    if (m.size() != n_) throw ShapeMismatch("monomial in the wrong number of variables");
    check_subset(s, n_, k_);
    if (c.is_zero()) return;
    long deg = long(total_degree(m));
    if (deg > bound_) throw BudgetOverflow(overflow_msg(deg, bound_));
    auto [it, fresh] = terms_.emplace(std::make_pair(m, s), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyForm PolyForm::with_bound(long bound) const {
    long need = max_coeff_degree();
    if (need > bound) throw BudgetOverflow(overflow_msg(need, bound));
    PolyForm r(*this);
    r.bound_ = bound;
    return r;
}

PolyForm PolyForm::operator+(const PolyForm& o) const {
    if (o.n_ != n_ || o.k_ != k_) throw ShapeMismatch("adding forms of different shape");
    PolyForm r(n_, k_, std::max(bound_, o.bound_));
    r.terms_ = terms_;
    for (const auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
}

PolyForm PolyForm::operator-(const PolyForm& o) const { return *this + (-o); }

PolyForm PolyForm::operator*(const Rational& c) const {
    PolyForm r(n_, k_, bound_);
    if (c.is_zero()) return r;
    for (const auto& [key, x] : terms_) r.terms_.emplace(key, x * c);
    return r;
}

std::string PolyForm::str() const {
    if (terms_.empty()) return "0";
    std::map<Subset, Polynomial> by;
    for (const auto& [key, c] : terms_) {
        auto it = by.try_emplace(key.second, Polynomial(n_)).first;
        it->second.add_term(key.first, c);
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, p] : by) {
        if (!first) os << " + ";
        first = false;
        std::string cov;
        for (std::size_t i = 0; i < s.size(); ++i) cov += (i ? "^d" : "d") + variable_name(n_, s[i]);
        bool single = p.terms().size() == 1;
        if (s.empty())
            os << (single ? p.str() : "(" + p.str() + ")");
        else if (single && p.str() == "1")
            os << cov;
        else
            os << (single ? p.str() : "(" + p.str() + ")") << " " << cov;
    }
    return os.str();
}

PolyForm exterior_d(const PolyForm& f) {
    std::size_t n = f.ambient_dim();
    PolyForm r(n, f.degree() + 1, f.bound());
    for (const auto& [key, c] : f.terms()) {
        const auto& [m, s] = key;
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            // d(x^m dx_S) picks up dx_i on the left
            auto w = wedge_subsets({unsigned(i)}, s);
            if (!w) continue;
            Monomial mm(m);
            mm[i] -= 1;
            r.add_term(mm, w->first, c * Rational(long(m[i]) * w->second));
        }
    }
    return r;
}

PolyForm pullback(const PolyMap& phi, const PolyForm& f, std::optional<long> out_bound) {
    if (phi.target_dim() != f.ambient_dim())
        throw ShapeMismatch("pullback: form lives on R^" + std::to_string(f.ambient_dim()) + ", map lands in R^" +
                            std::to_string(phi.target_dim()));
    std::size_t m = phi.source_dim(), k = f.degree();
    long dphi = phi.degree();
    long bound = out_bound ? *out_bound : std::max(0L, f.bound() * dphi + long(k) * (dphi - 1));
    auto jac = phi.jacobian();
    std::map<Monomial, Polynomial> mono_cache;
    std::map<Subset, Polynomial> acc;
    for (const auto& [key, c] : f.terms()) {
        const auto& [mono, s] = key;
        auto it = mono_cache.find(mono);
        if (it == mono_cache.end())
            it = mono_cache.emplace(mono, Polynomial::monomial(f.ambient_dim(), mono).compose(phi.components(), m)).first;
        std::map<Subset, Polynomial> cur;
        cur.emplace(Subset{}, it->second * c);
        for (unsigned si : s) {
            std::map<Subset, Polynomial> next;
            for (const auto& [t, p] : cur)
                for (std::size_t j = 0; j < m; ++j) {
                    const Polynomial& dj = jac[si][j];
                    if (dj.is_zero()) continue;
                    auto w = wedge_right(t, unsigned(j));
                    if (!w) continue;
                    auto nit = next.try_emplace(w->first, Polynomial(m)).first;
                    nit->second = nit->second + p * dj * Rational(w->second);
                }
            cur = std::move(next);
        }
        for (const auto& [t, p] : cur) {
            auto ait = acc.try_emplace(t, Polynomial(m)).first;
            ait->second = ait->second + p;
        }
    }
    PolyForm r(m, k, bound);
    for (const auto& [t, p] : acc)
        for (const auto& [mono, c] : p.terms()) r.add_term(mono, t, c);
    return r;
}

PolyForm wedge(const PolyForm& f, const PolyForm& g, std::optional<long> out_bound) {
    if (f.ambient_dim() != g.ambient_dim()) throw ShapeMismatch("wedge of forms on different spaces");
    long bound = out_bound ? *out_bound : f.bound() + g.bound();
    PolyForm r(f.ambient_dim(), f.degree() + g.degree(), bound);
    for (const auto& [a, x] : f.terms())
        for (const auto& [b, y] : g.terms()) {
            auto w = wedge_subsets(a.second, b.second);
            if (!w) continue;
            r.add_term(monomial_product(a.first, b.first), w->first, x * y * Rational(w->second));
        }
    return r;
}

PolyForm poincare_h(const PolyForm& f, std::optional<long> out_bound) {
    std::size_t k = f.degree();
    if (k == 0) throw InvalidParameters("the homotopy operator needs a form of positive degree");
    long bound = out_bound ? *out_bound : f.bound() + 1;
    PolyForm r(f.ambient_dim(), k - 1, bound);
    for (const auto& [key, c] : f.terms()) {
        const auto& [m, s] = key;
        Rational scale = c / Rational(long(total_degree(m) + k));
        for (std::size_t pos = 0; pos < s.size(); ++pos) {
            Monomial mm(m);
            mm[s[pos]] += 1;
            Subset rest(s);
            rest.erase(rest.begin() + long(pos));
            r.add_term(mm, rest, pos % 2 == 0 ? scale : -scale);
        }
    }
    return r;
}

PolyForm mc_R() { return PolyForm::dx(1, 0, 0); }

// ---------------------------------------------------------------- FormSpace

FormSpace::FormSpace(std::size_t n, std::size_t k, long bound)
    : n_(n), k_(k), bound_(bound), monos_(monomials_up_to(n, bound)), subs_(subsets(n, k)) {
    for (std::size_t i = 0; i < monos_.size(); ++i) mono_index_[monos_[i]] = i;
    for (std::size_t i = 0; i < subs_.size(); ++i) sub_index_[subs_[i]] = i;
}

std::optional<std::size_t> FormSpace::index(const Monomial& m, const Subset& s) const {
    auto a = mono_index_.find(m);
    auto b = sub_index_.find(s);
    if (a == mono_index_.end() || b == sub_index_.end()) return std::nullopt;
    return a->second * subs_.size() + b->second;
}

PolyForm FormSpace::basis_form(std::size_t i) const {
    PolyForm f(n_, k_, bound_);
    f.add_term(monos_.at(i / subs_.size()), subs_[i % subs_.size()], 1);
    return f;
}

SparseVector FormSpace::to_sparse(const PolyForm& f) const {
    if (f.ambient_dim() != n_ || f.degree() != k_)
        throw ShapeMismatch("form of degree " + std::to_string(f.degree()) + " on R^" + std::to_string(f.ambient_dim()) +
                            " in the space of " + std::to_string(k_) + "-forms on R^" + std::to_string(n_));
    std::vector<std::pair<std::size_t, Rational>> entries;
    for (const auto& [key, c] : f.terms()) {
        auto i = index(key.first, key.second);
        if (!i) throw BudgetOverflow(overflow_msg(long(total_degree(key.first)), bound_));
        entries.emplace_back(*i, c);
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector v;
    for (auto& [i, c] : entries) v.push_back_unchecked(i, c);
    return v;
}

PolyForm FormSpace::from_vector(const Vector& v) const { return from_sparse(SparseVector::from_dense(v)); }

PolyForm FormSpace::from_sparse(const SparseVector& v) const {
    PolyForm f(n_, k_, bound_);
    for (const auto& [i, c] : v.entries()) f.add_term(monos_.at(i / subs_.size()), subs_[i % subs_.size()], c);
    return f;
}

Matrix FormSpace::matrix_of(const FormSpace& tgt, const std::function<PolyForm(const PolyForm&)>& op) const {
    Matrix t(dim(), tgt.dim());  // rows are images, transposed at the end
    for (std::size_t i = 0; i < dim(); ++i) t.row(i) = tgt.to_sparse(op(basis_form(i)));
    return t.transpose();
}

Matrix d_matrix(const FormSpace& src, const FormSpace& tgt) {
    if (tgt.degree() != src.degree() + 1 || tgt.ambient_dim() != src.ambient_dim())
        throw ShapeMismatch("d goes from k-forms to (k+1)-forms on the same space");
    return src.matrix_of(tgt, [](const PolyForm& f) { return exterior_d(f); });
}

Matrix h_matrix(const FormSpace& src, const FormSpace& tgt) {
    if (src.degree() == 0 || tgt.degree() + 1 != src.degree() || tgt.ambient_dim() != src.ambient_dim())
        throw ShapeMismatch("h goes from k-forms to (k-1)-forms on the same space, k >= 1");
    return src.matrix_of(tgt, [&](const PolyForm& f) { return poincare_h(f, tgt.bound()); });
}

Matrix pullback_matrix(const PolyMap& phi, const FormSpace& src, const FormSpace& tgt) {
    if (src.ambient_dim() != phi.target_dim() || tgt.ambient_dim() != phi.source_dim() || src.degree() != tgt.degree())
        throw ShapeMismatch("pullback matrix: spaces do not match the map " + phi.str());
    return src.matrix_of(tgt, [&](const PolyForm& f) { return pullback(phi, f, tgt.bound()); });
}

// ---------------------------------------------------------------- sheaves

SheafSpec SheafSpec::parse(const std::string& s) {
    static const std::regex re(R"(^\s*(Rdelta|R|OmegaCl|Omega)\s*(\d+)?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ParseError("unknown sheaf '" + s + "'");
    SheafSpec r;
    std::string name = m[1];
    bool has_k = m[2].matched;
    if (name == "R" || name == "Rdelta") {
        if (has_k) throw ParseError("sheaf '" + name + "' takes no degree");
        r.kind = name == "R" ? SheafKind::R : SheafKind::Rdelta;
        return r;
    }
    if (!has_k) throw ParseError("sheaf '" + name + "' needs a form degree");
    r.kind = name == "Omega" ? SheafKind::Omega : SheafKind::OmegaCl;
    r.k = std::stoul(m[2]);
    return r;
}

std::string SheafSpec::str() const {
    switch (kind) {
    case SheafKind::R: return "R";
    case SheafKind::Rdelta: return "Rdelta";
    case SheafKind::Omega: return "Omega " + std::to_string(k);
    case SheafKind::OmegaCl: return "OmegaCl " + std::to_string(k);
    }
    return "";
}

SheafValue eval_sheaf(const SheafSpec& s, std::size_t n, long bound) {
    FormSpace amb(n, s.form_degree(), bound);
    switch (s.kind) {
    case SheafKind::R:
    case SheafKind::Omega: return {amb, LinearSubspace::full(amb.dim())};
    case SheafKind::Rdelta: {
        Matrix c(0, amb.dim());
        if (amb.dim() > 0) c = Matrix::from_rows({amb.to_sparse(PolyForm::function(Polynomial::constant(n, 1), bound))}, amb.dim());
        return {amb, LinearSubspace::span(c)};
    }
    case SheafKind::OmegaCl: return {amb, kernel(d_matrix(amb, FormSpace(n, s.k + 1, bound)))};
    }
    return {amb, LinearSubspace(amb.dim())};
}

SheafValue eval_sheaf(const SheafSpec& s, std::size_t n, const Budget& b) {
    return eval_sheaf(s, n, b.bound(s.form_degree()));
}

WindowedDims derham_cohomology(std::size_t n, const Budget& b) {
    auto dims_at = [n](const Budget& bb) {
        // rank_out[j] is the rank of d on j-forms
        std::vector<std::size_t> rank_out(n + 1, 0), h;
        for (std::size_t j = 0; j < n; ++j)
            rank_out[j] = rank(d_matrix(FormSpace(n, j, bb.bound(j)), FormSpace(n, j + 1, bb.bound(j + 1))));
        for (std::size_t j = 0; j <= n; ++j)
            h.push_back(FormSpace(n, j, bb.bound(j)).dim() - rank_out[j] - (j > 0 ? rank_out[j - 1] : 0));
        return h;
    };
    WindowedDims w;
    w.dims = dims_at(b);
    auto next = dims_at(Budget{b.D + 1, b.grading});
    for (std::size_t j = 0; j <= n; ++j) w.stable.push_back(w.dims[j] == next[j]);
    return w;
}

}  // namespace diffcoh::forms
