#include "diffcoh/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "diffcoh/errors.hpp"

namespace diffcoh {

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

Monomial monomial_product(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

namespace {

void exponents_of_degree(std::size_t n, unsigned d, std::size_t pos, Monomial& cur, std::vector<Monomial>& out) {
    if (pos + 1 == n) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (unsigned e = d + 1; e-- > 0;) {
        cur[pos] = e;
        exponents_of_degree(n, d - e, pos + 1, cur, out);
    }
}

}  // namespace

std::vector<Monomial> monomials_up_to(std::size_t n, long d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    Monomial cur(n, 0);
    for (unsigned t = 0; t <= unsigned(d); ++t) exponents_of_degree(n, t, 0, cur, out);
    return out;
}

std::string variable_name(std::size_t n, std::size_t i) {
    static const char* xyz[] = {"x", "y", "z"};
    if (n <= 3) return xyz[i];
    return "x" + std::to_string(i + 1);
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    return monomial(nvars, Monomial(nvars, 0), c);
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw InvalidParameters("variable index out of range");
    Monomial m(nvars, 0);
    m[i] = 1;
    return monomial(nvars, m);
}

Polynomial Polynomial::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(m, c);
    return p;
}

long Polynomial::degree() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, long(total_degree(m)));
    return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (m.size() != nvars_) throw ShapeMismatch("monomial has " + std::to_string(m.size()) + " exponents, expected " +
                                                std::to_string(nvars_));
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::derivative(std::size_t i) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[i] == 0) continue;
        Monomial n(m);
        n[i] -= 1;
        r.add_term(n, c * Rational(long(m[i])));
    }
    return r;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& subs, std::size_t m) const {
    if (subs.size() != nvars_) throw ShapeMismatch("substitution needs one polynomial per variable");
    for (const auto& s : subs)
        if (s.nvars() != m) throw ShapeMismatch("substituted polynomials disagree on the variable count");
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(m, 1));
        while (pw.size() <= e) pw.push_back(pw.back() * subs[i]);
        return pw[e];
    };
    Polynomial r(m);
    for (const auto& [mono, c] : terms_) {
        Polynomial t = constant(m, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (mono[i] > 0) t = t * power(i, mono[i]);
        r = r + t;
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw ShapeMismatch("evaluation point has the wrong dimension");
    Rational r;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
        r += t;
    }
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw ShapeMismatch("adding polynomials in different variable counts");
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw ShapeMismatch("multiplying polynomials in different variable counts");
    Polynomial r(nvars_);
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_) r.add_term(monomial_product(a, b), x * y);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest degree first reads more naturally
    std::vector<std::pair<Monomial, Rational>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(),
                     [](const auto& a, const auto& b) { return total_degree(a.first) > total_degree(b.first); });
    for (const auto& [m, c] : ts) {
        Rational a = c;
        if (!first) {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) a = -c;
        }
        first = false;
        bool unit = total_degree(m) > 0 && (a.is_one() || (-a).is_one());
        if (!unit) os << a.str();
        else if (a.sign() < 0) os << "-";
        bool star = !unit;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (star) os << "*";
            star = true;
            os << variable_name(nvars_, i);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- PolyMap

PolyMap::PolyMap(std::size_t source_dim, std::vector<Polynomial> components)
    : source_dim_(source_dim), components_(std::move(components)) {
    for (const auto& c : components_)
        if (c.nvars() != source_dim_) throw ShapeMismatch("polynomial map component in the wrong variables");
}

PolyMap PolyMap::identity(std::size_t n) {
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(Polynomial::variable(n, i));
    return PolyMap(n, std::move(c));
}

PolyMap PolyMap::translation(const std::vector<Rational>& shift) {
    std::size_t n = shift.size();
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(Polynomial::variable(n, i) + Polynomial::constant(n, shift[i]));
    return PolyMap(n, std::move(c));
}

PolyMap PolyMap::affine(const Matrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw ShapeMismatch("affine map: offset length differs from row count");
    std::size_t m = a.cols();
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Polynomial p = Polynomial::constant(m, b[i]);
        for (const auto& [j, x] : a.row(i).entries()) p = p + Polynomial::variable(m, j) * x;
        c.push_back(p);
    }
    return PolyMap(m, std::move(c));
}

PolyMap PolyMap::constant(std::size_t source_dim, const std::vector<Rational>& value) {
    std::vector<Polynomial> c;
    for (const auto& v : value) c.push_back(Polynomial::constant(source_dim, v));
    return PolyMap(source_dim, std::move(c));
}

long PolyMap::degree() const {
    long d = 0;
    for (const auto& c : components_) d = std::max(d, c.degree());
    return d;
}

bool PolyMap::is_identity() const { return source_dim_ == target_dim() && *this == identity(source_dim_); }

std::vector<std::vector<Polynomial>> PolyMap::jacobian() const {
    std::vector<std::vector<Polynomial>> j(target_dim());
    for (std::size_t i = 0; i < target_dim(); ++i)
        for (std::size_t k = 0; k < source_dim_; ++k) j[i].push_back(components_[i].derivative(k));
    return j;
}

std::vector<Rational> PolyMap::eval(const std::vector<Rational>& point) const {
    std::vector<Rational> r;
    for (const auto& c : components_) r.push_back(c.eval(point));
    return r;
}

std::string PolyMap::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < components_.size(); ++i) s += (i ? ", " : "") + components_[i].str();
    return s + ")";
}

PolyMap compose(const PolyMap& g, const PolyMap& f) {
    if (g.source_dim() != f.target_dim())
        throw ShapeMismatch("cannot compose a map from R^" + std::to_string(g.source_dim()) + " after a map into R^" +
                            std::to_string(f.target_dim()));
    std::vector<Polynomial> c;
    for (const auto& p : g.components()) c.push_back(p.compose(f.components(), f.source_dim()));
    return PolyMap(f.source_dim(), std::move(c));
}

}  // namespace diffcoh
