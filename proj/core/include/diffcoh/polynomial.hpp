#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "diffcoh/matrix.hpp"
#include "diffcoh/rational.hpp"

namespace diffcoh {

// exponent vector
using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m);
Monomial monomial_product(const Monomial& a, const Monomial& b);
// all monomials in n variables of total degree <= d, by degree then reverse-lex on exponents
// (for two variables: 1, x, y, x^2, xy, y^2, ...)
std::vector<Monomial> monomials_up_to(std::size_t n, long d);

// variable names x, y, z for up to three variables, x1..xn otherwise
std::string variable_name(std::size_t n, std::size_t i);

class Polynomial {
public:
    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial monomial(std::size_t nvars, const Monomial& m, const Rational& c = 1);

    std::size_t nvars() const { return nvars_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long degree() const;  // -1 for the zero polynomial
    Rational coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    Polynomial derivative(std::size_t i) const;
    // substitute subs[i] for variable i; every subs[i] is in out_vars variables
    Polynomial compose(const std::vector<Polynomial>& subs, std::size_t out_vars) const;
    Rational eval(const std::vector<Rational>& point) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial operator-() const { return *this * Rational(-1); }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    std::size_t nvars_;
    std::map<Monomial, Rational> terms_;
};

// polynomial map R^m -> R^n
class PolyMap {
public:
    PolyMap() = default;
    PolyMap(std::size_t source_dim, std::vector<Polynomial> components);

    static PolyMap identity(std::size_t n);
    static PolyMap translation(const std::vector<Rational>& shift);
    // x -> a x + b
    static PolyMap affine(const Matrix& a, const std::vector<Rational>& b);
    static PolyMap constant(std::size_t source_dim, const std::vector<Rational>& value);

    std::size_t source_dim() const { return source_dim_; }
    std::size_t target_dim() const { return components_.size(); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& component(std::size_t i) const { return components_.at(i); }
    long degree() const;
    bool is_identity() const;
    // jacobian()[i][j] = d phi_i / d y_j
    std::vector<std::vector<Polynomial>> jacobian() const;
    std::vector<Rational> eval(const std::vector<Rational>& point) const;

    friend bool operator==(const PolyMap& a, const PolyMap& b) {
        return a.source_dim_ == b.source_dim_ && a.components_ == b.components_;
    }
    std::string str() const;

private:
    std::size_t source_dim_ = 0;
    std::vector<Polynomial> components_;
};

// g after f
PolyMap compose(const PolyMap& g, const PolyMap& f);

}  // namespace diffcoh
