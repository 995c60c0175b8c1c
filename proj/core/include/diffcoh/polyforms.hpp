#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffcoh/polynomial.hpp"
#include "diffcoh/subspace.hpp"

namespace diffcoh::forms {

// strictly increasing covector indices, 0-based (dx = 0, dy = 1, ...)
using Subset = std::vector<unsigned>;

std::vector<Subset> subsets(std::size_t n, std::size_t k);  // lexicographic

// A k-form on R^n with polynomial coefficients of total degree <= bound.
// A negative bound means the form space is zero.
class PolyForm {
public:
    PolyForm(std::size_t n, std::size_t k, long bound);

    static PolyForm function(const Polynomial& f, long bound);
    static PolyForm function(const Polynomial& f) { return function(f, f.degree() < 0 ? 0 : f.degree()); }
    static PolyForm dx(std::size_t n, std::size_t i, long bound = 0);

    std::size_t ambient_dim() const { return n_; }
    std::size_t degree() const { return k_; }
    long bound() const { return bound_; }
    const std::map<std::pair<Monomial, Subset>, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long max_coeff_degree() const;  // -1 for the zero form
    Polynomial coefficient(const Subset& s) const;

    // throws BudgetOverflow past the bound, ShapeMismatch on a malformed subset
    void add_term(const Monomial& m, const Subset& s, const Rational& c);
    // same terms, new bound; BudgetOverflow if they do not fit
    PolyForm with_bound(long bound) const;

    PolyForm operator+(const PolyForm& o) const;
    PolyForm operator-(const PolyForm& o) const;
    PolyForm operator*(const Rational& c) const;
    PolyForm operator-() const { return *this * Rational(-1); }
    // equal terms; the bound is bookkeeping and not compared
    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    std::size_t n_, k_;
    long bound_;
    std::map<std::pair<Monomial, Subset>, Rational> terms_;
};

PolyForm exterior_d(const PolyForm& f);
// default output bound: bound * deg(phi) + k * (deg(phi) - 1)
PolyForm pullback(const PolyMap& phi, const PolyForm& f, std::optional<long> out_bound = std::nullopt);
// default output bound: the sum of the bounds
PolyForm wedge(const PolyForm& f, const PolyForm& g, std::optional<long> out_bound = std::nullopt);
// radial homotopy operator; h(x^a dx_I) = 1/(|a|+k) sum_r (-1)^r x^a x_{I_r} dx_{I - I_r}; zero on 0-forms.
// default output bound: bound + 1
PolyForm poincare_h(const PolyForm& f, std::optional<long> out_bound = std::nullopt);
// Maurer-Cartan form of R, dt on R^1
PolyForm mc_R();

// How coefficient budgets vary with form degree.
//   Uniform: every j-form has coefficients of degree <= D.
//   Weight:  j-forms have coefficients of degree <= D - j, preserved by d, h and affine pullback.
enum class Grading { Uniform, Weight };

struct Budget {
    long D = 0;
    Grading grading = Grading::Uniform;
    long bound(std::size_t form_degree) const {
        return grading == Grading::Uniform ? D : D - long(form_degree);
    }
};

std::string to_string(Grading g);

// Finite-dimensional model of Omega^k(R^n): monomials of degree <= bound times k-subsets,
// ordered monomial-major. dim = C(n,k) C(n+bound, bound).
class FormSpace {
public:
    FormSpace() : FormSpace(0, 0, -1) {}
    FormSpace(std::size_t n, std::size_t k, long bound);

    std::size_t ambient_dim() const { return n_; }
    std::size_t degree() const { return k_; }
    long bound() const { return bound_; }
    std::size_t dim() const { return monos_.size() * subs_.size(); }
    const std::vector<Monomial>& monomials() const { return monos_; }
    const std::vector<Subset>& covectors() const { return subs_; }

    std::optional<std::size_t> index(const Monomial& m, const Subset& s) const;
    PolyForm basis_form(std::size_t i) const;
    // BudgetOverflow if f does not fit
    SparseVector to_sparse(const PolyForm& f) const;
    Vector to_vector(const PolyForm& f) const { return to_sparse(f).to_dense(dim()); }
    PolyForm from_vector(const Vector& v) const;
    PolyForm from_sparse(const SparseVector& v) const;

    // images of the basis forms, written as the columns of a matrix into tgt
    Matrix matrix_of(const FormSpace& tgt, const std::function<PolyForm(const PolyForm&)>& op) const;

private:
    std::size_t n_, k_;
    long bound_;
    std::vector<Monomial> monos_;
    std::vector<Subset> subs_;
    std::map<Monomial, std::size_t> mono_index_;
    std::map<Subset, std::size_t> sub_index_;
};

Matrix d_matrix(const FormSpace& src, const FormSpace& tgt);
Matrix h_matrix(const FormSpace& src, const FormSpace& tgt);
// src lives on the target of phi, tgt on its source
Matrix pullback_matrix(const PolyMap& phi, const FormSpace& src, const FormSpace& tgt);

enum class SheafKind { R, Rdelta, Omega, OmegaCl };

struct SheafSpec {
    SheafKind kind = SheafKind::R;
    std::size_t k = 0;  // form degree for Omega and OmegaCl
    // "R", "Rdelta", "Omega 2", "OmegaCl 1"; ParseError otherwise
    static SheafSpec parse(const std::string& s);
    std::string str() const;
    std::size_t form_degree() const { return kind == SheafKind::Omega || kind == SheafKind::OmegaCl ? k : 0; }
};

// sections inside the ambient budgeted form space
struct SheafValue {
    FormSpace ambient;
    LinearSubspace sections;
    std::size_t dim() const { return sections.dim(); }
};

// constants for Rdelta (R^n is connected); kernel of d for OmegaCl
SheafValue eval_sheaf(const SheafSpec& s, std::size_t n, long bound);
SheafValue eval_sheaf(const SheafSpec& s, std::size_t n, const Budget& b);

// de Rham cohomology of the budgeted complex Omega^0 -> ... -> Omega^n on R^n. A degree is
// stable when budgets D and D+1 give the same answer.
struct WindowedDims {
    std::vector<std::size_t> dims;
    std::vector<bool> stable;
};
WindowedDims derham_cohomology(std::size_t n, const Budget& b);

}  // namespace diffcoh::forms
