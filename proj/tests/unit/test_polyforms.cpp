#include "doctest.h"

#include "diffcoh/errors.hpp"
#include "diffcoh/polyforms.hpp"
#include "diffcoh/random.hpp"
#include "oracles.hpp"

using namespace diffcoh;
using namespace diffcoh::forms;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial cst(std::size_t n, long c) { return Polynomial::constant(n, c); }

PolyForm term(std::size_t n, const Polynomial& p, const Subset& s, long bound) {
    PolyForm f(n, s.size(), bound);
    for (const auto& [m, c] : p.terms()) f.add_term(m, s, c);
    return f;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    Polynomial x = var(2, 0), y = var(2, 1);
    Polynomial p = x * x * y + cst(2, 3);
    CHECK(p.degree() == 3);
    CHECK(p.derivative(0) == x * y * Rational(2));
    CHECK(p.derivative(1) == x * x);
    CHECK(p.eval({Rational(2), Rational(5)}) == Rational(23));
    CHECK((p - p).is_zero());
    CHECK(Polynomial(2).degree() == -1);
    // substitute x -> t + 1, y -> t^2 in one variable
    Polynomial t = var(1, 0);
    Polynomial q = p.compose({t + cst(1, 1), t * t}, 1);
    CHECK(q == (t + cst(1, 1)) * (t + cst(1, 1)) * t * t + cst(1, 3));
    CHECK(p.str() == "x^2*y + 3");
}

TEST_CASE("polynomial maps compose") {
    PolyMap sq(1, {var(1, 0) * var(1, 0)});
    PolyMap sh = PolyMap::translation({Rational(1)});
    CHECK(compose(sq, sh).component(0) == (var(1, 0) + cst(1, 1)) * (var(1, 0) + cst(1, 1)));
    CHECK(compose(PolyMap::identity(1), sq) == sq);
    CHECK(PolyMap::identity(3).is_identity());
    CHECK_FALSE(sh.is_identity());
    CHECK_THROWS_AS(compose(PolyMap::identity(2), sq), ShapeMismatch);
    PolyMap a = PolyMap::affine(Matrix::from_ints({{1, 2}, {0, 1}}), {Rational(0), Rational(-1)});
    CHECK(a.eval({Rational(1), Rational(1)}) == std::vector<Rational>{Rational(3), Rational(0)});
    CHECK(a.degree() == 1);
}

TEST_CASE("exterior derivative") {
    // d(x dy) = dx ^ dy on R^2
    PolyForm xdy = term(2, var(2, 0), {1}, 1);
    PolyForm expect(2, 2, 1);
    expect.add_term({0, 0}, {0, 1}, 1);
    CHECK(exterior_d(xdy) == expect);
    CHECK(exterior_d(PolyForm::function(cst(2, 7))).is_zero());
    PolyForm f = PolyForm::function(var(2, 0) * var(2, 0) * var(2, 1));
    CHECK_FALSE(exterior_d(f).is_zero());
    CHECK(exterior_d(exterior_d(f)).is_zero());
    // d(y dx) = -dx ^ dy
    CHECK(exterior_d(term(2, var(2, 1), {0}, 1)) == -expect);
}

TEST_CASE("wedge") {
    PolyForm dx = PolyForm::dx(2, 0), dy = PolyForm::dx(2, 1);
    PolyForm one = PolyForm::function(cst(2, 1));
    PolyForm f = term(2, var(2, 0), {1}, 1);
    CHECK(wedge(f, one) == f);
    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(dx, dy) == -wedge(dy, dx));
    CHECK_THROWS_AS(wedge(f, term(2, var(2, 0), {0}, 1), 0), BudgetOverflow);
    rnd::Rng rng(401);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = std::size_t(rng.uniform(1, 3));
        std::size_t a = std::size_t(rng.uniform(0, long(n))), b = std::size_t(rng.uniform(0, long(n - a)));
        PolyForm u = rnd::random_form(rng, n, a, 2), v = rnd::random_form(rng, n, b, 2);
        long s = (a * b) % 2 == 0 ? 1 : -1;
        CHECK(wedge(u, v) == wedge(v, u) * Rational(s));
        // Leibniz
        long sa = a % 2 == 0 ? 1 : -1;
        CHECK(exterior_d(wedge(u, v)) == wedge(exterior_d(u), v) + wedge(u, exterior_d(v)) * Rational(sa));
    }
}

TEST_CASE("pullback") {
    rnd::Rng rng(402);
    PolyForm f = rnd::random_form(rng, 2, 1, 2);
    CHECK(pullback(PolyMap::identity(2), f) == f);
    // t -> t^2 pulls dt back to 2t dt
    PolyMap sq(1, {var(1, 0) * var(1, 0)});
    PolyForm r = pullback(sq, mc_R(), 1);
    CHECK(r == term(1, var(1, 0) * Rational(2), {0}, 1));
    CHECK_THROWS_AS(pullback(sq, mc_R(), 0), BudgetOverflow);
    CHECK(pullback(sq, mc_R()).bound() == 1);
    // g(x, y) = x + y: g^* mc = dx + dy = dg
    PolyMap g(2, {var(2, 0) + var(2, 1)});
    PolyForm lhs = pullback(g, mc_R());
    CHECK(lhs == PolyForm::dx(2, 0) + PolyForm::dx(2, 1));
    CHECK(lhs == exterior_d(PolyForm::function(g.component(0))));
    // 2-form through a linear map picks up the determinant
    PolyMap lin = PolyMap::affine(Matrix::from_ints({{1, 2}, {3, 4}}), {Rational(0), Rational(0)});
    PolyForm area = wedge(PolyForm::dx(2, 0), PolyForm::dx(2, 1));
    CHECK(pullback(lin, area) == area * Rational(-2));
    CHECK_THROWS_AS(pullback(lin, mc_R()), ShapeMismatch);
}

TEST_CASE("pullback commutes with d and respects composition") {
    rnd::Rng rng(403);
    for (int t = 0; t < 40; ++t) {
        std::size_t m = std::size_t(rng.uniform(1, 3)), n = std::size_t(rng.uniform(1, 3));
        std::size_t k = std::size_t(rng.uniform(0, long(n)));
        PolyMap phi = rnd::random_polymap(rng, m, n, 2);
        PolyForm f = rnd::random_form(rng, n, k, 2);
        CHECK(pullback(phi, exterior_d(f)) == exterior_d(pullback(phi, f)));
        PolyMap psi = rnd::random_polymap(rng, std::size_t(rng.uniform(1, 2)), m, 1);
        CHECK(pullback(psi, pullback(phi, f)) == pullback(compose(phi, psi), f, 20));
        // the default bound is always large enough
        CHECK(pullback(phi, f).max_coeff_degree() <= pullback(phi, f).bound());
    }
}

TEST_CASE("Poincare homotopy operator") {
    // h(dx) = x on R^1
    CHECK(poincare_h(mc_R()) == PolyForm::function(var(1, 0)));
    CHECK(poincare_h(PolyForm(2, 1, 0)).is_zero());
    PolyForm ydxdy = term(2, var(2, 1), {0, 1}, 1);
    CHECK(exterior_d(poincare_h(ydxdy)) + poincare_h(exterior_d(ydxdy), 2) == ydxdy);
    CHECK(poincare_h(ydxdy).max_coeff_degree() == 2);
    CHECK_THROWS_AS(poincare_h(ydxdy, 1), BudgetOverflow);
    CHECK_THROWS_AS(poincare_h(PolyForm::function(cst(1, 1))), InvalidParameters);
    rnd::Rng rng(404);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = std::size_t(rng.uniform(1, 3));
        std::size_t k = std::size_t(rng.uniform(1, long(n)));
        PolyForm f = rnd::random_form(rng, n, k, 3);
        PolyForm df = exterior_d(f);
        PolyForm lhs = exterior_d(poincare_h(f));
        if (k < n) lhs = lhs + poincare_h(df);
        CHECK(lhs == f);
    }
    // on functions, h d f = f - f(0)
    for (int t = 0; t < 10; ++t) {
        Polynomial p = rnd::random_polynomial(rng, 2, 3);
        PolyForm f = PolyForm::function(p, 3);
        CHECK(poincare_h(exterior_d(f)) == f - PolyForm::function(cst(2, 1) * p.eval({Rational(0), Rational(0)}), 3));
    }
}

TEST_CASE("form space dimensions") {
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t k = 0; k <= n; ++k)
            for (long D = 0; D <= 4; ++D)
                CHECK(long(FormSpace(n, k, D).dim()) == oracle::binomial(long(n), long(k)) * oracle::binomial(long(n) + D, D));
    CHECK(FormSpace(2, 1, -1).dim() == 0);
    CHECK(FormSpace(1, 2, 3).dim() == 0);
    FormSpace fs(1, 1, 2);
    CHECK(fs.basis_form(0).str() == "dx");
    CHECK(fs.basis_form(2).str() == "x^2 dx");
    rnd::Rng rng(405);
    FormSpace big(3, 2, 3);
    for (int t = 0; t < 10; ++t) {
        PolyForm f = rnd::random_form(rng, 3, 2, 3);
        CHECK(big.from_vector(big.to_vector(f)) == f);
    }
    CHECK_THROWS_AS(FormSpace(1, 0, 1).to_sparse(PolyForm::function(var(1, 0) * var(1, 0))), BudgetOverflow);
}

TEST_CASE("derivative matrix on R^1 with D = 2") {
    Matrix d = d_matrix(FormSpace(1, 0, 2), FormSpace(1, 1, 2));
    CHECK(d == Matrix::from_ints({{0, 1, 0}, {0, 0, 2}, {0, 0, 0}}));
    CHECK(oracle::rank(oracle::to_dense(d)) == 2);
}

TEST_CASE("sheaf evaluation") {
    CHECK(eval_sheaf(SheafSpec::parse("Rdelta"), 2, 0).dim() == 1);
    CHECK(eval_sheaf(SheafSpec::parse("Rdelta"), 2, 5).dim() == 1);
    CHECK(eval_sheaf(SheafSpec::parse("Rdelta"), 0, 3).dim() == 1);
    CHECK(eval_sheaf(SheafSpec::parse("R"), 2, 2).dim() == 6);
    CHECK(eval_sheaf(SheafSpec::parse("Omega 1"), 1, 2).dim() == 3);
    CHECK(eval_sheaf(SheafSpec::parse("Omega 3"), 2, 2).dim() == 0);
    // closed 1-forms on R^2 with affine coefficients: dx, dy, x dx, y dy, y dx + x dy
    SheafValue cl = eval_sheaf(SheafSpec::parse("OmegaCl 1"), 2, 1);
    CHECK(cl.ambient.dim() == 6);
    Matrix d = d_matrix(cl.ambient, FormSpace(2, 2, 1));
    CHECK(cl.dim() == 6 - oracle::rank(oracle::to_dense(d)));
    CHECK(cl.dim() == 5);
    CHECK(SheafSpec::parse("OmegaCl 2").str() == "OmegaCl 2");
    CHECK(SheafSpec::parse("Omega3").k == 3);
    CHECK_THROWS_AS(SheafSpec::parse("Omega"), ParseError);
    CHECK_THROWS_AS(SheafSpec::parse("R 2"), ParseError);
    CHECK_THROWS_AS(SheafSpec::parse("Theta"), ParseError);
    Budget w{4, Grading::Weight};
    CHECK(eval_sheaf(SheafSpec::parse("Omega 2"), 2, w).ambient.bound() == 2);
}

TEST_CASE("algebraic Poincare lemma in the budget window") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (long D = 0; D <= 3; ++D)
            for (std::size_t k = 1; k <= n; ++k) {
                // closed k-forms of degree <= D are d of (k-1)-forms of degree <= D+1
                FormSpace src(n, k, D), prim(n, k - 1, D + 1);
                std::size_t closed = k == n ? src.dim() : src.dim() - oracle::rank(oracle::to_dense(d_matrix(src, FormSpace(n, k + 1, D))));
                Matrix dp = d_matrix(prim, src);
                CHECK(oracle::rank(oracle::to_dense(dp)) == closed);
            }
    // weight grading: exact in positive degrees, R in degree 0, for every D >= n
    for (std::size_t n = 1; n <= 3; ++n) {
        WindowedDims w = derham_cohomology(n, Budget{long(n) + 1, Grading::Weight});
        CHECK(w.dims[0] == 1);
        for (std::size_t j = 1; j <= n; ++j) CHECK(w.dims[j] == 0);
        for (bool s : w.stable) CHECK(s);
        // uniform grading leaves junk on top: the degree-D monomials times the volume form.
        // On R^1 that is one dimension at every D, so the D vs D+1 window cannot see it.
        WindowedDims u = derham_cohomology(n, Budget{2, Grading::Uniform});
        CHECK(long(u.dims[n]) == oracle::binomial(long(n) + 1, 2));
        CHECK(u.stable[n] == (n == 1));
    }
}
