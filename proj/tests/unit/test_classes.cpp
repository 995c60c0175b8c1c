#include "doctest.h"

#include "diffcoh/classes.hpp"
#include "diffcoh/errors.hpp"
#include "oracles.hpp"

using namespace diffcoh;
using namespace diffcoh::plotdiag;
using forms::PolyForm;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial cst(std::size_t n, long c) { return Polynomial::constant(n, Rational(c)); }

std::vector<PolyForm> everywhere(const PlotDiagram& d, const PolyForm& f) {
    return std::vector<PolyForm>(d.objects().size(), f);
}

PlotDiagram plane() {
    PlotDiagram d;
    d.add_object("U", 2);
    return d;
}

PolyForm dxdy() {
    PolyForm f(2, 2, 0);
    f.add_term(Monomial(2, 0), {0, 1}, Rational(1));
    return f;
}

std::vector<std::vector<int>> torus_facets() {
    std::vector<std::vector<int>> f;
    auto v = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3; };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            f.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
            f.push_back({v(i, j), v(i, j + 1), v(i + 1, j + 1)});
        }
    return f;
}

}  // namespace

TEST_CASE("quotients") {
    Matrix z = Matrix::from_ints({{1, 0, 0}, {0, 1, 0}});
    Matrix b = Matrix::from_ints({{1, 1, 0}});
    Quotient q("Q", LinearSubspace::span(z), LinearSubspace::span(b));
    CHECK(q.dim() == 1);
    Vector e0{Rational(1), Rational(0), Rational(0)}, e1{Rational(0), Rational(1), Rational(0)};
    auto c0 = q.coordinates(e0), c1 = q.coordinates(e1);
    CHECK(c0[0] == -c1[0]);
    CHECK_THROWS_AS(q.coordinates(Vector{Rational(0), Rational(0), Rational(1)}), SubspaceNotContained);
    CHECK_THROWS_AS(Quotient("bad", LinearSubspace::span(b), LinearSubspace::span(z)), InvalidComplex);
}

TEST_CASE("degree 1 sequence on the presets") {
    struct Case {
        Preset p;
        std::vector<std::vector<int>> facets;
    };
    std::vector<Case> cases{{Preset::interval_2chart, {{0, 1}}},
                            {Preset::circle_3arc, {{0, 1}, {1, 2}, {2, 0}}},
                            {Preset::torus_9patch, torus_facets()}};
    for (const auto& cs : cases) {
        auto d = good_cover_diagram(cs.p);
        auto betti = oracle::simplicial_cohomology(cs.facets, 2);
        for (long D : {2L, 3L}) {
            auto r = exact_sequence_report(d, 1, D);
            CAPTURE(to_string(cs.p));
            CAPTURE(D);
            REQUIRE(r.terms.size() == 5);
            for (const auto& t : r.terms) {
                CAPTURE(t.term);
                CHECK(t.well_defined);
                CHECK(t.exact);
            }
            CHECK(r.ok());
            // de Rham and Cech agree on these covers, so theta is onto and alpha vanishes
            CHECK(r.terms[0].dim == betti[1]);
            CHECK(r.terms[1].dim == betti[1]);
            CHECK(r.terms[3].dim == betti[2]);
            CHECK(r.terms[4].dim == betti[2]);
            CHECK(r.terms[1].im_dim == betti[1]);
        }
    }
}

TEST_CASE("degree 2 sequence") {
    auto d = good_cover_diagram(Preset::torus_9patch);
    auto r = exact_sequence_report(d, 2, 3);
    REQUIRE(r.terms.size() == 4);
    CHECK(r.ok());
    CHECK(r.terms[0].dim == 1);
    auto c = exact_sequence_report(good_cover_diagram(Preset::circle_3arc), 2, 3);
    CHECK(c.ok());
}

TEST_CASE("theta") {
    auto circle = good_cover_diagram(Preset::circle_3arc);
    auto zero = class_map_theta(circle, everywhere(circle, PolyForm(1, 1, 1)), 2);
    CHECK(zero.is_zero());

    auto gen = class_map_theta(circle, everywhere(circle, PolyForm::dx(1, 0)), 2);
    REQUIRE(gen.coordinates.size() == 1);
    CHECK_FALSE(gen.is_zero());
    // the explicit primitives x + c_o give the same class
    std::vector<Polynomial> a;
    for (std::size_t o = 0; o < 6; ++o) a.push_back(var(1, 0) + cst(1, long(3 * o)));
    auto same = class_map_theta(circle, everywhere(circle, PolyForm::dx(1, 0)), a, 2);
    CHECK(same.coordinates == gen.coordinates);
    // and it is the class of the transition constant 1 on the seam
    auto rq = rdelta_quotient(circle, 1);
    Vector seam(nerve_chains(circle, 1).size(), Rational(0));
    auto chains = nerve_chains(circle, 1);
    for (std::size_t i = 0; i < chains.size(); ++i)
        if (circle.morphism(chains[i].maps[0]).id == "O20>A0") seam[i] = Rational(1);
    CHECK(rq.coordinates(seam) == gen.coordinates);

    // globally exact forms go to zero
    auto interval = good_cover_diagram(Preset::interval_2chart);
    auto ex = class_map_theta(interval, everywhere(interval, forms::exterior_d(PolyForm::function(var(1, 0) * var(1, 0)))), 3);
    CHECK(ex.is_zero());

    std::vector<Polynomial> wrong(6, var(1, 0) * var(1, 0));
    CHECK_THROWS_AS(class_map_theta(circle, everywhere(circle, PolyForm::dx(1, 0)), wrong, 2), InvalidParameters);
    PolyForm xdx(1, 1, 1);
    xdx.add_term(Monomial{1}, {0}, Rational(1));
    CHECK_THROWS_AS(class_map_theta(circle, everywhere(circle, xdx), 2), NotGlobal);
    std::vector<Polynomial> big(6, var(1, 0));
    big[0] = big[0] + var(1, 0) * var(1, 0) * var(1, 0) - var(1, 0) * var(1, 0) * var(1, 0);
    CHECK_THROWS_AS(class_map_theta(circle, everywhere(circle, PolyForm::dx(1, 0)), a, 0), BudgetOverflow);
}

TEST_CASE("alpha and beta") {
    auto circle = good_cover_diagram(Preset::circle_3arc);
    auto z = class_map_alpha(circle, zero_gerbe(circle, 1, 2), 2);
    CHECK(z.curvature.is_zero());
    CHECK(z.bundle.is_zero());
    CHECK(z.pair.is_zero());
    CHECK(class_map_beta(z).is_zero());

    std::vector<std::vector<PolyForm>> x{{}};
    for (std::size_t o = 0; o < 6; ++o) x[0].push_back(PolyForm::function(var(1, 0) * var(1, 0) + cst(1, long(o)), 2));
    auto cob = class_map_alpha(circle, gerbe_boundary(circle, 1, x), 2);
    CHECK(cob.bundle.is_zero());
    CHECK(cob.pair.is_zero());

    // flat bundle with transition constant c: g = c on the seam is delta of c x, so the class in
    // H^1(R) vanishes; its class in H^1(R^delta) is c times the generator
    GerbeData flat = zero_gerbe(circle, 1, 2);
    auto chains = nerve_chains(circle, 1);
    for (std::size_t i = 0; i < chains.size(); ++i)
        if (circle.morphism(chains[i].maps[0]).id == "O20>A0") flat.components[1][i] = PolyForm::function(cst(1, -4), 0);
    auto fa = class_map_alpha(circle, flat, 2);
    CHECK(fa.curvature.is_zero());
    CHECK(fa.bundle.is_zero());
    CHECK(class_map_beta(fa).is_zero());

    // a connection with curvature is not flat
    auto pl = plane();
    PolyForm xdy(2, 1, 1);
    xdy.add_term(Monomial{1, 0}, {1}, Rational(1));
    GerbeData curved{1, {{xdy}, {}}};
    CHECK(check_gerbe(pl, curved));
    CHECK_THROWS_AS(class_map_alpha(pl, curved, 3), NotFlat);
    GerbeData broken = flat;
    broken.components[0][0] = PolyForm::dx(1, 0);
    CHECK_THROWS_AS(class_map_alpha(circle, broken, 2), InvalidComplex);
}

TEST_CASE("gamma") {
    auto torus = good_cover_diagram(Preset::torus_9patch);
    CHECK(class_map_gamma(torus, everywhere(torus, PolyForm(2, 2, 0)), 2).is_zero());
    auto c = class_map_gamma(torus, everywhere(torus, dxdy()), 2);
    CHECK_FALSE(c.is_zero());

    // on a single chart every closed 2-form is exact
    auto pl = plane();
    CHECK(class_map_gamma(pl, {dxdy()}, 2).is_zero());

    PolyForm x_dxdy(2, 2, 1);
    x_dxdy.add_term(Monomial{1, 0}, {0, 1}, Rational(1));
    CHECK_THROWS_AS(class_map_gamma(torus, everywhere(torus, x_dxdy), 3), NotGlobal);
    PolyForm xdy(2, 1, 1);
    xdy.add_term(Monomial{1, 0}, {1}, Rational(1));
    CHECK_THROWS_AS(class_map_gamma(pl, {xdy}, 3), NotClosed);
}

TEST_CASE("curvature uniqueness") {
    auto circle = good_cover_diagram(Preset::circle_3arc);
    auto g = zero_cocycle(circle);
    g.g[*circle.find_morphism("O20>A0")] = cst(1, 1);
    ConnectionData A{everywhere(circle, PolyForm::dx(1, 0))};
    ConnectionData A2{everywhere(circle, PolyForm::dx(1, 0) * Rational(3))};
    CHECK(check_curvature_uniqueness(circle, g, A, A2));

    auto pl = plane();
    PolyForm xdy(2, 1, 1);
    xdy.add_term(Monomial{1, 0}, {1}, Rational(1));
    CHECK(check_curvature_uniqueness(pl, zero_cocycle(pl), {{xdy}}, {{PolyForm(2, 1, 0)}}));

    PolyForm xdx(1, 1, 1);
    xdx.add_term(Monomial{1}, {0}, Rational(1));
    auto r = check_curvature_uniqueness(circle, g, A, {everywhere(circle, xdx)});
    CHECK_FALSE(r.ok);
    CHECK(r.violation.find("second connection") != std::string::npos);
}
