#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quartica/multipoly.hpp"
#include "test_util.hpp"

using namespace quartica;
using namespace quartica::testutil;

namespace {

MultiPoly fermat_quartic(const TowerPtr& t) {
    auto x = MultiPoly::variable(t, Var::X);
    auto y = MultiPoly::variable(t, Var::Y);
    auto z = MultiPoly::variable(t, Var::Z);
    return x.pow(4) + y.pow(4) + z.pow(4);
}

MultiPoly kk_quartic(const TowerPtr& t) {
    auto x = MultiPoly::variable(t, Var::X);
    auto y = MultiPoly::variable(t, Var::Y);
    auto z = MultiPoly::variable(t, Var::Z);
    auto x2 = x * x, y2 = y * y, z2 = z * z;
    return x.pow(4) + y.pow(4) + z.pow(4) + (x2 * y2 + x2 * z2 + y2 * z2) * Rational(3);
}

UniPoly uni(const TowerPtr& t, std::vector<long> coeffs) {
    std::vector<FieldElement> c;
    for (long v : coeffs) c.emplace_back(t, Rational(v));
    return UniPoly(t, std::move(c));
}

FieldElement eps8(const TowerPtr& t) {
    auto i = FieldElement::generator(t, "i");
    auto r2 = FieldElement::generator(t, "r2");
    return (FieldElement::one(t) + i) * r2 / Rational(2);
}

std::mt19937 rng(2024);

UniPoly random_unipoly(const TowerPtr& t, int deg, int bound = 4) {
    std::vector<FieldElement> c;
    for (int k = 0; k <= deg; ++k) c.push_back(random_element(t, rng, bound));
    if (c.back().is_zero()) c.back() = FieldElement::one(t);
    return UniPoly(t, std::move(c));
}

} // namespace

TEST_CASE("evaluation") {
    auto t = q_i();
    auto i = FieldElement::generator(t, "i");
    auto F = fermat_quartic(t);
    auto K = kk_quartic(t);
    Triple pk1{i, FieldElement::one(t), -FieldElement::one(t)};
    CHECK(F.eval(pk1) == FieldElement(t, Rational(3)));
    CHECK(K.eval(pk1).is_zero());

    auto t8 = q_i_r2();
    auto e = eps8(t8);
    CHECK(fermat_quartic(t8).eval(Triple{FieldElement::zero(t8), FieldElement::one(t8), e}).is_zero());
}

TEST_CASE("printing uses graded lex with x > y > z") {
    auto t = q();
    CHECK(fermat_quartic(t).str() == "x^4 + y^4 + z^4");
}

TEST_CASE("derivatives and the Hessian determinant") {
    auto t = q();
    auto F = fermat_quartic(t);
    auto x = MultiPoly::variable(t, Var::X);
    CHECK(F.derivative(Var::X) == x.pow(3) * Rational(4));
    CHECK(MultiPoly::variable(t, Var::Z).pow(2).derivative(Var::Y).is_zero());

    // independent 3x3 determinant expansion of the matrix of second partials
    std::array<std::array<MultiPoly, 3>, 3> h{{{F.derivative(Var::X).derivative(Var::X),
                                                F.derivative(Var::X).derivative(Var::Y),
                                                F.derivative(Var::X).derivative(Var::Z)},
                                               {F.derivative(Var::Y).derivative(Var::X),
                                                F.derivative(Var::Y).derivative(Var::Y),
                                                F.derivative(Var::Y).derivative(Var::Z)},
                                               {F.derivative(Var::Z).derivative(Var::X),
                                                F.derivative(Var::Z).derivative(Var::Y),
                                                F.derivative(Var::Z).derivative(Var::Z)}}};
    MultiPoly det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                    h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                    h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    auto xyz = MultiPoly::variable(t, Var::X) * MultiPoly::variable(t, Var::Y) *
               MultiPoly::variable(t, Var::Z);
    CHECK(det == xyz.pow(2) * Rational(1728));
}

TEST_CASE("restriction to a line") {
    auto t = q_i_r2();
    auto F = fermat_quartic(t);
    auto e = eps8(t);
    auto one = FieldElement::one(t);
    auto zero = FieldElement::zero(t);

    // x = eps*y: the section is a perfect 4th power supported at (eps:1:0)
    auto sec = restrict_to_line(F, ProjLine(one, -e, zero));
    CHECK(sec.full_degree == 4);
    if (sec.poly.degree() == 0) {
        CHECK(sec.multiplicity_at_infinity() == 4);
        CHECK(sec.point_at_infinity() == ProjPoint(e, one, zero));
    } else {
        auto dec = squarefree_decomposition(sec.poly);
        REQUIRE(dec.size() == 1);
        CHECK(dec[0].second == 4);
        CHECK(dec[0].first.degree() == 1);
        CHECK(sec.point_at(-dec[0].first.coeff(0)) == ProjPoint(e, one, zero));
    }

    // z = 0: four simple points
    auto sec2 = restrict_to_line(F, ProjLine(zero, zero, one));
    CHECK(sec2.poly.degree() == 4);
    CHECK(gcd(sec2.poly, sec2.poly.derivative()).degree() == 0);
    auto roots = roots_structured(sec2.poly);
    CHECK(roots.complete);
    CHECK(roots.roots.size() == 4);

    CHECK_THROWS_AS(restrict_to_line(MultiPoly::variable(t, Var::X) + MultiPoly::constant(t, Rational(1)),
                                     ProjLine(zero, zero, one)),
                    NotHomogeneous);
}

TEST_CASE("exact division") {
    auto t = q_i();
    std::mt19937 local(9);
    for (int n = 0; n < 50; ++n) {
        MultiPoly a(t), b(t);
        for (int k = 0; k < 4; ++k) {
            a.add_term({{int(local() % 3), int(local() % 3), int(local() % 3)}},
                       random_element(t, local, 3));
            b.add_term({{int(local() % 2), int(local() % 2), int(local() % 2)}},
                       random_element(t, local, 3));
        }
        if (a.is_zero() || b.is_zero()) continue;
        auto q = (a * b).exact_divide(b);
        REQUIRE(q);
        REQUIRE(*q == a);
    }
    auto x = MultiPoly::variable(t, Var::X);
    auto y = MultiPoly::variable(t, Var::Y);
    CHECK(!(x * x + y).exact_divide(y + MultiPoly::constant(t, Rational(1))).has_value());
}

TEST_CASE("resultants") {
    auto t = q_i();
    auto a = random_element(t, rng), b = random_element(t, rng);
    UniPoly f(t, {-a, FieldElement::one(t)});
    UniPoly g(t, {-b, FieldElement::one(t)});
    CHECK(resultant(f, g) == a - b);
    CHECK_THROWS_AS(resultant(UniPoly::constant(a), g), DegenerateInput);

    // Res_z(F, xyz) = (xy)^4 (x^4 + y^4)
    auto F = fermat_quartic(t);
    auto x = MultiPoly::variable(t, Var::X);
    auto y = MultiPoly::variable(t, Var::Y);
    auto z = MultiPoly::variable(t, Var::Z);
    auto res = resultant(F, x * y * z, Var::Z);
    CHECK(res == (x * y).pow(4) * (x.pow(4) + y.pow(4)));

    // identically zero iff common factor in the variable
    auto shared = resultant(z * x + y * z, z * y + x * z, Var::Z);
    CHECK(shared.is_zero());
}

TEST_CASE("resultant multiplicativity on random inputs") {
    auto t = q_i();
    int done = 0;
    while (done < 500) {
        UniPoly f = random_unipoly(t, 1 + int(rng() % 3), 3);
        UniPoly g = random_unipoly(t, 1 + int(rng() % 2), 3);
        UniPoly h = random_unipoly(t, 1 + int(rng() % 2), 3);
        REQUIRE(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
        ++done;
    }
}

TEST_CASE("resultant detects common factors on random inputs") {
    auto t = q_i();
    for (int n = 0; n < 100; ++n) {
        UniPoly f = random_unipoly(t, 1 + int(rng() % 3), 3);
        UniPoly g = random_unipoly(t, 1 + int(rng() % 3), 3);
        bool share = gcd(f, g).degree() > 0;
        CHECK(resultant(f, g).is_zero() == share);
        UniPoly common = random_unipoly(t, 1, 3);
        CHECK(resultant(f * common, g * common).is_zero());
    }
}

TEST_CASE("squarefree decomposition") {
    auto t = q();
    // (t-1)^2 (t+2)
    auto p = uni(t, {-1, 1}) * uni(t, {-1, 1}) * uni(t, {2, 1});
    auto dec = squarefree_decomposition(p);
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].second == 1);
    CHECK(dec[0].first == uni(t, {2, 1}));
    CHECK(dec[1].second == 2);
    CHECK(dec[1].first == uni(t, {-1, 1}));

    auto sq = squarefree_decomposition(uni(t, {1, 0, 0, 0, 1}));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].second == 1);
    CHECK(sq[0].first.degree() == 4);
}

TEST_CASE("squarefree reassembly on random inputs") {
    auto t = q_i();
    int done = 0;
    while (done < 500) {
        UniPoly p = random_unipoly(t, 1 + int(rng() % 2), 2);
        UniPoly q = random_unipoly(t, 1 + int(rng() % 2), 2);
        int e = 1 + int(rng() % 3);
        UniPoly prod = p;
        for (int k = 0; k < e; ++k) prod = prod * q;
        auto dec = squarefree_decomposition(prod);
        UniPoly re = UniPoly::constant(FieldElement::one(t));
        for (const auto& [f, m] : dec)
            for (int k = 0; k < m; ++k) re = re * f;
        REQUIRE(re.proportional_to(prod));
        ++done;
    }
}

TEST_CASE("vanishing order") {
    auto t = q_i();
    auto i = FieldElement::generator(t, "i");
    CHECK(vanishing_order(uni(t, {0, 0, 0, 1}), FieldElement::zero(t)) == 3);
    // (t - i)^2 (t + 1)
    UniPoly ti(t, {-i, FieldElement::one(t)});
    UniPoly p = ti * ti * uni(t, {1, 1});
    CHECK(vanishing_order(p, i) == 2);
    CHECK(vanishing_order(p, FieldElement::one(t)) == 0);
    CHECK_THROWS_AS(vanishing_order(UniPoly(t), i), ZeroPolynomial);

    // order(p * (t-r)^k, r) = order(p, r) + k
    for (int n = 0; n < 50; ++n) {
        UniPoly f = random_unipoly(t, int(rng() % 4), 3);
        if (f.is_zero()) continue;
        auto r = random_element(t, rng, 3);
        int k = int(rng() % 3);
        UniPoly lin(t, {-r, FieldElement::one(t)});
        UniPoly g = f;
        for (int j = 0; j < k; ++j) g = g * lin;
        CHECK(vanishing_order(g, r) == vanishing_order(f, r) + k);
    }
}

TEST_CASE("structured roots") {
    auto ti = q_i();
    auto i = FieldElement::generator(ti, "i");
    auto r = roots_structured(uni(ti, {1, 0, 1}));
    REQUIRE(r.complete);
    REQUIRE(r.roots.size() == 2);
    CHECK(((r.roots[0].first == i && r.roots[1].first == -i) ||
           (r.roots[0].first == -i && r.roots[1].first == i)));

    auto t8 = q_i_r2_q2();
    auto q2 = FieldElement::generator(t8, "q2");
    auto i8 = FieldElement::generator(t8, "i");
    auto quartic = roots_structured(uni(t8, {-2, 0, 0, 0, 1}));
    REQUIRE(quartic.complete);
    REQUIRE(quartic.roots.size() == 4);
    std::set<FieldElement> roots;
    for (auto& [root, m] : quartic.roots) {
        CHECK(m == 1);
        roots.insert(root);
    }
    CHECK(roots.count(q2));
    CHECK(roots.count(-q2));
    CHECK(roots.count(i8 * q2));
    CHECK(roots.count(-(i8 * q2)));

    auto small = roots_structured(uni(ti, {-5, 0, 1}));
    CHECK(!small.complete);
    CHECK(small.roots.empty());

    CHECK_THROWS_AS(roots_structured(uni(ti, {1, 0, 0, 0, 0, 1})), DegenerateInput);
}

TEST_CASE("linear substitution") {
    auto t = q_i();
    auto one = FieldElement::one(t);
    auto zero = FieldElement::zero(t);
    auto F = fermat_quartic(t);
    // swapping x and y fixes the Fermat quartic
    std::array<std::array<FieldElement, 3>, 3> swap_xy{{{zero, one, zero},
                                                        {one, zero, zero},
                                                        {zero, zero, one}}};
    CHECK(F.substitute_linear(swap_xy) == F);

    auto x = MultiPoly::variable(t, Var::X);
    auto y = MultiPoly::variable(t, Var::Y);
    std::array<std::array<FieldElement, 3>, 3> shear{{{one, one, zero},
                                                      {zero, one, zero},
                                                      {zero, zero, one}}};
    CHECK(x.pow(2).substitute_linear(shear) == (x + y) * (x + y));
}
