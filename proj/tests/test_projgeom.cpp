#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quartica/projgeom.hpp"
#include "test_util.hpp"

using namespace quartica;
using namespace quartica::testutil;

namespace {

FieldElement fe(const TowerPtr& t, long num, long den = 1) {
    return FieldElement(t, Rational(num, den));
}

} // namespace

TEST_CASE("normalization and equality") {
    auto t = q_i();
    auto i = FieldElement::generator(t, "i");
    ProjPoint p(i * Rational(2), fe(t, 2), fe(t, 0));
    ProjPoint q(fe(t, 1), -i, fe(t, 0));
    CHECK(p == q);
    CHECK_THROWS_AS(ProjPoint(fe(t, 0), fe(t, 0), fe(t, 0)), DegenerateInput);
}

TEST_CASE("duality") {
    auto t = q_i();
    auto i = FieldElement::generator(t, "i");
    ProjPoint p(i, fe(t, 1), fe(t, -1));
    CHECK(dualize(dualize(p)) == p);

    std::mt19937 rng(5);
    for (int n = 0; n < 50; ++n) {
        auto a = random_element(t, rng);
        auto b = random_element(t, rng);
        auto c = random_element(t, rng);
        auto d = random_element(t, rng);
        if ((a.is_zero() && b.is_zero() && c.is_zero()) || d.is_zero()) continue;
        ProjPoint pt(a, b, c);
        ProjLine ln(d, random_element(t, rng), random_element(t, rng));
        // incidence is preserved: P on L iff D(P) passes through D(L)
        bool on = ln.contains(pt);
        bool dual_on = dualize(pt).contains(dualize(ln));
        CHECK(on == dual_on);
    }
}

TEST_CASE("meet and join") {
    auto t = q_i_r2();
    auto one = fe(t, 1);
    auto zero = fe(t, 0);
    ProjLine x_axis(one, zero, zero);
    ProjLine y_axis(zero, one, zero);
    CHECK(meet(x_axis, y_axis) == ProjPoint(zero, zero, one));
    CHECK_THROWS_AS(meet(x_axis, x_axis), IdenticalInputs);

    auto i = FieldElement::generator(t, "i");
    auto r2 = FieldElement::generator(t, "r2");
    auto eps = (one + i) * r2 / Rational(2);
    // two linear factors of x^4 + y^4 meet at the coordinate point
    ProjLine f1(one, -eps, zero);
    ProjLine f2(one, -eps.pow(3), zero);
    CHECK(meet(f1, f2) == ProjPoint(zero, zero, one));

    ProjPoint a(one, eps, zero), b(one, eps.pow(3), zero);
    CHECK(join(a, b) == ProjLine(zero, zero, one));
    CHECK_THROWS_AS(join(a, a), IdenticalInputs);
}

TEST_CASE("cross-ratio") {
    auto t = q_i();
    auto one = fe(t, 1);
    auto zero = fe(t, 0);
    auto i = FieldElement::generator(t, "i");

    // affine parameters 0, 1, 2, infinity on a line: CR = 2/(2-1) = 2
    ProjPoint p0(one, zero, zero), p1(one, one, zero), p2(one, fe(t, 2), zero), pinf(zero, one, zero);
    CHECK(cross_ratio(p0, p1, p2, pinf) == fe(t, 2));

    // 1, -1, i, -i are a harmonic four
    ProjPoint a(one, one, zero), b(one, -one, zero), c(one, i, zero), d(one, -i, zero);
    CHECK(cross_ratio(a, b, c, d) == fe(t, -1));
    CHECK(is_harmonic(a, b, c, d));
    CHECK(is_harmonic(a, c, b, d)); // order-independent

    CHECK_THROWS_AS(cross_ratio(a, a, c, d), NotDistinct);
    ProjPoint off(one, one, one);
    CHECK_THROWS_AS(cross_ratio(a, b, c, off), NotCollinear);
}

TEST_CASE("cross-ratio is chart independent") {
    auto t = q_i();
    std::mt19937 rng(17);
    int done = 0;
    while (done < 40) {
        auto la = random_element(t, rng);
        auto lb = random_element(t, rng);
        auto lc = random_element(t, rng);
        if (la.is_zero() && lb.is_zero() && lc.is_zero()) continue;
        ProjLine l(la, lb, lc);
        // four distinct points s*A + B on two independent points of the line
        std::vector<ProjPoint> pts;
        Triple coords = l.coeffs();
        int k = !coords[0].is_zero() ? 0 : (!coords[1].is_zero() ? 1 : 2);
        int u = (k == 0) ? 1 : 0;
        int v = (k == 2) ? 1 : 2;
        auto zero = fe(t, 0);
        Triple A{zero, zero, zero}, B{zero, zero, zero};
        A[u] = coords[k];
        A[k] = -coords[u];
        B[v] = coords[k];
        B[k] = -coords[v];
        std::set<FieldElement> seen;
        while (pts.size() < 4) {
            auto s = random_element(t, rng, 4);
            if (seen.count(s)) continue;
            seen.insert(s);
            pts.emplace_back(A[0] * s + B[0], A[1] * s + B[1], A[2] * s + B[2]);
        }
        if (pts[0] == pts[1] || pts[0] == pts[2] || pts[0] == pts[3] || pts[1] == pts[2] ||
            pts[1] == pts[3] || pts[2] == pts[3])
            continue;
        auto cr1 = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
        auto cr2 = cross_ratio_second_chart(pts[0], pts[1], pts[2], pts[3]);
        REQUIRE(cr1 == cr2);
        ++done;
    }
}

TEST_CASE("line census") {
    auto t = q();
    auto one = fe(t, 1);
    auto zero = fe(t, 0);
    // three concurrent lines: one triple point, no doubles
    std::vector<ProjLine> concurrent{ProjLine(one, zero, zero), ProjLine(zero, one, zero),
                                     ProjLine(one, one, zero)};
    auto census = line_census(concurrent);
    CHECK(census.t_vector == std::vector<long>{0, 1});
    CHECK(census.points_of_multiplicity(3).size() == 1);
    CHECK(census.points_of_multiplicity(3)[0] == ProjPoint(zero, zero, one));

    // generic triangle
    std::vector<ProjLine> triangle{ProjLine(one, zero, zero), ProjLine(zero, one, zero),
                                   ProjLine(zero, zero, one)};
    CHECK(line_census(triangle).t_vector == std::vector<long>{3});

    CHECK_THROWS_AS(line_census({ProjLine(one, zero, zero), ProjLine(one * Rational(2), zero, zero)}),
                    DegenerateInput);
}

TEST_CASE("conic basics") {
    auto t = q_i();
    auto one = fe(t, 1);
    auto zero = fe(t, 0);
    // x^2 + y^2 + z^2 is smooth
    Conic fermat({one, zero, zero, one, zero, one});
    CHECK(fermat.gram_rank() == 3);
    CHECK(fermat.is_reduced());
    // x^2 - y^2 = (x-y)(x+y): rank 2
    Conic pair({one, zero, zero, -one, zero, zero});
    CHECK(pair.gram_rank() == 2);
    // x^2: double line, rank 1
    Conic dbl({one, zero, zero, zero, zero, zero});
    CHECK(dbl.gram_rank() == 1);
    CHECK(!dbl.is_reduced());

    auto i = FieldElement::generator(t, "i");
    CHECK(fermat.eval(ProjPoint(zero, one, i)).is_zero());
}
