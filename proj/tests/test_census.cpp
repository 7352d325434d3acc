#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quartica/census.hpp"
#include "test_util.hpp"

using namespace quartica;
using namespace quartica::testutil;

namespace {

Conic conic6(const TowerPtr& t, long xx, long xy, long xz, long yy, long yz, long zz) {
    return Conic({FieldElement(t, Rational(xx)), FieldElement(t, Rational(xy)),
                  FieldElement(t, Rational(xz)), FieldElement(t, Rational(yy)),
                  FieldElement(t, Rational(yz)), FieldElement(t, Rational(zz))});
}

// 4x^2 + 11y^2 +- 2yz + 11z^2 and cyclic shifts
std::vector<Conic> kk_six_family(const TowerPtr& t) {
    std::vector<Conic> cs;
    for (long s : {2L, -2L}) {
        cs.push_back(conic6(t, 4, 0, 0, 11, s, 11));
        cs.push_back(conic6(t, 11, 0, s, 4, 0, 11));
        cs.push_back(conic6(t, 11, s, 0, 11, 0, 4));
    }
    return cs;
}

} // namespace

TEST_CASE("pair pattern of two tangent circles") {
    auto t = q_i();
    Conic a = conic6(t, 1, 0, 0, 1, 0, -1);
    Conic b = conic6(t, 1, 0, 0, 1, 0, -4);
    auto pat = conic_pair_pattern(a, b, 1);
    CHECK(pat.mults == std::vector<int>{2, 2});
    // tangency happens at the circular points (1 : +-i : 0)
    auto i = FieldElement::generator(t, "i");
    auto one = FieldElement::one(t), zero = FieldElement::zero(t);
    std::set<ProjPoint> located;
    for (const auto& [p, m] : pat.located) {
        CHECK(m == 2);
        located.insert(p);
    }
    CHECK(located == std::set<ProjPoint>{ProjPoint(one, i, zero), ProjPoint(one, -i, zero)});

    CHECK_THROWS_AS(conic_pair_pattern(a, a, 1), CommonComponent);
}

TEST_CASE("pair pattern of transversal conics") {
    auto t = q_i();
    Conic a = conic6(t, 1, 0, 0, 1, 0, -1);
    Conic b = conic6(t, 1, 0, 0, -1, 0, 0); // x^2 = y^2, a line pair
    auto pat = conic_pair_pattern(a, b, 1);
    CHECK(pat.mults == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("triple coincidence") {
    auto t = q_i();
    // three members of the pencil through (1 : +-i : 0): all contain the
    // circular points
    Conic a = conic6(t, 1, 0, 0, 1, 0, -1);
    Conic b = conic6(t, 1, 0, 0, 1, 0, -4);
    Conic c = conic6(t, 1, 0, 1, 1, 0, 0);
    auto res = triple_coincidence(a, b, c, 1);
    CHECK(res.resolved);
    auto i = FieldElement::generator(t, "i");
    auto one = FieldElement::one(t), zero = FieldElement::zero(t);
    CHECK(std::set<ProjPoint>(res.points.begin(), res.points.end()) ==
          std::set<ProjPoint>{ProjPoint(one, i, zero), ProjPoint(one, -i, zero)});

    // three conics of the six-family share no point
    auto six = kk_six_family(t);
    auto none = triple_coincidence(six[0], six[1], six[2], 1);
    CHECK(none.resolved);
    CHECK(none.points.empty());

    CHECK_THROWS_AS(triple_coincidence(a, b, a, 1), CommonComponent);
}

TEST_CASE("six-conic census has sixty ordinary double points") {
    auto t = q();
    auto six = kk_six_family(t);
    auto census = conic_census(six, {});
    CHECK(census.status == CensusStatus::Conclusive);
    CHECK(census.total == 60);
    CHECK(census.distinct == 60);
    CHECK(census.simple == 60);
    CHECK(census.tangency == 0);
    CHECK(census.quadruple == 0);
    for (const auto& [pair, pat] : census.pairs)
        CHECK(pat.mults == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("census rejects unexplained tangencies") {
    auto t = q_i();
    Conic a = conic6(t, 1, 0, 0, 1, 0, -1);
    Conic b = conic6(t, 1, 0, 0, 1, 0, -4);
    Conic c = conic6(t, 0, 0, 0, 1, 0, -1); // y^2 = z^2
    CHECK_THROWS_AS(conic_census({a, b, c}, {}), UnexplainedCoincidence);
}

TEST_CASE("census explains claimed tangencies") {
    auto t = q_i();
    auto i = FieldElement::generator(t, "i");
    auto one = FieldElement::one(t), zero = FieldElement::zero(t);
    Conic a = conic6(t, 1, 0, 0, 1, 0, -1);
    Conic b = conic6(t, 1, 0, 0, 1, 0, -4);
    Conic c = conic6(t, 0, 0, 0, 1, 0, -1);
    // a is tangent to b at the circular points and to c at (0 : 1 : +-1)
    std::vector<ProjPoint> claims{ProjPoint(one, i, zero), ProjPoint(one, -i, zero),
                                  ProjPoint(zero, one, one), ProjPoint(zero, one, -one)};
    auto census = conic_census({a, b, c}, claims);
    CHECK(census.status == CensusStatus::Conclusive);
    CHECK(census.total == 12);
    CHECK(census.tangency == 4);
    // ledger: four tacnodes of pair-multiplicity 2 each
    CHECK(census.distinct == 12 - 4);
    CHECK(census.simple == census.distinct - 4);
    CHECK(census.pairs.at({0, 1}).mults == std::vector<int>{2, 2});
    CHECK(census.pairs.at({0, 2}).mults == std::vector<int>{2, 2});
    CHECK(census.pairs.at({1, 2}).mults == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("octic membership certificate") {
    auto t = q_i_r2_q2();
    auto x = MultiPoly::variable(t, Var::X);
    auto y = MultiPoly::variable(t, Var::Y);
    auto z = MultiPoly::variable(t, Var::Z);
    auto x4 = x.pow(4), y4 = y.pow(4), z4 = z.pow(4);
    MultiPoly octic = x.pow(8) + y.pow(8) + z.pow(8) +
                      (x4 * y4 + y4 * z4 + z4 * x4) * Rational(5, 2);

    auto i = FieldElement::generator(t, "i");
    auto r2 = FieldElement::generator(t, "r2");
    auto q2 = FieldElement::generator(t, "q2");
    auto eps = (FieldElement::one(t) + i) * r2 / Rational(2);
    auto w = eps * q2; // eps * 2^(1/4)
    auto one = FieldElement::one(t), zero = FieldElement::zero(t);

    std::vector<ProjPoint> pts;
    for (const FieldElement& u : {one, -one, i, -i}) {
        pts.emplace_back(u, w, zero);
        pts.emplace_back(u, zero, w);
        pts.emplace_back(zero, u, w);
        pts.emplace_back(w, u, zero);
        pts.emplace_back(w, zero, u);
        pts.emplace_back(zero, w, u);
    }
    REQUIRE(pts.size() == 24);
    auto cert = octic_membership(pts, octic);
    CHECK(cert.all_on_octic);
    CHECK(cert.all_on_lines);
    CHECK(cert.count_matches);
    CHECK(cert.restrictions_squarefree);
    CHECK(cert.certified());

    // a random point off the coordinate triangle breaks membership
    auto bad = pts;
    bad.pop_back();
    bad.emplace_back(one, one, one);
    auto cert2 = octic_membership(bad, octic);
    CHECK(!cert2.certified());
}
