#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quartica/tower.hpp"
#include "test_util.hpp"

#include <complex>

using namespace quartica;
using namespace quartica::testutil;

TEST_CASE("tower construction") {
    auto Q = q();
    CHECK(Q->dim() == 1);
    CHECK(Q->spec_string() == "Q()");

    auto Qi = q_i();
    CHECK(Qi->dim() == 2);

    auto T = q_i_r2_q2();
    CHECK(T->dim() == 8);

    // eps = (1+i)*r2/2 is a primitive 8th root of unity: eps^4 + 1 = 0
    auto i = FieldElement::generator(T, "i");
    auto r2 = FieldElement::generator(T, "r2");
    auto eps = (FieldElement::one(T) + i) * r2 / Rational(2);
    CHECK(eps.pow(4) == -FieldElement::one(T));
    CHECK(eps.pow(8) == FieldElement::one(T));
    CHECK((eps * eps) == i);
}

TEST_CASE("degenerate and malformed extensions") {
    auto Q = q();
    auto Qr2 = extend_tower(Q, "r2", FieldElement(Q, Rational(2)));
    auto r2 = FieldElement::generator(Qr2, "r2");
    // 3 + 2*sqrt(2) = (1 + sqrt(2))^2
    auto sq = FieldElement(Qr2, Rational(3)) + r2 * Rational(2);
    CHECK_THROWS_AS(extend_tower(Qr2, "bad", sq), DegenerateExtension);
    CHECK_THROWS_AS(extend_tower(Qr2, "z", FieldElement::zero(Qr2)), MalformedSpec);
    CHECK_THROWS_AS(extend_tower(Qr2, "r2", FieldElement(Qr2, Rational(3))), MalformedSpec);
    CHECK_THROWS_AS(extend_tower(Q, "four", FieldElement(Q, Rational(4))), DegenerateExtension);
}

TEST_CASE("arithmetic examples") {
    auto Qi = q_i();
    auto i = FieldElement::generator(Qi, "i");
    auto one = FieldElement::one(Qi);
    CHECK((one + i) * (one - i) == FieldElement(Qi, Rational(2)));

    auto Qr2 = extend_tower(q(), "r2", FieldElement(q(), Rational(2)));
    auto r2 = FieldElement::generator(Qr2, "r2");
    auto a = FieldElement::one(Qr2) + r2;
    CHECK(a.inverse() == r2 - FieldElement::one(Qr2));

    CHECK_THROWS_AS(FieldElement::zero(Qi).inverse(), DivisionByZero);
    CHECK_THROWS_AS((void)(i + FieldElement::one(Qr2)), TowerMismatch);
}

TEST_CASE("square roots") {
    auto Q = q();
    auto s = sqrt_in_tower(FieldElement(Q, Rational(9, 4)));
    REQUIRE(s);
    CHECK(*s == FieldElement(Q, Rational(3, 2)));

    auto Qr2 = extend_tower(Q, "r2", FieldElement(Q, Rational(2)));
    auto r2 = FieldElement::generator(Qr2, "r2");
    auto x = FieldElement(Qr2, Rational(3)) + r2 * Rational(2);
    auto sx = sqrt_in_tower(x);
    REQUIRE(sx);
    CHECK(*sx == FieldElement::one(Qr2) + r2);

    auto Qi = q_i();
    CHECK(!sqrt_in_tower(FieldElement(Qi, Rational(2))));

    // branch rule: sqrt(-1) has non-negative imaginary embedding
    auto mi = sqrt_in_tower(FieldElement(Qi, Rational(-1)));
    REQUIRE(mi);
    CHECK(*mi == FieldElement::generator(Qi, "i"));
}

TEST_CASE("numeric embedding") {
    auto Q = q();
    CHECK(FieldElement(Q, Rational(1, 2)).embed() == std::complex<double>(0.5, 0.0));

    auto Qi = q_i();
    auto e = FieldElement::generator(Qi, "i").embed();
    CHECK(std::abs(e - std::complex<double>(0, 1)) < 1e-12);

    auto T = q_i_r2_q2();
    auto i = FieldElement::generator(T, "i");
    auto r2 = FieldElement::generator(T, "r2");
    auto eps = (FieldElement::one(T) + i) * r2 / Rational(2);
    std::complex<double> z = eps.embed();
    std::complex<double> z8 = std::pow(z, 8);
    CHECK(std::abs(z8 - 1.0) < 1e-9);
    // q2 embeds as the positive fourth root of 2
    CHECK(std::abs(FieldElement::generator(T, "q2").embed() - std::complex<double>(std::pow(2.0, 0.25), 0)) < 1e-12);
}

TEST_CASE("field axioms on randomized elements") {
    std::mt19937 rng(42);
    for (const auto& t : {q(), q_i(), q_i_r2(), q_i_r2_q2(), universal_tower()}) {
        int trials = t->dim() >= 32 ? 200 : 1000;
        for (int n = 0; n < trials; ++n) {
            auto a = random_element(t, rng, 5);
            auto b = random_element(t, rng, 5);
            auto c = random_element(t, rng, 5);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            if (!a.is_zero()) REQUIRE(a * a.inverse() == FieldElement::one(t));
            REQUIRE(a.coords().size() == t->dim());
        }
    }
}

TEST_CASE("sqrt soundness on randomized squares") {
    std::mt19937 rng(7);
    for (const auto& t : {q(), q_i(), q_i_r2(), q_i_r2_q2()}) {
        for (int n = 0; n < 200; ++n) {
            auto a = random_element(t, rng, 4);
            auto s = sqrt_in_tower(a * a);
            REQUIRE(s);
            REQUIRE(*s * *s == a * a);
        }
    }
}

TEST_CASE("embedding is a ring homomorphism up to 1e-9") {
    std::mt19937 rng(11);
    auto t = q_i_r2_q2();
    for (int n = 0; n < 300; ++n) {
        auto a = random_element(t, rng, 5);
        auto b = random_element(t, rng, 5);
        auto lhs = (a * b).embed();
        auto rhs = a.embed() * b.embed();
        REQUIRE(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
        REQUIRE(std::abs((a + b).embed() - (a.embed() + b.embed())) <= 1e-9);
    }
}

TEST_CASE("lift into a supertower") {
    std::mt19937 rng(3);
    auto sub = q_i_r2();
    auto super = universal_tower();
    auto a = random_element(sub, rng);
    auto b = random_element(sub, rng);
    CHECK((a * b).lift_to(super) == a.lift_to(super) * b.lift_to(super));
    CHECK((a + b).lift_to(super) == a.lift_to(super) + b.lift_to(super));

    // same generator name over a different radicand must be rejected
    auto other = extend_tower(q(), "i", FieldElement(q(), Rational(-2)));
    CHECK_THROWS_AS(FieldElement::one(other).lift_to(super), TowerMismatch);
    auto g = FieldElement::generator(other, "i");
    CHECK_THROWS_AS(g.lift_to(super), TowerMismatch);
}
