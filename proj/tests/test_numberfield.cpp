#include <catch2/catch_amalgamated.hpp>

#include "crnf/numberfield.hpp"
#include "testutil.hpp"

using namespace crnf;

TEST_CASE("basis multiplication") {
    CHECK(K::sqrt2() * K::sqrt3() == K::sqrt6());
    CHECK(K::sqrt2() * K::sqrt2() == K(2));
    CHECK(K::sqrt3() * K::sqrt3() == K(3));
    CHECK(K::sqrt6() * K::sqrt6() == K(6));
    CHECK(K::i() * K::i() == K(-1));
    CHECK(K::i() * K::sqrt2() * K::sqrt3() * K::i() == -K::sqrt6());
}

TEST_CASE("inverse and division") {
    K x = K(1) + K::i();
    K xi = x.inv();
    CHECK(xi == (K(1) - K::i()) * K(Rat(1, 2)));
    CHECK(x * xi == K(1));

    auto rng = test_rng(42);
    for (int t = 0; t < 200; ++t) {
        K a = random_K(rng);
        if (a.is_zero()) continue;
        CHECK(a * a.inv() == K(1));
    }
}

TEST_CASE("field axioms on random elements") {
    auto rng = test_rng(7);
    for (int t = 0; t < 100; ++t) {
        K a = random_K(rng), b = random_K(rng), c = random_K(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("conjugation is a field involution") {
    K x = K(Rat(1, 2)) * K::sqrt2() * (K(1) + K::i());
    CHECK(x.conj() == K(Rat(1, 2)) * K::sqrt2() * (K(1) - K::i()));
    auto rng = test_rng(3);
    for (int t = 0; t < 100; ++t) {
        K a = random_K(rng), b = random_K(rng);
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
    }
}

TEST_CASE("exact sign of real elements") {
    CHECK(sign_real(K(0)) == 0);
    CHECK(sign_real(K(2) - K::sqrt2()) == 1);            // 2 > sqrt2
    CHECK(sign_real(K::sqrt2() - K(2)) == -1);
    CHECK(sign_real(K::sqrt6() - K(2)) == 1);            // sqrt6 > 2
    CHECK(sign_real(K::sqrt2() + K::sqrt3() - K::sqrt6() - K(1)) == -1);  // approx -0.303
    CHECK(sign_real(K(3) - K::sqrt2() - K::sqrt3() + K::sqrt6() - K(5)) == -1);
    // 1 + sqrt2 - sqrt3 is approx 0.682
    CHECK(sign_real(K(1) + K::sqrt2() - K::sqrt3()) == 1);
    // 59/100 * sqrt6 - sqrt2 - sqrt3 + 17/10: approx -0.001
    K tight = K(Rat(59, 100)) * K::sqrt6() - K::sqrt2() - K::sqrt3() + K(Rat(17, 10));
    CHECK(sign_real(tight) == -1);
}

TEST_CASE("square roots in K") {
    CHECK(*sqrt_in_K(K(4)) * *sqrt_in_K(K(4)) == K(4));
    CHECK(sqrt_in_K(K(2)).value() * sqrt_in_K(K(2)).value() == K(2));
    CHECK(!sqrt_in_K(K(5)).has_value());
    CHECK(!sqrt_in_K(K(7) + K::sqrt2()).has_value());
    // i has square root e^{i pi/4} = (1+i)/sqrt2
    auto r = sqrt_in_K(K::i());
    REQUIRE(r.has_value());
    CHECK(*r * *r == K::i());
    auto rng = test_rng(11);
    for (int t = 0; t < 100; ++t) {
        K a = random_K(rng);
        auto s = sqrt_in_K(a * a);
        REQUIRE(s.has_value());
        CHECK(*s * *s == a * a);
    }
}

TEST_CASE("24th roots of unity") {
    const auto& roots = roots_of_unity_24();
    REQUIRE(roots.size() == 24);
    K z = roots[1];
    K p(1);
    for (int k = 0; k < 24; ++k) {
        CHECK(p == roots[k]);
        CHECK(p * p.conj() == K(1));
        p = p * z;
    }
    CHECK(p == K(1));
    CHECK(roots[6] == K::i());     // e^{i pi/2}
    CHECK(roots[12] == K(-1));
    CHECK(roots[3] == K(Rat(1, 2)) * (K::sqrt2() + K::i() * K::sqrt2()));  // e^{i pi/4}
}

TEST_CASE("string round trips") {
    CHECK(rat_to_string(rat_from_string("-3/7")) == "-3/7");
    K x = K(Rat(1, 2)) + K(Rat(-2, 3)) * K::i() + K::sqrt6();
    CHECK(to_string(x) == "1/2 - 2/3*i + s6");
}
