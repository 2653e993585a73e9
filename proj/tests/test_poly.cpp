#include <catch2/catch_amalgamated.hpp>

#include "crnf/poly.hpp"
#include "testutil.hpp"

using namespace crnf;

namespace {
Poly random_poly(std::mt19937& rng, int nterms = 4, int maxdeg = 2) {
    std::uniform_int_distribution<int> ed(0, maxdeg);
    std::uniform_int_distribution<int> vd(0, 7);
    Poly p;
    for (int t = 0; t < nterms; ++t) {
        Mono m;
        m.set(vd(rng), ed(rng));
        m.set(vd(rng), ed(rng));
        p.add_term(m, random_K(rng));
    }
    return p;
}
}  // namespace

TEST_CASE("poly arithmetic basics") {
    Poly z1 = Poly::var(Z1), z1b = Poly::var(Z1B);
    Poly sq = (z1 + z1b) * (z1 + z1b);
    CHECK(sq == z1 * z1 + K(2) * (z1 * z1b) + z1b * z1b);

    Poly p = Poly::var(ZETA, 2) * Poly::var(Z2B, 2);
    CHECK(p.derivative(ZETA) == K(2) * (Poly::var(ZETA) * Poly::var(Z2B, 2)));

    Poly q = K::i() * (Poly::var(Z1) * Poly::var(ZETAB));
    CHECK(q.conj() == -K::i() * (Poly::var(Z1B) * Poly::var(ZETA)));
    CHECK(q.conj().conj() == q);
}

TEST_CASE("poly ring axioms on random inputs") {
    auto rng = test_rng(19);
    for (int t = 0; t < 60; ++t) {
        Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
}

TEST_CASE("single divisor division") {
    Poly z1 = Poly::var(Z1), z1b = Poly::var(Z1B);
    auto [ok, q] = poly_divides(z1 - z1b, z1 * z1 - z1b * z1b);
    CHECK(ok);
    CHECK(q == z1 + z1b);

    auto [ok2, q2] = poly_divides(z1 - z1b, z1 * z1 + z1b * z1b);
    CHECK(!ok2);

    auto rng1 = test_rng(1);
    Poly p = random_poly(rng1);
    auto [ok3, q3] = poly_divides(p, p);
    CHECK(ok3);
    CHECK(q3 == Poly(1));

    CHECK_THROWS_AS(poly_divides(Poly(), z1), ZeroDivisor);
}

TEST_CASE("divide-back property") {
    auto rng = test_rng(23);
    for (int t = 0; t < 60; ++t) {
        Poly d = random_poly(rng);
        if (d.is_zero()) continue;
        Poly q = random_poly(rng);
        auto [ok, qq] = poly_divides(d, d * q);
        CHECK(ok);
        CHECK(qq == q);
    }
}

TEST_CASE("divmod remainder is reduced") {
    auto rng = test_rng(29);
    for (int t = 0; t < 40; ++t) {
        Poly d = random_poly(rng), f = random_poly(rng, 6);
        if (d.is_zero()) continue;
        auto [q, r] = divmod(f, d);
        CHECK(f == q * d + r);
        for (auto& [m, k] : r.terms) CHECK(!m.divisible_by(d.leading_mono()));
    }
}
