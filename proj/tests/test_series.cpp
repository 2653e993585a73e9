#include <catch2/catch_amalgamated.hpp>

#include "crnf/series.hpp"
#include "testutil.hpp"

using namespace crnf;

namespace {
UniSeries random_series(std::mt19937& rng, int order = kDefaultOrder, bool unit_linear = false) {
    UniSeries f(order);
    for (int j = 0; j <= order; ++j) f.c[j] = random_K(rng, 3);
    if (unit_linear) {
        f.c[0] = K(0);
        if (f.c[1].is_zero()) f.c[1] = K(1);
    }
    return f;
}
}  // namespace

TEST_CASE("series composition") {
    UniSeries f = UniSeries::monomial(2, K(1));   // zeta^2
    UniSeries g = UniSeries::zeta() + UniSeries::monomial(2, K(1));
    UniSeries h = series_compose(f, g);
    CHECK(h.c[2] == K(1));
    CHECK(h.c[3] == K(2));
    CHECK(h.c[4] == K(1));
    CHECK(h.c[5] == K(0));

    auto rng5 = test_rng(5);
    UniSeries any = random_series(rng5);
    CHECK(series_compose(any, UniSeries::zeta()) == any);

    // geometric series 1/(1-zeta) composed with 2 zeta
    UniSeries geo(kDefaultOrder);
    for (int j = 0; j <= kDefaultOrder; ++j) geo.c[j] = K(1);
    UniSeries two_zeta = UniSeries::monomial(1, K(2));
    UniSeries comp = series_compose(geo, two_zeta);
    Rat p = 1;
    for (int j = 0; j <= kDefaultOrder; ++j) {
        CHECK(comp.c[j] == K(p));
        p *= 2;
    }

    CHECK_THROWS_AS(series_compose(geo, geo), CompositionAtNonzero);
}

TEST_CASE("series reversion") {
    CHECK(series_reverse(UniSeries::zeta()) == UniSeries::zeta());
    CHECK(series_reverse(UniSeries::monomial(1, K(2))) == UniSeries::monomial(1, K(Rat(1, 2))));

    // f = zeta + zeta^2: inverse has signed Catalan coefficients
    UniSeries f = UniSeries::zeta() + UniSeries::monomial(2, K(1));
    UniSeries g = series_reverse(f);
    long expected[] = {0, 1, -1, 2, -5, 14, -42, 132, -429, 1430, -4862};
    for (int j = 0; j <= 10; ++j) CHECK(g.c[j] == K(expected[j]));
    CHECK(series_compose(f, g) == UniSeries::zeta());

    CHECK_THROWS_AS(series_reverse(UniSeries::monomial(2, K(1))), NotInvertible);
}

TEST_CASE("reversion round trip on random series") {
    auto rng = test_rng(31);
    for (int t = 0; t < 200; ++t) {
        UniSeries f = random_series(rng, 8, true);
        UniSeries g = series_reverse(f);
        CHECK(series_compose(f, g) == UniSeries::zeta(8));
        CHECK(series_compose(g, f) == UniSeries::zeta(8));
    }
}

TEST_CASE("series multiplicative inverse") {
    auto rng = test_rng(37);
    for (int t = 0; t < 100; ++t) {
        UniSeries f = random_series(rng, 8);
        if (f.c[0].is_zero()) f.c[0] = K(1);
        CHECK(f * f.inverse() == UniSeries(K(1), 8));
    }
}

TEST_CASE("series matrix inverse") {
    CHECK(series_mat_inverse(UniSeriesMat::identity()) == UniSeriesMat::identity());

    // Id - N with N nilpotent upper triangular
    UniSeriesMat m = UniSeriesMat::identity();
    m.b = -UniSeries::zeta();
    UniSeriesMat mi = series_mat_inverse(m);
    CHECK(mi.b == UniSeries::zeta());
    CHECK(mi.a == UniSeries(K(1), kDefaultOrder));

    auto rng = test_rng(41);
    int done = 0;
    while (done < 50) {
        UniSeriesMat m2(6);
        m2.a = random_series(rng, 6);
        m2.b = random_series(rng, 6);
        m2.c = random_series(rng, 6);
        m2.d = random_series(rng, 6);
        if ((m2.a.c[0] * m2.d.c[0] - m2.b.c[0] * m2.c.c[0]).is_zero()) continue;
        UniSeriesMat mi2 = series_mat_inverse(m2);
        CHECK(m2 * mi2 == UniSeriesMat::identity(6));
        CHECK(mi2 * m2 == UniSeriesMat::identity(6));
        ++done;
    }

    UniSeriesMat sing(4);
    sing.a = UniSeries::zeta(4);
    CHECK_THROWS_AS(series_mat_inverse(sing), SingularConstantTerm);
}

TEST_CASE("biseries arithmetic and inverse") {
    // 1/(1 - zeta zetab) = sum (zeta zetab)^k
    BiSeries f(K(1), 10);
    f.at(1, 1) = K(-1);
    BiSeries g = f.inverse();
    for (int k = 0; 2 * k <= 10; ++k) CHECK(g.at(k, k) == K(1));
    CHECK(g.at(1, 0) == K(0));
    CHECK(g.at(2, 1) == K(0));
    CHECK(f * g == BiSeries(K(1), 10));

    BiSeries h = BiSeries::from_uni(UniSeries::zeta());
    CHECK(h.conj().at(0, 1) == K(1));
    CHECK(h.d_zeta().at(0, 0) == K(1));
    CHECK(h.d_zetab().is_zero());
}

TEST_CASE("semidirect exponential") {
    Mat2 S02 = Mat2::diag(K(1), K(2));
    UniSeriesMat s = semidirect_exp(S02, Mat2{}, 10);
    CHECK(s.a == UniSeries::zeta());
    CHECK(s.d == UniSeries::monomial(1, K(2)));
    CHECK(s.b.is_zero());

    // rank-one case: S02 = E11, Omega = [[0,0],[tau,0]] terminates exactly
    K tau = K(Rat(1, 2));
    UniSeriesMat r = semidirect_exp(Mat2::diag(K(1), K(0)), Mat2{K(0), K(0), tau, K(0)}, 10);
    CHECK(r.a == UniSeries::zeta());
    CHECK(r.b == UniSeries::monomial(2, tau * K(Rat(1, 2))));
    CHECK(r.c == r.b);
    CHECK(r.d == UniSeries::monomial(3, tau * tau * K(Rat(1, 3))));

    // ln(1+eta)/(2 tau) substitution turns the row-6 exponential into
    // f1 = eta(1+eta)/(2 tau), f2 = eta/(2 tau), f3 = 0
    Mat2 S02u{K(1), K(1), K(1), K(0)};
    Mat2 Om{K(2) * tau, tau, K(0), K(0)};
    UniSeriesMat e = semidirect_exp(S02u, Om, 10);
    UniSeries log1p(10);  // ln(1+eta)
    for (int j = 1; j <= 10; ++j) log1p.c[j] = K(Rat((j % 2) ? 1 : -1, j));
    UniSeries sub = K((K(2) * tau).inv().c[0]) * log1p;
    UniSeriesMat comp = compose(e, sub);
    K half_inv = (K(2) * tau).inv();
    UniSeries eta = UniSeries::zeta();
    CHECK(comp.a == half_inv * (eta + eta * eta));
    CHECK(comp.b == half_inv * eta);
    CHECK(comp.d.is_zero());
}
