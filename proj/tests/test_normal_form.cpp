#include <catch2/catch_amalgamated.hpp>

#include "crnf/normal_form.hpp"
#include "testutil.hpp"

using namespace crnf;

namespace {

Model mk(const Mat2& H, const std::vector<std::pair<int, Mat2>>& terms, int order = 8) {
    UniSeriesMat S(order);
    for (auto& [k, M] : terms) {
        S.a.c[k] += M.a;
        S.b.c[k] += M.b;
        S.c.c[k] += M.c;
        S.d.c[k] += M.d;
    }
    return Model::make(H, S);
}

Mat2 sym(const K& a, const K& b, const K& d) { return Mat2{a, b, b, d}; }

const std::vector<K>& unit_pool() {
    static const std::vector<K> pool = [] {
        K i = K::i(), s2 = K::sqrt2(), s3 = K::sqrt3();
        return std::vector<K>{K(1), i, -K(1), -i,
                              (K(3) + K(4) * i) * K(Rat(1, 5)),
                              (s2 + i * s2) * K(Rat(1, 2)),
                              (s3 + i) * K(Rat(1, 2))};
    }();
    return pool;
}

K pick_unit(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> d(0, unit_pool().size() - 1);
    return unit_pool()[d(rng)];
}

// a random element of the group fixing (rep H, line of rep S02) for the row
GroupElement random_stabilizer(Row row, int eps, std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 3);
    K i = K::i();
    switch (row) {
        case Row::R1: {
            K w = pick_unit(rng);
            if (coin(rng) == 0) return {K(1), Mat2::diag(w, -w)};
            return {K(1), Mat2::diag(w, w)};
        }
        case Row::R2: {
            K w = pick_unit(rng);
            if (coin(rng) == 0) return {i, Mat2::diag(w, -w)};
            return {K(1), Mat2::diag(w, w)};
        }
        case Row::R3: {
            if (coin(rng) == 0) return {eps == 1 ? K(1) : i, Mat2::antidiag()};
            return {K(1), Mat2::diag(pick_unit(rng), pick_unit(rng))};
        }
        case Row::R4:
            return {K(1), Mat2::diag(pick_unit(rng), pick_unit(rng))};
        case Row::R5: {
            int c = coin(rng);
            if (c == 0) return {i, Mat2::diag(K(1), K(-1))};
            if (c == 1) return {K(1), Mat2::antidiag()};
            K a = pick_unit(rng) * K(2);  // any invertible scale
            return {K(1), Mat2::diag(a, a.conj().inv())};
        }
        case Row::R6:
            return {K(1), Mat2::diag(pick_unit(rng), pick_unit(rng))};  // replaced below
        case Row::R7: {
            int c = coin(rng);
            if (c == 0) return {i, Mat2::diag(K(1), K(-1))};
            K a = pick_unit(rng);
            if (c == 1) a = a * K(2);
            K t = K(Rat(coin(rng) - 1, 2));  // small real parameter
            Mat2 U = Mat2::diag(a, a.conj().inv()) * Mat2{K(1), i * t, K(0), K(1)};
            return {K(1), U};
        }
    }
    return {K(1), Mat2::identity()};
}

GroupElement random_stabilizer_r6(std::mt19937& rng) {
    K w = pick_unit(rng);
    return {K(1), Mat2::diag(w, w)};
}

}  // namespace

TEST_CASE("partial normal form reaches the representative pair") {
    // scaled designated entry only
    Model m = mk(Mat2::diag(K(1), K(1)),
                 {{1, sym(K(2), K(0), K(0))}, {3, sym(K(0), K(1), K(2))}});
    Model p = partial_normal_form(m);
    CHECK(p.H == Mat2::diag(K(1), K(1)));
    CHECK(p.S_zeta0() == Mat2::diag(K(1), K(0)));
    CHECK(series_ent(p.S, 0) == UniSeries::zeta(p.order()));
    // idempotence
    Model p2 = partial_normal_form(p);
    CHECK(p2.S == p.S);
    CHECK(p2.H == p.H);

    // a genuinely transformed pair: congruence by a unit diagonal
    Model m2 = mk(Mat2::antidiag(), {{1, sym(K(0), K::i(), K(0))},
                                     {2, sym(K(0), K(1), K(3))}});
    Model q = partial_normal_form(m2);
    CHECK(q.H == Mat2::antidiag());
    CHECK(q.S_zeta0() == Mat2::antidiag());
    CHECK(series_ent(q.S, 1) == UniSeries::zeta(q.order()));
}

TEST_CASE("group action preserves partial normal form and validates input") {
    Model m = mk(Mat2::antidiag(), {{1, sym(K(1), K(0), K(0))}, {2, sym(K(0), K(1), K(2))}});
    // a valid row-7 stabilizer element
    GroupElement g{K(1), Mat2{K(2), K::i(), K(0), K(Rat(1, 2))}};
    Model r = group_action(m, g);
    CHECK(r.H == m.H);
    CHECK(r.S_zeta0() == m.S_zeta0());
    CHECK(series_ent(r.S, 0) == UniSeries::zeta(r.order()));
    // elements that move H or the line of S_zeta(0) are rejected
    CHECK_THROWS_AS(group_action(m, GroupElement{K(1), Mat2::diag(K(2), K(1))}), DegenerateInput);
    CHECK_THROWS_AS(group_action(m, GroupElement{K(2), Mat2::identity()}), DegenerateInput);
    CHECK_THROWS_AS(group_action(m, GroupElement{K(1), Mat2::antidiag()}), DegenerateInput);
}

TEST_CASE("homogeneous exemplars and residual symmetry dimensions") {
    // rank-one antidiagonal pair: three-dimensional residual symmetry
    Model vii = mk(Mat2::antidiag(), {{1, sym(K(1), K(0), K(0))}});
    NormalFormRecord r = reduce_to_normal_form(vii);
    CHECK(r.row == Row::R7);
    for (int k = 2; k <= r.order; ++k) CHECK(r.coeffs[k].is_zero());
    CHECK(r.residualSymmetryDim == 3);
    CHECK(r.tau.is_zero());

    // definite Hermitian form with antidiagonal symbol: two torus directions
    Model va = mk(Mat2::diag(K(1), K(1)), {{1, sym(K(0), K(1), K(0))}});
    NormalFormRecord rva = reduce_to_normal_form(va);
    CHECK(rva.row == Row::R3);
    CHECK(rva.eps == 1);
    CHECK(rva.residualSymmetryDim == 2);

    CHECK(residual_symmetry_dimension(
              mk(Mat2::diag(K(1), K(-1)), {{1, sym(K(0), K(1), K(0))}})) == 2);
    CHECK(residual_symmetry_dimension(
              mk(Mat2::antidiag(), {{1, sym(K(0), K(1), K(0))}})) == 2);
    CHECK(residual_symmetry_dimension(
              mk(Mat2::diag(K(1), K(1)), {{1, sym(K(1), K(0), K(0))}})) == 2);
}

TEST_CASE("one-dimensional residual symmetry exemplars") {
    K i = K::i();
    CHECK(residual_symmetry_dimension(
              mk(Mat2::diag(K(1), K(1)), {{1, sym(K(1), K(0), K(2))}})) == 1);
    CHECK(residual_symmetry_dimension(
              mk(Mat2::antidiag(), {{1, sym(K(1), K(0), i)}})) == 1);
    CHECK(residual_symmetry_dimension(
              mk(Mat2::diag(K(1), K(1)),
                 {{1, sym(K(0), K(1), K(0))}, {3, sym(K(0), K(0), K(2))}})) == 1);
    CHECK(residual_symmetry_dimension(
              mk(Mat2::diag(K(1), K(1)),
                 {{1, sym(K(1), K(0), K(0))},
                  {3, sym(K(0), K(2), K(0))},
                  {5, sym(K(0), K(0), K(1) + i)}})) == 1);
    CHECK(residual_symmetry_dimension(
              mk(Mat2::diag(K(1), K(1)),
                 {{1, sym(K(1), K(0), K(0))}, {3, sym(K(0), K(0), K(2))}})) == 1);
    CHECK(residual_symmetry_dimension(
              mk(Mat2::antidiag(), {{1, Mat2{K(1), K(1), K(1), K(0)}}})) == 1);
}

TEST_CASE("inhomogeneous records have no residual symmetry") {
    K i = K::i();
    Model m1 = mk(Mat2::diag(K(1), K(1)),
                  {{1, sym(K(1), K(0), K(2))}, {2, sym(K(0), K(1), K(1) + i)}});
    NormalFormRecord r = reduce_to_normal_form(m1);
    CHECK(r.row == Row::R1);
    CHECK(r.lambda == K(2));
    CHECK(r.residualSymmetryDim == 0);
    // the pinned off-diagonal value and the extracted modulus
    CHECK(r.coeffs[2].b == K(-1));
    CHECK(r.tau == K(Rat(2, 3)));
    CHECK(sign_real(r.tau) > 0);

    Model m6 = mk(Mat2::antidiag(),
                  {{1, Mat2{K(1), K(1), K(1), K(0)}}, {2, sym(K(0), K(2), K(1))}});
    NormalFormRecord r6 = reduce_to_normal_form(m6);
    CHECK(r6.row == Row::R6);
    CHECK(r6.coeffs[2].b == K(-2));
    CHECK(r6.tau == K(1));
    CHECK(r6.residualSymmetryDim == 0);
}

TEST_CASE("reduction is idempotent") {
    K i = K::i();
    std::vector<Model> models = {
        mk(Mat2::diag(K(1), K(1)),
           {{1, sym(K(1), K(0), K(2))}, {2, sym(K(0), K(1), K(1) + i)}}),
        mk(Mat2::antidiag(), {{1, sym(K(1), K(0), i)}, {2, sym(K(0), K(1) + i, K(2))}}),
        mk(Mat2::diag(K(1), K(1)),
           {{1, sym(K(0), K(1), K(0))}, {3, sym(K(2), K(0), K(3))}, {4, sym(K(1) + i, K(0), K(1))}}),
        mk(Mat2::diag(K(1), K(-1)),
           {{1, sym(K(1), K(0), K(0))}, {3, sym(K(0), K(1), K(2) * i)}, {4, sym(K(0), K(1), K(0))}}),
        mk(Mat2::antidiag(),
           {{1, sym(K(0), K(1), K(0))}, {2, sym(K(Rat(1, 2)), K(0), K(Rat(1, 2)))},
            {3, sym(K(0), K(0), i)}}),
        mk(Mat2::antidiag(),
           {{1, Mat2{K(1), K(1), K(1), K(0)}}, {2, sym(K(0), K(2), K(1) + i)}}),
        mk(Mat2::antidiag(), {{1, sym(K(1), K(0), K(0))}, {2, sym(K(0), K(3), K(8))},
                              {4, sym(K(0), K(0), i)}}),
    };
    for (const Model& m : models) {
        NormalFormRecord r = reduce_to_normal_form(m);
        NormalFormRecord r2 = reduce_to_normal_form(r.normalized);
        CHECK(r.coeffs == r2.coeffs);
        CHECK(r.row == r2.row);
        CHECK(r.tau == r2.tau);
    }
}

TEST_CASE("normal form is constant along group orbits") {
    K i = K::i();
    struct Case {
        Model m;
        const char* name;
    };
    std::vector<Case> cases = {
        {mk(Mat2::diag(K(1), K(1)),
            {{1, sym(K(1), K(0), K(2))}, {2, sym(K(0), K(1), K(1) + i)},
             {4, sym(K(0), K(0), K(3))}}),
         "row 1, first coefficient at 2"},
        {mk(Mat2::diag(K(1), K(1)),
            {{1, sym(K(1), K(0), K(2))}, {3, sym(K(0), K(0), K(3))}, {4, sym(K(0), i, K(0))}}),
         "row 1, first coefficient at 3"},
        {mk(Mat2::antidiag(), {{1, sym(K(1), K(0), i)}, {2, sym(K(0), K(1) + i, K(2))}}),
         "row 2"},
        {mk(Mat2::diag(K(1), K(1)),
            {{1, sym(K(0), K(1), K(0))}, {3, sym(K(2), K(0), K(3))},
             {4, sym(K(1), K(0), K(1))}}),
         "row 3, both diagonal slots"},
        {mk(Mat2::diag(K(1), K(1)),
            {{1, sym(K(0), K(1), K(0))}, {3, sym(K(0), K(0), K(2))}, {4, sym(K(0), K(0), K(1) + i)}}),
         "row 3, lone slot"},
        {mk(Mat2::diag(K(1), K(-1)),
            {{1, sym(K(1), K(0), K(0))}, {3, sym(K(0), K(1), K(2) * i)}, {4, sym(K(0), K(1), K(0))}}),
         "row 4, both slots"},
        {mk(Mat2::diag(K(1), K(1)),
            {{1, sym(K(1), K(0), K(0))}, {2, sym(K(0), K(2) * i, K(0))},
             {3, sym(K(0), K(0), i)}, {4, sym(K(0), K(0), K(1) + i)}}),
         "row 4, off-diagonal first"},
        {mk(Mat2::diag(K(1), K(1)),
            {{1, sym(K(1), K(0), K(0))}, {3, sym(K(0), K(0), K(2) * i)},
             {4, sym(K(0), K(1), K(0))}, {5, sym(K(0), K(0), K(1) + i)}}),
         "row 4, diagonal first"},
        {mk(Mat2::antidiag(),
            {{1, sym(K(0), K(1), K(0))}, {2, sym(K(Rat(1, 2)), K(0), K(Rat(1, 2)))},
             {3, sym(K(0), K(0), i)}}),
         "row 5"},
        {mk(Mat2::antidiag(),
            {{1, sym(K(0), K(1), K(0))}, {2, sym(K(0), K(0), K(3))}, {3, sym(i, K(0), K(0))}}),
         "row 5, lone slot"},
        {mk(Mat2::antidiag(),
            {{1, Mat2{K(1), K(1), K(1), K(0)}}, {2, sym(K(0), K(2), K(1) + i)}}),
         "row 6"},
        {mk(Mat2::antidiag(),
            {{1, sym(K(1), K(0), K(0))}, {2, sym(K(0), K(3), K(8))}, {4, sym(K(0), K(0), i)}}),
         "row 7, diagonal slot present"},
        {mk(Mat2::antidiag(),
            {{1, sym(K(1), K(0), K(0))}, {2, sym(K(0), K(4), K(0))},
             {3, sym(K(0), K(0), K(2) + K(2) * i)}}),
         "row 7, unipotent fixed through the diagonal slot"},
        {mk(Mat2::antidiag(),
            {{1, sym(K(1), K(0), K(0))}, {2, sym(K(0), K(4), K(0))},
             {3, sym(K(0), K(1) + i, K(0))}}),
         "row 7, unipotent fixed through the off-diagonal slot"},
    };
    auto rng = test_rng(2027);
    std::uniform_int_distribution<int> nsteps(1, 3);
    for (const Case& c : cases) {
        INFO(c.name);
        NormalFormRecord base = reduce_to_normal_form(c.m);
        BigradedSymbol par = classify_parameters(c.m.H, c.m.S_zeta0());
        Model pnf = partial_normal_form(c.m);
        for (int trial = 0; trial < 25; ++trial) {
            Model t = pnf;
            int steps = nsteps(rng);
            for (int s = 0; s < steps; ++s) {
                GroupElement g = par.row == Row::R6 ? random_stabilizer_r6(rng)
                                                    : random_stabilizer(par.row, par.eps, rng);
                t = group_action(t, g);
            }
            NormalFormRecord moved = reduce_to_normal_form(t);
            CHECK(moved.row == base.row);
            CHECK(moved.eps == base.eps);
            CHECK(moved.lambda == base.lambda);
            CHECK(moved.eitheta == base.eitheta);
            CHECK(moved.coeffs == base.coeffs);
            CHECK(moved.tau == base.tau);
            CHECK(moved.o1 == base.o1);
            CHECK(moved.o2 == base.o2);
        }
    }
}

TEST_CASE("equivalence verdicts") {
    K i = K::i();
    Model va = mk(Mat2::diag(K(1), K(1)), {{1, sym(K(0), K(1), K(0))}});
    Model vb = mk(Mat2::antidiag(), {{1, sym(K(0), K(1), K(0))}});
    EquivalenceResult r = equivalent(va, vb);
    CHECK(r.verdict == Verdict::Distinct);
    CHECK(r.detail == "different symbol rows");

    Model l2 = mk(Mat2::diag(K(1), K(1)), {{1, sym(K(1), K(0), K(2))}});
    Model l3 = mk(Mat2::diag(K(1), K(1)), {{1, sym(K(1), K(0), K(3))}});
    CHECK(equivalent(l2, l3).verdict == Verdict::Distinct);

    Model m = mk(Mat2::diag(K(1), K(1)),
                 {{1, sym(K(1), K(0), K(2))}, {2, sym(K(0), K(1), K(1) + i)}});
    Model m2 = group_action(partial_normal_form(m),
                            GroupElement{K(1), Mat2::diag(i, i)});
    EquivalenceResult eq = equivalent(m, m2);
    CHECK(eq.verdict == Verdict::Equivalent);

    Model d2 = mk(Mat2::diag(K(1), K(1)),
                  {{1, sym(K(1), K(0), K(2))}, {2, sym(K(0), K(1), K(1) + i)},
                   {3, sym(K(0), K(0), K(1))}});
    CHECK(equivalent(m, d2).verdict == Verdict::Distinct);
}

TEST_CASE("truncation guard") {
    UniSeriesMat S(1);
    S.a = UniSeries::zeta(1);
    Model m = Model::make(Mat2::antidiag(), S);
    CHECK_THROWS_AS(reduce_to_normal_form(m), TruncationInconclusive);
}
