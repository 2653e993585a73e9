#include <catch2/catch_amalgamated.hpp>

#include "crnf/json_io.hpp"
#include "testutil.hpp"

using namespace crnf;

TEST_CASE("coefficient and matrix round trip") {
    auto rng = test_rng(311);
    for (int t = 0; t < 20; ++t) {
        K x = random_K(rng);
        CHECK(k_from_json(k_to_json(x)) == x);
    }
    Mat2 m{K(1), K::i(), K::sqrt2() * K(Rat(1, 3)), K(Rat(-7, 2))};
    CHECK(mat_from_json(mat_to_json(m)) == m);
    CHECK_THROWS_AS(k_from_json(Json::array({"1", "2"})), BadInput);
    CHECK_THROWS_AS(k_from_json(Json::array({1.5, 0, 0, 0, 0, 0, 0, 0})), BadInput);
}

TEST_CASE("model round trip and validation") {
    Model m = catalog_model(catalog("II"), 8);
    Json j = model_to_json(m);
    Model back = model_from_json(j);
    CHECK(back.H == m.H);
    CHECK(back.S == m.S);
    CHECK(back.order() == m.order());

    Json bad = j;
    bad.erase("order");
    CHECK_THROWS_AS(model_from_json(bad), BadInput);
    bad = j;
    bad["S"]["x"] = bad["S"]["1"];
    CHECK_THROWS_AS(model_from_json(bad), BadInput);
    bad = j;
    bad["S"]["1"][0][1] = k_to_json(K(5));  // breaks symmetry
    CHECK_THROWS_AS(model_from_json(bad), BadInput);

    Model shorter = model_at_order(m, 4);
    CHECK(shorter.order() == 4);
    CHECK(shorter.S_coeff(2) == m.S_coeff(2));
    Model longer = model_at_order(m, 12);
    CHECK(longer.order() == 12);
    CHECK(longer.S_coeff(12).is_zero());
}

TEST_CASE("polynomial round trip") {
    for (const CatalogEntry& e : catalog()) {
        Poly p = e.P;
        CHECK(poly_from_json(poly_to_json(p), false) == p);
    }
    // 4-entry keys mean the holomorphic half
    Json j;
    j["1,0,2,0"] = k_to_json(K::sqrt3());
    Poly p = poly_from_json(j, true);
    CHECK(p == K::sqrt3() * (Poly::var(W) * Poly::var(Z2, 2)));
    Json barred;
    barred["0,0,0,0,1,0,0,0"] = k_to_json(K(1));
    CHECK_THROWS_AS(poly_from_json(barred, true), NonHolomorphic);
    CHECK_NOTHROW(poly_from_json(barred, false));
    Json badkey;
    badkey["0,0,x"] = k_to_json(K(1));
    CHECK_THROWS_AS(poly_from_json(badkey, false), BadInput);
}

TEST_CASE("field round trip") {
    for (const char* label : {"I", "II", "III"}) {
        std::vector<HoloField> gens = section5_generators(label);
        std::vector<HoloField> back = parse_fields(fields_to_json(gens));
        REQUIRE(back.size() == gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j) CHECK(back[j] == gens[j]);
    }
    Json zeroden;
    zeroden["fields"] = Json::array();
    Json f;
    f["dz1"] = Json{{"num", Json{{"0,0,0,0", k_to_json(K(1))}}},
                    {"den", Json{{"0,0,0,1", k_to_json(K(1))}}}};
    zeroden["fields"].push_back(f);
    CHECK_THROWS_AS(parse_fields(zeroden), ZeroDenominatorAtOrigin);
}

TEST_CASE("report serialization is stable") {
    Model m = catalog_model(catalog("V.A"), 8);
    Model pn = partial_normal_form(m);
    BigradedSymbol bs = classify_parameters(pn.H, pn.S_zeta0());
    Json b1 = bigraded_to_json(bs);
    CHECK(b1["row"] == "R3");
    CHECK(b1["params"]["eps"] == 1);
    CHECK(row_from_name("R3") == Row::R3);
    CHECK_THROWS_AS(row_from_name("R9"), BadInput);

    NormalFormRecord nf = reduce_to_normal_form(m);
    Json n1 = normal_form_to_json(nf);
    Json n2 = normal_form_to_json(nf);
    CHECK(n1.dump() == n2.dump());
    CHECK(n1["residual_dim"] == 2);
}
