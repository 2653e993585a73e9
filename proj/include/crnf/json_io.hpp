#pragma once

// JSON serialization for models, polynomials, holomorphic fields, and
// classification reports. Exact rationals travel as "p/q" strings.

#include <json.hpp>
#include <string>
#include <vector>

#include "normal_form.hpp"
#include "symfields.hpp"

namespace crnf {

using Json = nlohmann::ordered_json;

struct NonHolomorphic : std::invalid_argument {
    explicit NonHolomorphic(const std::string& what)
        : std::invalid_argument("NonHolomorphic: " + what) {}
};

struct ZeroDenominatorAtOrigin : std::invalid_argument {
    explicit ZeroDenominatorAtOrigin(const std::string& what)
        : std::invalid_argument("ZeroDenominatorAtOrigin: " + what) {}
};

struct BadInput : std::invalid_argument {
    explicit BadInput(const std::string& what) : std::invalid_argument(what) {}
};

// ---------------------------------------------------------------- K <-> JSON

// coordinate order: 1, i, sqrt2, i*sqrt2, sqrt3, i*sqrt3, sqrt6, i*sqrt6
inline Json k_to_json(const K& x) {
    Json a = Json::array();
    for (int j = 0; j < 8; ++j) a.push_back(rat_to_string(x.c[j]));
    return a;
}

inline K k_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 8) throw BadInput("coefficient must be an 8-tuple");
    K x;
    for (int t = 0; t < 8; ++t) {
        if (j[t].is_string())
            x.c[t] = rat_from_string(j[t].get<std::string>());
        else if (j[t].is_number_integer())
            x.c[t] = Rat(j[t].get<long>());
        else
            throw BadInput("coefficient entries must be \"p/q\" strings or integers");
    }
    return x;
}

inline Json mat_to_json(const Mat2& m) {
    return Json::array({Json::array({k_to_json(m.a), k_to_json(m.b)}),
                        Json::array({k_to_json(m.c), k_to_json(m.d)})});
}

inline Mat2 mat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2
        || !j[1].is_array() || j[1].size() != 2)
        throw BadInput("matrix must be a 2x2 array");
    return Mat2{k_from_json(j[0][0]), k_from_json(j[0][1]), k_from_json(j[1][0]),
                k_from_json(j[1][1])};
}

// ------------------------------------------------------------- Model <-> JSON

inline Json model_to_json(const Model& m) {
    Json out;
    out["H"] = mat_to_json(m.H);
    Json s = Json::object();
    for (int j = 1; j <= m.order(); ++j) {
        Mat2 c = m.S_coeff(j);
        if (c.is_zero()) continue;
        s[std::to_string(j)] = mat_to_json(c);
    }
    out["S"] = s;
    out["order"] = m.order();
    return out;
}

inline Model model_from_json(const Json& j) {
    if (!j.is_object()) throw BadInput("model file must be a JSON object");
    if (!j.contains("H") || !j.contains("S") || !j.contains("order"))
        throw BadInput("model file needs \"H\", \"S\", \"order\"");
    if (!j["order"].is_number_integer()) throw BadInput("\"order\" must be an integer");
    int order = j["order"].get<int>();
    if (order < 1 || order > 64) throw BadInput("\"order\" out of range [1, 64]");
    Mat2 H = mat_from_json(j["H"]);
    if (!j["S"].is_object()) throw BadInput("\"S\" must map degree strings to matrices");
    UniSeriesMat S(order);
    for (auto it = j["S"].begin(); it != j["S"].end(); ++it) {
        int deg;
        try {
            std::size_t used = 0;
            deg = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument(it.key());
        } catch (const std::exception&) {
            throw BadInput("bad degree key in \"S\": " + it.key());
        }
        if (deg < 0) throw BadInput("negative degree key in \"S\"");
        if (deg > order) continue;  // beyond the truncation order
        Mat2 c = mat_from_json(it.value());
        if (c.b != c.c) throw BadInput("S coefficient at degree " + it.key() + " not symmetric");
        S.a.c[deg] = c.a;
        S.b.c[deg] = c.b;
        S.c.c[deg] = c.c;
        S.d.c[deg] = c.d;
    }
    return Model::make(H, S);  // InvalidModel surfaces to the caller
}

// re-truncate / zero-extend a model to a requested order
inline Model model_at_order(const Model& m, int order) {
    if (order == m.order()) return m;
    UniSeriesMat S(order);
    for (int j = 1; j <= std::min(order, m.order()); ++j) {
        Mat2 c = m.S_coeff(j);
        S.a.c[j] = c.a;
        S.b.c[j] = c.b;
        S.c.c[j] = c.c;
        S.d.c[j] = c.d;
    }
    return Model::make(m.H, S);
}

// -------------------------------------------------------------- Poly <-> JSON

// key: comma-separated exponents for (w, z1, z2, zeta, wb, z1b, z2b, zetab);
// 4 entries mean the holomorphic half only
inline std::string mono_key(Mono m) {
    std::string k;
    for (int v = 0; v < 8; ++v) {
        if (v) k += ',';
        k += std::to_string(m.exp(v));
    }
    return k;
}

inline Json poly_to_json(const Poly& p) {
    Json out = Json::object();
    for (auto& [m, k] : p.terms) out[mono_key(m)] = k_to_json(k);
    return out;
}

inline Poly poly_from_json(const Json& j, bool holomorphic_only) {
    if (!j.is_object()) throw BadInput("polynomial must map exponent keys to coefficients");
    Poly p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::vector<int> exps;
        std::string key = it.key();
        std::size_t pos = 0;
        while (pos <= key.size()) {
            std::size_t next = key.find(',', pos);
            std::string tok = key.substr(pos, next == std::string::npos ? next : next - pos);
            try {
                std::size_t used = 0;
                int e = std::stoi(tok, &used);
                if (used != tok.size() || e < 0 || e > 200) throw std::invalid_argument(tok);
                exps.push_back(e);
            } catch (const std::exception&) {
                throw BadInput("bad exponent key: " + key);
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (exps.size() != 4 && exps.size() != 8)
            throw BadInput("exponent key must have 4 or 8 entries: " + key);
        Mono m;
        for (std::size_t v = 0; v < exps.size(); ++v) m.set(int(v), exps[v]);
        if (holomorphic_only)
            for (int v = WB; v <= ZETAB; ++v)
                if (m.exp(v) != 0) throw NonHolomorphic("barred variable in key " + key);
        p.add_term(m, k_from_json(it.value()));
    }
    return p;
}

// --------------------------------------------------------- HoloField <-> JSON

inline Json field_to_json(const HoloField& X) {
    static const char* comps[4] = {"dw", "dz1", "dz2", "dzeta"};
    Json out = Json::object();
    for (int j = 0; j < 4; ++j) {
        if (X.c[j].is_zero()) continue;
        Json comp;
        comp["num"] = poly_to_json(X.c[j].num);
        if (!(X.c[j].den == Poly(1))) comp["den"] = poly_to_json(X.c[j].den);
        out[comps[j]] = comp;
    }
    return out;
}

inline HoloField field_from_json(const Json& j) {
    static const char* comps[4] = {"dw", "dz1", "dz2", "dzeta"};
    if (!j.is_object()) throw BadInput("field must be an object with dw/dz1/dz2/dzeta");
    HoloField X;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int idx = -1;
        for (int t = 0; t < 4; ++t)
            if (it.key() == comps[t]) idx = t;
        if (idx < 0) throw BadInput("unknown field component: " + it.key());
        const Json& comp = it.value();
        if (!comp.is_object() || !comp.contains("num"))
            throw BadInput("field component needs a \"num\" polynomial");
        Poly num = poly_from_json(comp["num"], true);
        Poly den(1);
        if (comp.contains("den")) den = poly_from_json(comp["den"], true);
        Mono origin;
        if (den.terms.find(origin) == den.terms.end())
            throw ZeroDenominatorAtOrigin("component " + it.key());
        X.c[idx] = RatPoly(num, den);
    }
    return X;
}

inline std::vector<HoloField> parse_fields(const Json& j) {
    if (!j.is_object() || !j.contains("fields") || !j["fields"].is_array())
        throw BadInput("fields file needs a \"fields\" array");
    std::vector<HoloField> out;
    for (const Json& f : j["fields"]) out.push_back(field_from_json(f));
    return out;
}

inline Json fields_to_json(const std::vector<HoloField>& fields) {
    Json out;
    out["schema"] = 1;
    Json arr = Json::array();
    for (const HoloField& f : fields) arr.push_back(field_to_json(f));
    out["fields"] = arr;
    return out;
}

// ------------------------------------------------------------------- reports

inline std::string row_name(Row r) { return "R" + std::to_string(int(r)); }

inline Row row_from_name(const std::string& s) {
    if (s.size() == 2 && s[0] == 'R' && s[1] >= '1' && s[1] <= '7') return Row(s[1] - '0');
    throw BadInput("bad row name: " + s);
}

inline Json bigraded_to_json(const BigradedSymbol& bs) {
    Json out;
    out["row"] = row_name(bs.row);
    Json params = Json::object();
    if (bs.row == Row::R1 || bs.row == Row::R3 || bs.row == Row::R4) params["eps"] = bs.eps;
    if (bs.row == Row::R1) params["lambda"] = k_to_json(bs.lambda);
    if (bs.row == Row::R2) params["eitheta"] = k_to_json(bs.eitheta);
    out["params"] = params;
    return out;
}

inline Json modified_to_json(const ModifiedSymbolData& ms) {
    Json out;
    out["omega"] = mat_to_json(ms.Omega);
    out["tau"] = k_to_json(ms.tau);
    out["o1"] = k_to_json(ms.o1);
    out["o2"] = k_to_json(ms.o2);
    return out;
}

inline Json normal_form_to_json(const NormalFormRecord& nf) {
    Json out;
    out["row"] = row_name(nf.row);
    Json params = Json::object();
    if (nf.row == Row::R1 || nf.row == Row::R3 || nf.row == Row::R4) params["eps"] = nf.eps;
    if (nf.row == Row::R1) params["lambda"] = k_to_json(nf.lambda);
    if (nf.row == Row::R2) params["eitheta"] = k_to_json(nf.eitheta);
    params["tau"] = k_to_json(nf.tau);
    params["o1"] = k_to_json(nf.o1);
    params["o2"] = k_to_json(nf.o2);
    out["params"] = params;
    Json coeffs = Json::object();
    for (int j = 1; j < int(nf.coeffs.size()); ++j)
        if (!nf.coeffs[j].is_zero()) coeffs[std::to_string(j)] = mat_to_json(nf.coeffs[j]);
    out["coeffs"] = coeffs;
    out["order"] = nf.order;
    out["residual_dim"] = nf.residualSymmetryDim;
    if (!nf.residualDiscreteNote.empty()) out["residual_discrete"] = nf.residualDiscreteNote;
    if (nf.theta3Unresolved) out["theta3_unresolved"] = true;
    return out;
}

}  // namespace crnf
