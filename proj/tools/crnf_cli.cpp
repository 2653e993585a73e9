// crnf: classification and verification pipelines for 2-nondegenerate model
// hypersurfaces in C^4. Exact rational backend by default; reports are
// deterministic JSON on stdout.
//
// exit codes: 0 success, 1 malformed input or failed self-check,
//             2 ExtensionRequired / TruncationInconclusive (report emitted)

#include <CLI11.hpp>
#include <complex>
#include <fstream>
#include <iostream>

#include "crnf/json_io.hpp"
#include "crnf/selfcheck.hpp"

using namespace crnf;

namespace {

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int emit_error(const std::string& code, const std::string& message, int status) {
    Json j;
    j["schema"] = 1;
    j["error"] = Json{{"code", code}, {"message", message}};
    emit(j);
    return status;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw BadInput("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

Model load_model(const std::string& path, int order) {
    Model m = model_from_json(load_json(path));
    if (order > 0) m = model_at_order(m, order);
    return m;
}

// ------------------------------------------------------------ float backend

std::complex<double> kd(const K& x) {
    const double rad[4] = {1.0, 1.4142135623730951, 1.7320508075688772, 2.449489742783178};
    double re = 0, im = 0;
    for (int j = 0; j < 4; ++j) {
        re += x.c[2 * j].get_d() * rad[j];
        im += x.c[2 * j + 1].get_d() * rad[j];
    }
    return {re, im};
}

struct CMat2 {
    std::complex<double> a, b, c, d;
    CMat2 operator*(const CMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    CMat2 transpose() const { return {a, c, b, d}; }
    CMat2 conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }
    std::complex<double> det() const { return a * d - b * c; }
    std::complex<double> trace() const { return a + d; }
    double norm() const { return std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d); }
};

CMat2 cmat(const Mat2& m) { return {kd(m.a), kd(m.b), kd(m.c), kd(m.d)}; }

// numeric mirror of the exact row dispatch, zero tests at the given tolerance
Json classify_float(const Mat2& Hx, const Mat2& Sx, double tol) {
    CMat2 H = cmat(Hx), S = cmat(Sx);
    CMat2 P = H * S.conj() * H.transpose() * S;
    double hdet = H.det().real();
    if (std::abs(H.det().imag()) > tol || std::abs(hdet) <= tol)
        throw DegenerateInput("float backend: H not Hermitian nondegenerate");
    int hsign = hdet > 0 ? 1 : -1;

    Json out;
    Json params = Json::object();
    auto set_row = [&](const char* row) { out["row"] = row; };
    if (std::abs(S.det()) <= tol) {
        if (P.norm() <= tol) {
            set_row("R7");
        } else {
            set_row("R4");
            params["eps"] = hsign;
        }
    } else {
        std::complex<double> tr = P.trace(), det = P.det();
        std::complex<double> p = tr * 0.5;
        CMat2 Pm{P.a - p, P.b, P.c, P.d - p};
        if (Pm.norm() <= tol) {
            if (hsign > 0 || p.real() < 0) {
                set_row("R3");
                params["eps"] = p.real() > 0 ? 1 : -1;
            } else {
                set_row("R5");
            }
        } else {
            std::complex<double> disc = tr * tr - 4.0 * det;
            if (std::abs(disc) <= tol) {
                set_row("R6");
            } else {
                std::complex<double> D = std::sqrt(disc);
                std::complex<double> mu1 = (tr - D) * 0.5, mu2 = (tr + D) * 0.5;
                if (std::abs(mu1.imag()) <= tol && std::abs(mu2.imag()) <= tol) {
                    double m1 = mu1.real(), m2 = mu2.real();
                    if (m1 > m2) std::swap(m1, m2);
                    set_row("R1");
                    params["eps"] = hsign;
                    params["lambda"] = std::sqrt(m2 / m1);
                } else {
                    if (mu1.imag() > 0) std::swap(mu1, mu2);
                    set_row("R2");
                    std::complex<double> e2 = mu2 / std::abs(mu2);
                    params["eitheta_re"] = std::sqrt(e2).real();
                    params["eitheta_im"] = std::abs(std::sqrt(e2).imag());
                }
            }
        }
    }
    out["params"] = params;
    return out;
}

// ------------------------------------------------------------------ commands

int cmd_classify(const std::string& file, int order, const std::string& backend, double tol) {
    Model m = load_model(file, order);
    Json rep;
    rep["schema"] = 1;
    Json notes = Json::array();
    if (backend == "float") {
        Model pn = partial_normal_form(m);
        rep["backend"] = "float";
        rep["tolerance"] = tol;
        rep["bigraded"] = classify_float(pn.H, pn.S_zeta0(), tol);
        notes.push_back("float backend reports the bigraded symbol only");
        rep["notes"] = notes;
        emit(rep);
        return 0;
    }
    Model pn = partial_normal_form(m);
    BigradedSymbol bs = classify_parameters(pn.H, pn.S_zeta0());
    rep["bigraded"] = bigraded_to_json(bs);
    rep["modified"] = modified_to_json(extract_modified_symbol(pn, bs));
    NormalFormRecord nf = reduce_to_normal_form(m);
    rep["normal_form"] = normal_form_to_json(nf);
    rep["residual_dim"] = nf.residualSymmetryDim;
    if (nf.theta3Unresolved)
        notes.push_back("row 7 unipotent direction not visible at this truncation order");
    if (!nf.residualDiscreteNote.empty()) notes.push_back(nf.residualDiscreteNote);
    rep["notes"] = notes;
    emit(rep);
    return 0;
}

int cmd_normal_form(const std::string& file, int order) {
    Model m = load_model(file, order);
    NormalFormRecord nf = reduce_to_normal_form(m);
    Json rep;
    rep["schema"] = 1;
    rep["normal_form"] = normal_form_to_json(nf);
    rep["residual_dim"] = nf.residualSymmetryDim;
    rep["model"] = model_to_json(nf.normalized);
    emit(rep);
    return 0;
}

int cmd_equiv(const std::string& f1, const std::string& f2) {
    Model a = load_model(f1, 0), b = load_model(f2, 0);
    EquivalenceResult r = equivalent(a, b);
    Json rep;
    rep["schema"] = 1;
    switch (r.verdict) {
        case Verdict::Equivalent:
            rep["verdict"] = "equivalent-at-order-" + std::to_string(r.order);
            break;
        case Verdict::Distinct: rep["verdict"] = "distinct"; break;
        case Verdict::Inconclusive: rep["verdict"] = "inconclusive"; break;
    }
    rep["order"] = r.order;
    if (!r.detail.empty()) rep["detail"] = r.detail;
    emit(rep);
    return r.verdict == Verdict::Inconclusive ? 2 : 0;
}

int cmd_invariants(const std::string& file, int order) {
    Model m = load_model(file, order);
    Model pn = partial_normal_form(m);
    BigradedSymbol bs = classify_parameters(pn.H, pn.S_zeta0());
    Json rep;
    rep["schema"] = 1;
    rep["bigraded"] = bigraded_to_json(bs);
    rep["modified"] = modified_to_json(extract_modified_symbol(pn, bs));
    ConstancyReport cr = bigraded_constancy(m);
    rep["bigraded_constant"] = cr.constant;
    if (!cr.detail.empty()) rep["constancy_detail"] = cr.detail;
    emit(rep);
    return 0;
}

const char* hcase_name(HCase h) {
    switch (h) {
        case HCase::definite: return "definite";
        case HCase::mixed: return "mixed";
        case HCase::antidiag: return "antidiag";
    }
    return "?";
}

Json symbol_to_json(const CatalogSymbol& s) {
    Json j;
    j["row"] = row_name(s.row);
    if (s.row == Row::R1 || s.row == Row::R3 || s.row == Row::R4) j["eps"] = s.eps;
    if (s.row == Row::R1) j["lambda"] = k_to_json(s.lambda);
    if (s.row == Row::R2) j["eitheta"] = k_to_json(s.eitheta);
    j["tau"] = k_to_json(s.tau);
    return j;
}

int cmd_catalog_list() {
    Json rep;
    rep["schema"] = 1;
    Json arr = Json::array();
    for (const CatalogEntry& e : catalog()) {
        Json j;
        j["label"] = e.label;
        j["isad"] = e.expectedISAD;
        j["hcase"] = hcase_name(e.hcase);
        j["symbol"] = symbol_to_json(e.symbol);
        arr.push_back(j);
    }
    rep["entries"] = arr;
    emit(rep);
    return 0;
}

int cmd_catalog_emit(const std::string& label) {
    const CatalogEntry& e = catalog(label);
    Json rep;
    rep["schema"] = 1;
    rep["label"] = e.label;
    rep["isad"] = e.expectedISAD;
    rep["hcase"] = hcase_name(e.hcase);
    rep["H"] = mat_to_json(e.H);
    Json f;
    f["num"] = Json::array({poly_to_json(e.fnum[0]), poly_to_json(e.fnum[1]),
                            poly_to_json(e.fnum[2])});
    f["den"] = poly_to_json(e.fden);
    rep["f"] = f;
    rep["P"] = poly_to_json(e.P);
    rep["symbol"] = symbol_to_json(e.symbol);
    rep["model"] = model_to_json(catalog_model(e, kDefaultOrder));
    emit(rep);
    return 0;
}

int cmd_verify_symmetry(const std::string& modelfile, const std::string& fieldsfile) {
    Model m = load_model(modelfile, 0);
    std::vector<HoloField> fields = parse_fields(load_json(fieldsfile));
    HCase h;
    if (m.H == Mat2::identity())
        h = HCase::definite;
    else if (m.H == Mat2::diag(K(1), K(-1)))
        h = HCase::mixed;
    else if (m.H == Mat2::antidiag())
        h = HCase::antidiag;
    else
        throw BadInput("verify-symmetry needs H in one of the representative shapes "
                       "(identity, diag(1,-1), antidiagonal)");
    if (series_ent(m.S, 1) != series_ent(m.S, 2))
        throw BadInput("verify-symmetry needs a symmetric S series");
    auto to_poly = [](const UniSeries& s) {
        Poly p;
        for (int j = 0; j <= s.N; ++j) {
            Mono mo;
            mo.set(ZETA, j);
            p.add_term(mo, s.c[j]);
        }
        return p;
    };
    auto [q1, q2] = build_Q1Q2(h, to_poly(m.S.a), to_poly(m.S.b), to_poly(m.S.d));
    Poly P = (Poly::var(W) + Poly::var(WB)) * q2 - K(2) * q1;

    Json rep;
    rep["schema"] = 1;
    Json tang = Json::array();
    for (std::size_t j = 0; j < fields.size(); ++j) {
        TangencyResult t = tangency(fields[j], P, q2);
        Json tj;
        tj["index"] = j;
        tj["tangent"] = t.tangent;
        if (!t.tangent) tj["witness"] = poly_to_json(t.witness);
        tang.push_back(tj);
    }
    rep["tangency"] = tang;
    SymmetryAlgebraReport ar = algebra_report(fields, P, q2);
    rep["dimension"] = ar.dimension;
    Json gd = Json::object();
    for (auto& [grade, dim] : ar.gradedDims) gd[std::to_string(grade)] = dim;
    rep["graded_dims"] = gd;
    rep["closed"] = ar.closed;
    rep["graded"] = ar.graded;
    rep["verified"] = ar.allTangent && ar.closed;
    Json fails = Json::array();
    for (const std::string& s : ar.failures) fails.push_back(s);
    rep["failures"] = fails;
    emit(rep);
    return 0;
}

int cmd_self_check() {
    Json rep;
    rep["schema"] = 1;
    Json arr = Json::array();
    bool all = true;
    for (const CheckResult& r : run_acceptance_suite()) {
        arr.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
    }
    rep["checks"] = arr;
    rep["all_pass"] = all;
    emit(rep);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification of 2-nondegenerate model hypersurfaces in C^4"};
    app.require_subcommand(1);

    std::string file, file2, label, backend = "exact";
    int order = 0;
    double tolerance = 1e-9;

    auto* classify = app.add_subcommand("classify", "bigraded/modified symbol and normal form");
    classify->add_option("file", file, "model file (JSON)")->required();
    classify->add_option("--order", order, "re-truncate to this order");
    classify->add_option("--backend", backend, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    classify->add_option("--tolerance", tolerance, "zero tolerance for the float backend");

    auto* nform = app.add_subcommand("normal-form", "reduce to the normal form");
    nform->add_option("file", file, "model file (JSON)")->required();
    nform->add_option("--order", order, "re-truncate to this order");

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two models");
    equiv->add_option("file1", file, "first model file")->required();
    equiv->add_option("file2", file2, "second model file")->required();

    auto* invariants = app.add_subcommand("invariants", "symbol invariants and constancy");
    invariants->add_option("file", file, "model file (JSON)")->required();
    invariants->add_option("--order", order, "re-truncate to this order");

    auto* cat = app.add_subcommand("catalog", "homogeneous model catalog");
    cat->require_subcommand(1);
    auto* cat_list = cat->add_subcommand("list", "list the nine entries");
    auto* cat_emit = cat->add_subcommand("emit", "emit one entry's exact data");
    cat_emit->add_option("label", label, "entry label, e.g. III or V.A")->required();

    auto* verify = app.add_subcommand("verify-symmetry", "check fields against a model");
    verify->add_option("modelfile", file, "model file (JSON)")->required();
    verify->add_option("fieldsfile", file2, "fields file (JSON)")->required();

    auto* selfcheck = app.add_subcommand("self-check", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(file, order, backend, tolerance);
        if (nform->parsed()) return cmd_normal_form(file, order);
        if (equiv->parsed()) return cmd_equiv(file, file2);
        if (invariants->parsed()) return cmd_invariants(file, order);
        if (cat->parsed() && cat_list->parsed()) return cmd_catalog_list();
        if (cat->parsed() && cat_emit->parsed()) return cmd_catalog_emit(label);
        if (verify->parsed()) return cmd_verify_symmetry(file, file2);
        if (selfcheck->parsed()) return cmd_self_check();
    } catch (const ExtensionRequired& e) {
        return emit_error("ExtensionRequired", e.what(), 2);
    } catch (const TruncationInconclusive& e) {
        return emit_error("TruncationInconclusive", e.what(), 2);
    } catch (const NonHolomorphic& e) {
        return emit_error("NonHolomorphic", e.what(), 1);
    } catch (const ZeroDenominatorAtOrigin& e) {
        return emit_error("ZeroDenominatorAtOrigin", e.what(), 1);
    } catch (const BadInput& e) {
        return emit_error("ParseError", e.what(), 1);
    } catch (const InvalidModel& e) {
        return emit_error("InvalidModel", e.what(), 1);
    } catch (const DegenerateInput& e) {
        return emit_error("DegenerateInput", e.what(), 1);
    } catch (const std::exception& e) {
        return emit_error("Error", e.what(), 1);
    }
    return emit_error("Error", "no command", 1);
}
