#pragma once

// The nine homogeneous models as first-class data: exact defining
// polynomials, closed-form (f1, f2, f3) realizations, the symbol data they
// realize, and cross-consistency checks between all three descriptions.

#include <string>
#include <vector>

#include "model.hpp"
#include "normal_form.hpp"

namespace crnf {

// ------------------------------------------------------ series ingredients

// Coefficients of a polynomial in zeta only, as a truncated series.
inline UniSeries poly_to_series(const Poly& p, int order) {
    UniSeries r(order);
    for (auto& [m, k] : p.terms) {
        for (int v = 0; v < 8; ++v)
            if (v != ZETA && m.exp(v) != 0)
                throw std::invalid_argument("poly_to_series: not univariate in zeta");
        if (m.exp(ZETA) <= order) r.c[m.exp(ZETA)] = k;
    }
    return r;
}

inline UniSeries series_sin(int order) {
    UniSeries r(order);
    Rat fact = 1;
    for (int k = 1; k <= order; ++k) {
        fact *= k;
        if (k % 2 == 1) r.c[k] = K(Rat((k / 2) % 2 == 0 ? 1 : -1) / fact);
    }
    return r;
}

inline UniSeries series_cos(int order) {
    UniSeries r(order);
    Rat fact = 1;
    r.c[0] = K(1);
    for (int k = 1; k <= order; ++k) {
        fact *= k;
        if (k % 2 == 0) r.c[k] = K(Rat((k / 2) % 2 == 0 ? 1 : -1) / fact);
    }
    return r;
}

// ln(1 + zeta)
inline UniSeries series_ln1p(int order) {
    UniSeries r(order);
    for (int k = 1; k <= order; ++k) r.c[k] = K(Rat(k % 2 == 1 ? 1 : -1, k));
    return r;
}

// ------------------------------------------------- closed-form realizations

struct ClosedForm {
    UniSeries f1, f2, f3;
};

// The distinguished (f1, f2, f3) data per symbol row, with the documented
// simplifying zeta-reparametrizations applied for tau > 0.
inline ClosedForm closed_form_f(Row row, const K& lambda, const K& eitheta, const K& tau,
                                int order) {
    UniSeries zero(order), zeta = UniSeries::zeta(order);
    switch (row) {
        case Row::R1: {
            if (tau.is_zero()) return {zeta, zero, lambda * zeta};
            auto sl = sqrt_in_K(lambda);
            if (!sl) throw ExtensionRequired("sqrt(lambda) outside the coefficient field");
            K rl = *sl;
            if (sign_real(rl) < 0) rl = -rl;
            UniSeries sc = series_sin(order) * series_cos(order);
            K l2p = lambda * lambda + K(1), l2m = lambda * lambda - K(1);
            K c1 = (K(2) * tau * rl).inv();
            K c3 = (K(2) * tau * lambda * rl).inv();
            UniSeries f1 = c1 * (l2p * zeta - l2m * sc);
            UniSeries f2 = ((K(2) * tau * lambda).inv() * l2m) * (series_sin(order) * series_sin(order));
            UniSeries f3 = c3 * (l2p * zeta + l2m * sc);
            return {f1, f2, f3};
        }
        case Row::R2: {
            if (tau.is_zero()) return {zeta, zero, eitheta * zeta};
            auto sq = sqrt_in_K(eitheta);
            if (!sq) throw ExtensionRequired("sqrt(e^{i theta}) outside the coefficient field");
            K s = *sq;  // e^{i theta/2}, either branch (the two differ by a sign)
            UniSeries sc = series_sin(order) * series_cos(order);
            K e2 = eitheta * eitheta, e2b = e2.conj();
            K half_tau = (K(2) * tau).inv();
            UniSeries f1 = (s.conj() * half_tau) * ((K(1) + e2) * zeta + (K(1) - e2) * sc);
            K i = K::i();
            K sin_theta = (eitheta - eitheta.conj()) * (K(2) * i).inv();
            UniSeries f2 = (-(i * sin_theta) * tau.inv()) * (series_sin(order) * series_sin(order));
            UniSeries f3 = (s * half_tau) * ((K(1) + e2b) * zeta + (K(1) - e2b) * sc);
            return {f1, f2, f3};
        }
        case Row::R3:
        case Row::R5:
            return {zero, zeta, zero};
        case Row::R4: {
            UniSeries f2 = UniSeries::monomial(2, tau * K(Rat(1, 2)), order);
            UniSeries f3 = UniSeries::monomial(3, tau * tau * K(Rat(1, 3)), order);
            return {zeta, f2, f3};
        }
        case Row::R6: {
            if (tau.is_zero()) return {zeta, zeta, zero};
            K c = (K(2) * tau).inv();
            UniSeries f1 = c * (zeta + zeta * zeta);
            return {f1, c * zeta, zero};
        }
        case Row::R7:
            return {zeta, zero, zero};
    }
    throw std::invalid_argument("closed_form_f: unknown row");
}

// -------------------------------------------- rational-coefficient Q1 / Q2

// Rational function num/den; no reduction is performed (denominators stay
// small powers of the catalog entries' linear denominators).
struct RatPoly {
    Poly num;
    Poly den = Poly(1);

    RatPoly() = default;
    RatPoly(const Poly& n) : num(n) {}
    RatPoly(const Poly& n, const Poly& d) : num(n), den(d) {}

    RatPoly conj() const { return {num.conj(), den.conj()}; }
    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend RatPoly operator*(const K& k, const RatPoly& a) { return {k * a.num, a.den}; }
    // exact zero test (numerator)
    bool is_zero() const { return num.is_zero(); }
};

// Q1/Q2 for rational (f1, f2, f3); same three closed forms as build_Q1Q2.
inline std::pair<RatPoly, RatPoly> build_Q1Q2_rational(HCase h, const RatPoly& f1,
                                                       const RatPoly& f2, const RatPoly& f3) {
    RatPoly z1{Poly::var(Z1)}, z2{Poly::var(Z2)};
    RatPoly z1b{Poly::var(Z1B)}, z2b{Poly::var(Z2B)};
    RatPoly f1b = f1.conj(), f2b = f2.conj(), f3b = f3.conj();
    RatPoly det = f1 * f3 - f2 * f2;
    RatPoly detb = det.conj();
    RatPoly one{Poly(1)};
    auto re = [](const RatPoly& p) { return K(Rat(1, 2)) * (p + p.conj()); };
    RatPoly Q1, Q2;
    switch (h) {
        case HCase::definite:
            Q1 = z1 * z1b * (one - f2 * f2b - f3 * f3b) + z2 * z2b * (one - f1 * f1b - f2 * f2b)
               + K(2) * re(z1 * z2b * (f2b * f3 + f1b * f2))
               + re(z1 * z1 * (f3 * detb + f1b) + K(2) * (z1 * z2 * (f2 * detb + f2b))
                    + z2 * z2 * (f1 * detb + f3b));
            Q2 = one - f1 * f1b - K(2) * (f2 * f2b) - f3 * f3b + det * detb;
            break;
        case HCase::mixed:
            Q1 = z1 * z1b * (one + f2 * f2b - f3 * f3b)
               + z2 * z2b * (K(-1) * one + f1 * f1b - f2 * f2b)
               + K(2) * re(z1 * z2b * (f2b * f3 - f1b * f2))
               + re(z1 * z1 * (f1b - f3 * detb) + K(2) * (z1 * z2 * (f2 * detb - f2b))
                    + z2 * z2 * (f3b - f1 * detb));
            Q2 = one - f1 * f1b + K(2) * (f2 * f2b) - f3 * f3b + det * detb;
            break;
        case HCase::antidiag:
            Q1 = K(2) * (z1 * z1b * re(f2 * f3b)) + K(2) * (z2 * z2b * re(f2 * f1b))
               + K(2) * re(z1 * z2b * (one - f1b * f3 - f2 * f2b))
               + re(z1 * z1 * (f3b - f3 * detb) + K(2) * (z1 * z2 * (f2 * detb + f2b))
                    + z2 * z2 * (f1b - f1 * detb));
            Q2 = one - K(2) * re(f1 * f3b) - K(2) * (f2 * f2b) + det * detb;
            break;
    }
    return {Q1, Q2};
}

// ---------------------------------------------------------- catalog entries

struct CatalogSymbol {
    Row row = Row::R1;
    int eps = 1;       // meaningful for rows 1, 3, 4
    K lambda = K(0);   // row 1
    K eitheta = K(0);  // row 2
    K tau = K(0);
};

struct CatalogEntry {
    std::string label;
    HCase hcase = HCase::definite;
    Mat2 H;
    Poly fnum[3];       // f_j = fnum[j] / fden, univariate in zeta
    Poly fden = Poly(1);
    Poly P;             // denominator-cleared defining polynomial
    int expectedISAD = 0;
    CatalogSymbol symbol;
    bool isadVerifiedHere = false;  // true when the symmetry module rebuilds it
};

namespace catalog_detail {

inline Mat2 h_matrix(HCase h) {
    switch (h) {
        case HCase::definite: return Mat2::identity();
        case HCase::mixed: return Mat2::diag(K(1), K(-1));
        case HCase::antidiag: return Mat2::antidiag();
    }
    return Mat2::identity();
}

inline std::vector<CatalogEntry> make_entries() {
    using P = Poly;
    P w = P::var(W), wb = P::var(WB);
    P z1 = P::var(Z1), z2 = P::var(Z2), z1b = P::var(Z1B), z2b = P::var(Z2B);
    P zt = P::var(ZETA), ztb = P::var(ZETAB);
    P one(1);
    P x = zt * ztb;
    K i = K::i(), r2 = K::sqrt2(), r3 = K::sqrt3();
    auto re2 = [](const P& p) { return p + p.conj(); };  // 2 Re
    auto re = [](const P& p) { return K(Rat(1, 2)) * (p + p.conj()); };

    std::vector<CatalogEntry> v;

    {  // Type VII: Re(w) = z1 z2b + z1b z2 + Re(zeta z2b^2)
        CatalogEntry e;
        e.label = "VII";
        e.hcase = HCase::antidiag;
        e.fnum[0] = zt;
        e.P = w + wb - K(2) * (z1 * z2b) - K(2) * (z1b * z2) - zt * z2b * z2b - ztb * z2 * z2;
        e.expectedISAD = 16;
        e.symbol = {Row::R7, 1, K(0), K(0), K(0)};
        v.push_back(e);
    }
    {  // Type VI: Re(w) = (|z1|^2 - |z2|^2 - 2 Re(zeta z1b z2b)) / (1 + |zeta|^2)
        CatalogEntry e;
        e.label = "VI";
        e.hcase = HCase::mixed;
        e.fnum[1] = zt;
        e.P = (w + wb) * (one + x) - K(2) * (z1 * z1b) + K(2) * (z2 * z2b)
            + K(2) * re2(zt * z1b * z2b);
        e.expectedISAD = 15;
        e.symbol = {Row::R3, -1, K(0), K(0), K(0)};
        v.push_back(e);
    }
    {  // Type V.A: Re(w) = (|z1|^2 + |z2|^2 + 2 Re(zeta z1b z2b)) / (1 - |zeta|^2)
        CatalogEntry e;
        e.label = "V.A";
        e.hcase = HCase::definite;
        e.fnum[1] = zt;
        e.P = (w + wb) * (one - x) - K(2) * (z1 * z1b) - K(2) * (z2 * z2b)
            - K(2) * re2(zt * z1b * z2b);
        e.expectedISAD = 15;
        e.symbol = {Row::R3, 1, K(0), K(0), K(0)};
        v.push_back(e);
    }
    {  // Type V.B: Re(w) = (2 Re(z1 z2b) + 2 Re(zeta z1b z2b)) / (1 - |zeta|^2)
        CatalogEntry e;
        e.label = "V.B";
        e.hcase = HCase::antidiag;
        e.fnum[1] = zt;
        e.P = (w + wb) * (one - x) - K(2) * (z1 * z2b) - K(2) * (z1b * z2)
            - K(2) * re2(zt * z1b * z2b);
        e.expectedISAD = 15;
        e.symbol = {Row::R5, 1, K(0), K(0), K(0)};
        v.push_back(e);
    }
    {  // Type IV.A: Re(w) = (|z1|^2 + Re(zeta z1b^2)) / (1 - |zeta|^2) + |z2|^2
        CatalogEntry e;
        e.label = "IV.A";
        e.hcase = HCase::definite;
        e.fnum[0] = zt;
        e.P = (w + wb) * (one - x) - K(2) * (z1 * z1b) - re2(zt * z1b * z1b)
            - K(2) * (z2 * z2b * (one - x));
        e.expectedISAD = 10;
        e.symbol = {Row::R4, 1, K(0), K(0), K(0)};
        v.push_back(e);
    }
    {  // Type IV.B: Re(w) = (|z1|^2 + Re(zeta z1b^2)) / (1 - |zeta|^2) - |z2|^2
        CatalogEntry e;
        e.label = "IV.B";
        e.hcase = HCase::mixed;
        e.fnum[0] = zt;
        e.P = (w + wb) * (one - x) - K(2) * (z1 * z1b) - re2(zt * z1b * z1b)
            + K(2) * (z2 * z2b * (one - x));
        e.expectedISAD = 10;
        e.symbol = {Row::R4, -1, K(0), K(0), K(0)};
        v.push_back(e);
    }
    {  // Type III: the three (1 - |zeta|^2)-power blocks
        CatalogEntry e;
        e.label = "III";
        e.hcase = HCase::mixed;
        e.fnum[0] = K(2) * zt;
        e.fnum[1] = r3 * (zt * zt);
        e.fnum[2] = K(2) * (zt * zt * zt);
        P t1 = K(2) * re(K(2) * (z1 * z1b) + zt * z1b * z1b);
        P t2 = re(K(-9) * (z1 * z1b) - K(3) * (z2 * z2b) - K(6) * (zt * z1b * z1b)
                  + K(4) * r3 * (zt * z1 * z2b) + K(2) * r3 * (zt * zt * z1b * z2b));
        P t3 = K(2) * re(K(3) * (z1 * z1b) + z2 * z2b + K(3) * (zt * z1b * z1b)
                         - K(2) * r3 * (zt * z1 * z2b) + zt * zt * zt * z2b * z2b
                         - K(2) * r3 * (zt * zt * z1b * z2b));
        P omx = one - x;
        e.P = (w + wb) * omx * omx * omx
            - K(2) * (t1 * omx * omx + t2 * omx + t3);
        e.expectedISAD = 9;
        e.symbol = {Row::R4, -1, K(0), K(0), r3 * K(Rat(1, 2))};
        e.isadVerifiedHere = true;
        v.push_back(e);
    }
    {  // Type II
        CatalogEntry e;
        e.label = "II";
        e.hcase = HCase::antidiag;
        e.fnum[0] = zt + zt * zt;
        e.fnum[1] = zt;
        P u1 = z1 * z2b + z1b * z2 + re2(ztb * z1 * z2)
             + re(z2 * z2 * (ztb * ztb + ztb));
        P u2 = z2 * z2b * (K(2) * one + zt + ztb)
             + re(z2 * z2 * (x + ztb * ztb + K(2) * ztb));
        P omx = one - x;
        e.P = (w + wb) * omx * omx - K(2) * (u1 * omx + x * u2);
        e.expectedISAD = 8;
        e.symbol = {Row::R6, 1, K(0), K(0), K(Rat(1, 2))};
        e.isadVerifiedHere = true;
        v.push_back(e);
    }
    {  // Type I: rational f's with denominator 2 zeta + 1
        CatalogEntry e;
        e.label = "I";
        e.hcase = HCase::antidiag;
        e.fnum[0] = (K(1) + i) * (zt * zt + zt);
        e.fnum[1] = (r2 * i) * (zt * zt);
        e.fnum[2] = (i - K(1)) * (zt * zt + zt);
        e.fden = K(2) * zt + one;
        P D = e.fden, Db = D.conj();
        P X = (-(K(1) + i)) * ((ztb + ztb * ztb) * (z1 * z1))
            + (K(-2) * r2 * i) * (z1 * z2 * ztb * ztb)
            + (K(1) - i) * ((ztb + ztb * ztb) * (z2 * z2));
        P sum = K(-2) * re(z1 * z2b * ((K(1) + i) * x + i * (zt + ztb) + i * one))
              + r2 * (z1 * z1b * (x + re(((K(1) - i)) * zt)))
              + r2 * (z2 * z2b * (x + re(((K(1) + i)) * zt)))
              + re(z1 * z1 * ((i - K(1)) * x - K(2) * ztb - one - i * one))
              - K(2) * r2 * re(i * (z1 * z2 * (x + ztb)))
              + re(z2 * z2 * ((K(1) + i) * x + K(2) * ztb + one - i * one));
        P N = (z1 * z2b + z1b * z2) * D * Db + re(X) + K(2) * (x * sum);
        e.P = (w + wb) * D * Db - K(2) * N;
        e.expectedISAD = 8;
        e.symbol = {Row::R2, 1, K(0), i, r2 * K(Rat(1, 2))};
        e.isadVerifiedHere = true;
        v.push_back(e);
    }
    for (auto& e : v) e.H = h_matrix(e.hcase);
    return v;
}

}  // namespace catalog_detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = catalog_detail::make_entries();
    return entries;
}

inline const CatalogEntry& catalog(const std::string& label) {
    for (const CatalogEntry& e : catalog())
        if (e.label == label) return e;
    throw std::invalid_argument("unknown catalog label: " + label);
}

// Series model (H, S(zeta)) of an entry, expanding rational f's.
inline Model catalog_model(const CatalogEntry& e, int order) {
    UniSeries den = poly_to_series(e.fden, order);
    UniSeries deninv = den.inverse();
    UniSeries f[3];
    for (int j = 0; j < 3; ++j) f[j] = poly_to_series(e.fnum[j], order) * deninv;
    return model_from_f(e.hcase, f[0], f[1], f[2]);
}

// ------------------------------------------------ bigraded-symbol constancy

inline bool biseries_is_constant(const BiSeries& f) {
    for (int j = 0; j <= f.N; ++j)
        for (int k = 0; j + k <= f.N; ++k)
            if ((j || k) && !f.at(j, k).is_zero()) return false;
    return true;
}

struct ConstancyReport {
    bool constant = false;
    std::string detail;
};

// Whether the row classification (and its continuous parameters) of the
// bigraded symbol stays constant along the model to the truncation order,
// certified by series identities of the dispatch invariant
// P = H conj(S02) H^T S02 evaluated on the symbol fields.
inline ConstancyReport bigraded_constancy(const Model& m) {
    BigradedSymbol par = classify_parameters(m.H, m.S_zeta0());
    SymbolFields sf = symbol_fields(m);
    BiSeriesMat Hf = derive_tensors(m).Hfield;
    BiSeriesMat Sf = sf.S02field;
    BiSeriesMat Pf = Hf * conj(Sf) * Hf.transpose() * Sf;
    BiSeries tr = Pf.a + Pf.d;
    BiSeries det = Pf.a * Pf.d - Pf.b * Pf.c;
    BiSeries detS = Sf.a * Sf.d - Sf.b * Sf.c;
    K tr0 = tr.at(0, 0), det0 = det.at(0, 0);
    switch (par.row) {
        case Row::R1:
        case Row::R2: {
            // eigenvalue ratio: tr^2 / det constant
            BiSeries lhs = tr * tr;
            bool ok = (det0 * lhs == tr0 * tr0 * det);
            return {ok, ok ? "eigenvalue ratio of the dispatch invariant is constant"
                           : "eigenvalue ratio of the dispatch invariant varies with zeta"};
        }
        case Row::R3:
        case Row::R5: {
            BiSeriesMat tl = Pf;  // traceless part, doubled
            tl.a = K(2) * Pf.a - tr;
            tl.d = K(2) * Pf.d - tr;
            tl.b = K(2) * Pf.b;
            tl.c = K(2) * Pf.c;
            bool ok = tl.a.is_zero() && tl.b.is_zero() && tl.c.is_zero() && tl.d.is_zero();
            return {ok, ok ? "dispatch invariant stays scalar"
                           : "dispatch invariant leaves the scalar family"};
        }
        case Row::R4: {
            bool ok = detS.is_zero() && det.is_zero() && !tr0.is_zero();
            return {ok, ok ? "S02 field stays rank one with nonvanishing invariant trace"
                           : "rank or trace condition fails along the curve"};
        }
        case Row::R6: {
            BiSeries disc = tr * tr - K(4) * det;
            Mat2 off{K(2) * Pf.a.at(0, 0) - tr0, K(2) * Pf.b.at(0, 0), K(2) * Pf.c.at(0, 0),
                     K(2) * Pf.d.at(0, 0) - tr0};
            bool ok = disc.is_zero() && !off.is_zero();
            return {ok, ok ? "double eigenvalue with nontrivial nilpotent part persists"
                           : "eigenvalues separate along the curve"};
        }
        case Row::R7: {
            bool ok = Pf.a.is_zero() && Pf.b.is_zero() && Pf.c.is_zero() && Pf.d.is_zero()
                      && detS.is_zero();
            return {ok, ok ? "dispatch invariant vanishes identically"
                           : "dispatch invariant becomes nonzero along the curve"};
        }
    }
    return {false, "unclassified"};
}

// --------------------------------------------------------------- the checks

struct CatalogCheck {
    std::string label;
    bool clearedEquationMatchesQ = false;  // (a) P vs Q1/Q2 cross-multiplied
    bool vanishesOnModel = false;          // (b) P vanishes on the series model
    bool symbolMatches = false;            // (c) modified symbol row/parameters
    bool rowConstant = false;              // bigraded symbol constant along curve
    std::string detail;
};

namespace catalog_detail {

inline Poly truncate_pair_degree(const Poly& p, int d) {
    Poly r;
    for (auto& [m, k] : p.terms)
        if (m.exp(ZETA) + m.exp(ZETAB) <= d) r.add_term(m, k);
    return r;
}

}  // namespace catalog_detail

inline CatalogCheck catalog_check(const CatalogEntry& e, int order = 10) {
    CatalogCheck c;
    c.label = e.label;
    // (a) the cleared polynomial agrees with Re(w) = Q1/Q2: with
    //     P = (w + wb) D - 2 N, check Q1 * D == N * Q2 (cross-multiplied).
    RatPoly f[3];
    for (int j = 0; j < 3; ++j) f[j] = RatPoly(e.fnum[j], e.fden);
    auto [q1, q2] = build_Q1Q2_rational(e.hcase, f[0], f[1], f[2]);
    Poly D = e.P.derivative(W);
    Poly N = K(Rat(1, 2)) * ((Poly::var(W) + Poly::var(WB)) * D - e.P);
    c.clearedEquationMatchesQ = (q1.num * q2.den * D == N * q2.num * q1.den);

    // (b) P vanishes on the graph of the defining series to the valid order.
    Model m = catalog_model(e, order);
    Poly rho = defining_series(m);
    Poly G = K(Rat(1, 2)) * (Poly::var(W) + Poly::var(WB)) - rho;
    Poly sub = e.P.substitute(W, G).substitute(WB, G);
    int dmax = 0;
    for (auto& [mo, k] : e.P.terms) dmax = std::max(dmax, mo.exp(ZETA) + mo.exp(ZETAB));
    c.vanishesOnModel = catalog_detail::truncate_pair_degree(sub, order - dmax).is_zero();

    // (c) the modified symbol of the model matches the stored data.
    try {
        Model pm = partial_normal_form(m);
        BigradedSymbol bs = classify_parameters(pm.H, pm.S_zeta0());
        ModifiedSymbolData md = extract_modified_symbol(pm, bs);
        bool ok = bs.row == e.symbol.row && md.tau == e.symbol.tau && md.ON.is_zero();
        if (e.symbol.row == Row::R1 || e.symbol.row == Row::R3 || e.symbol.row == Row::R4)
            ok = ok && bs.eps == e.symbol.eps;
        if (e.symbol.row == Row::R1) ok = ok && bs.lambda == e.symbol.lambda;
        if (e.symbol.row == Row::R2) ok = ok && bs.eitheta == e.symbol.eitheta;
        c.symbolMatches = ok;
        if (!ok) c.detail += "symbol mismatch; ";
    } catch (const std::exception& ex) {
        c.symbolMatches = false;
        c.detail += std::string("symbol extraction failed: ") + ex.what() + "; ";
    }

    ConstancyReport cr = bigraded_constancy(m);
    c.rowConstant = cr.constant;
    if (!cr.constant) c.detail += cr.detail + "; ";
    return c;
}

inline std::vector<CatalogCheck> catalog_check_all(int order = 10) {
    std::vector<CatalogCheck> out;
    for (const CatalogEntry& e : catalog()) out.push_back(catalog_check(e, order));
    return out;
}

}  // namespace crnf
