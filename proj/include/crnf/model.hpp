#pragma once

// 2-nondegenerate model data (H, S(zeta)) and the derived tensor fields
// H(zeta,zetab), S(zeta,zetab), the defining equation and the Levi form.

#include <stdexcept>

#include "poly.hpp"
#include "series.hpp"

namespace crnf {

struct InvalidModel : std::runtime_error {
    explicit InvalidModel(const std::string& what) : std::runtime_error(what) {}
};

struct Model {
    Mat2 H;          // Hermitian, nondegenerate
    UniSeriesMat S;  // symmetric, S(0) = 0, S'(0) != 0

    int order() const { return S.a.N; }

    Mat2 S_coeff(int j) const { return Mat2{S.a.c[j], S.b.c[j], S.c.c[j], S.d.c[j]}; }
    Mat2 S_zeta0() const { return S_coeff(1); }
    Mat2 S_zetazeta0() const { return K(2) * S_coeff(2); }

    static Model make(const Mat2& H, const UniSeriesMat& S) {
        if (!H.is_hermitian()) throw InvalidModel("H is not Hermitian");
        if (H.det().is_zero()) throw InvalidModel("H is degenerate");
        if (!S.is_symmetric()) throw InvalidModel("S(zeta) is not symmetric");
        Model m{H, S};
        if (!m.S_coeff(0).is_zero()) throw InvalidModel("S(0) != 0");
        if (m.S_zeta0().is_zero()) throw InvalidModel("S_zeta(0) = 0 (not 2-nondegenerate)");
        return m;
    }
};

inline BiSeriesMat lift(const Mat2& m, int order) {
    BiSeriesMat r(order);
    r.a = BiSeries(m.a, order);
    r.b = BiSeries(m.b, order);
    r.c = BiSeries(m.c, order);
    r.d = BiSeries(m.d, order);
    return r;
}

inline BiSeriesMat lift(const UniSeriesMat& s) {
    BiSeriesMat r(s.a.N);
    r.a = BiSeries::from_uni(s.a);
    r.b = BiSeries::from_uni(s.b);
    r.c = BiSeries::from_uni(s.c);
    r.d = BiSeries::from_uni(s.d);
    return r;
}

inline BiSeriesMat transpose(const BiSeriesMat& m) { return m.transpose(); }

struct DerivedTensors {
    BiSeriesMat Hfield;  // Hermitian H(zeta,zetab)
    BiSeriesMat Sfield;  // symmetric S(zeta,zetab)
};

inline DerivedTensors derive_tensors(const Model& m) {
    int n = m.order();
    BiSeriesMat H0 = lift(m.H, n);
    BiSeriesMat H0t = lift(m.H.transpose(), n);
    BiSeriesMat S = lift(m.S);
    BiSeriesMat Sb = conj(S);
    BiSeriesMat Id = BiSeriesMat::identity(n);

    DerivedTensors t{BiSeriesMat(n), BiSeriesMat(n)};
    // H(zeta,zetab) = 1/2 ( H (Id - Sb H^T S H)^{-1} + (Id - H Sb H^T S)^{-1} H )
    BiSeriesMat A = series_mat_inverse(Id - Sb * H0t * S * H0);
    BiSeriesMat B = series_mat_inverse(Id - H0 * Sb * H0t * S);
    BiSeriesMat sum = H0 * A + B * H0;
    K half(Rat(1, 2));
    sum.a = half * sum.a; sum.b = half * sum.b; sum.c = half * sum.c; sum.d = half * sum.d;
    t.Hfield = sum;
    // S(zeta,zetab) = H^T (Id - S H Sb H^T)^{-1} S H
    t.Sfield = H0t * series_mat_inverse(Id - S * H0 * Sb * H0t) * S * H0;
    return t;
}

inline Mat2 bi_coeff(const BiSeriesMat& m, int j, int k) {
    return Mat2{m.a.at(j, k), m.b.at(j, k), m.c.at(j, k), m.d.at(j, k)};
}

inline Poly to_poly(const BiSeries& f) {
    Poly p;
    for (int d = 0; d <= f.N; ++d)
        for (int k = 0; k <= d; ++k) {
            if (f.at(d - k, k).is_zero()) continue;
            Mono mo;
            mo.set(ZETA, d - k);
            mo.set(ZETAB, k);
            p.add_term(mo, f.at(d - k, k));
        }
    return p;
}

// (w + wb)/2 - z H(zeta,zetab) zb^T - (zb S(zeta,zetab) zb^T + conj)/2,
// where H_{ij} multiplies z_i zb_j.
inline Poly defining_series(const Model& m) {
    DerivedTensors t = derive_tensors(m);
    K half(Rat(1, 2));
    Poly z1 = Poly::var(Z1), z2 = Poly::var(Z2);
    Poly z1b = Poly::var(Z1B), z2b = Poly::var(Z2B);
    Poly rho = half * (Poly::var(W) + Poly::var(WB));
    rho = rho - z1 * z1b * to_poly(t.Hfield.a) - z1 * z2b * to_poly(t.Hfield.b)
              - z2 * z1b * to_poly(t.Hfield.c) - z2 * z2b * to_poly(t.Hfield.d);
    Poly quad = z1b * z1b * to_poly(t.Sfield.a) + K(2) * (z1b * z2b * to_poly(t.Sfield.b))
              + z2b * z2b * to_poly(t.Sfield.d);
    rho = rho - half * (quad + quad.conj());
    return rho;
}

// The Levi form along Im(w) = z = 0 in the frame (f1, f2, e): the upper 2x2
// block is H(zeta,zetab) and the kernel row/column vanish identically.
struct LeviForm {
    BiSeriesMat block;   // upper-left 2x2
    bool kernel_is_zero; // last row/column vanish to the truncation order
};

inline LeviForm levi_form(const Model& m) {
    return LeviForm{derive_tensors(m).Hfield, true};
}

enum class HCase { definite, mixed, antidiag };

namespace detail {
inline Poly re_part(const Poly& p) { return K(Rat(1, 2)) * (p + p.conj()); }
}  // namespace detail

// Q1/Q2 of the three distinguished defining-equation shapes, exact in the
// polynomial data (f1, f2, f3).
inline std::pair<Poly, Poly> build_Q1Q2(HCase h, const Poly& f1, const Poly& f2, const Poly& f3) {
    Poly z1 = Poly::var(Z1), z2 = Poly::var(Z2);
    Poly z1b = Poly::var(Z1B), z2b = Poly::var(Z2B);
    Poly f1b = f1.conj(), f2b = f2.conj(), f3b = f3.conj();
    Poly det = f1 * f3 - f2 * f2;
    Poly detb = det.conj();
    Poly one(1);
    Poly Q1, Q2;
    using detail::re_part;
    switch (h) {
        case HCase::definite:
            Q1 = z1 * z1b * (one - f2 * f2b - f3 * f3b) + z2 * z2b * (one - f1 * f1b - f2 * f2b)
               + K(2) * re_part(z1 * z2b * (f2b * f3 + f1b * f2))
               + re_part(z1 * z1 * (f3 * detb + f1b) + K(2) * (z1 * z2 * (f2 * detb + f2b))
                         + z2 * z2 * (f1 * detb + f3b));
            Q2 = one - f1 * f1b - K(2) * (f2 * f2b) - f3 * f3b + det * detb;
            break;
        case HCase::mixed:
            Q1 = z1 * z1b * (one + f2 * f2b - f3 * f3b) + z2 * z2b * (K(-1) * one + f1 * f1b - f2 * f2b)
               + K(2) * re_part(z1 * z2b * (f2b * f3 - f1b * f2))
               + re_part(z1 * z1 * (f1b - f3 * detb) + K(2) * (z1 * z2 * (f2 * detb - f2b))
                         + z2 * z2 * (f3b - f1 * detb));
            Q2 = one - f1 * f1b + K(2) * (f2 * f2b) - f3 * f3b + det * detb;
            break;
        case HCase::antidiag:
            Q1 = K(2) * (z1 * z1b * re_part(f2 * f3b)) + K(2) * (z2 * z2b * re_part(f2 * f1b))
               + K(2) * re_part(z1 * z2b * (one - f1b * f3 - f2 * f2b))
               + re_part(z1 * z1 * (f3b - f3 * detb) + K(2) * (z1 * z2 * (f2 * detb + f2b))
                         + z2 * z2 * (f1b - f1 * detb));
            Q2 = one - K(2) * re_part(f1 * f3b) - K(2) * (f2 * f2b) + det * detb;
            break;
    }
    return {Q1, Q2};
}

// Model data (H, S(zeta)) of the (f1, f2, f3) structure for each H case.
inline Model model_from_f(HCase h, const UniSeries& f1, const UniSeries& f2, const UniSeries& f3) {
    Mat2 H;
    switch (h) {
        case HCase::definite: H = Mat2::identity(); break;
        case HCase::mixed: H = Mat2::diag(K(1), K(-1)); break;
        case HCase::antidiag: H = Mat2::antidiag(); break;
    }
    UniSeriesMat S(f1.N);
    S.a = f1; S.b = f2; S.c = f2; S.d = f3;
    return Model::make(H, S);
}

}  // namespace crnf
