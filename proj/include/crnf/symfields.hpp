#pragma once

// Holomorphic vector fields with exact rational-function coefficients,
// tangency certificates against defining polynomials, Lie brackets, and
// symmetry-algebra closure/grading reports.

#include <map>
#include <string>
#include <vector>

#include "catalog.hpp"

namespace crnf {

struct ZeroDefining : std::invalid_argument {
    ZeroDefining() : std::invalid_argument("defining polynomial is zero") {}
};

// Component order: coefficients of d/dw, d/dz1, d/dz2, d/dzeta.
constexpr Var kFieldVars[4] = {W, Z1, Z2, ZETA};

inline bool ratpoly_eq(const RatPoly& a, const RatPoly& b) {
    return a.num * b.den == b.num * a.den;
}

inline RatPoly ratpoly_derivative(const RatPoly& f, Var v) {
    return {f.num.derivative(v) * f.den - f.num * f.den.derivative(v), f.den * f.den};
}

struct HoloField {
    RatPoly c[4];

    static HoloField zero() { return {}; }

    bool is_zero() const {
        for (int j = 0; j < 4; ++j)
            if (!c[j].is_zero()) return false;
        return true;
    }

    // structural validity: holomorphic coefficients, denominators invertible at 0
    void validate() const {
        for (int j = 0; j < 4; ++j) {
            for (auto& [m, k] : c[j].num.terms)
                for (int v = WB; v <= ZETAB; ++v)
                    if (m.exp(v) != 0)
                        throw std::invalid_argument("holomorphic field has barred variables");
            for (auto& [m, k] : c[j].den.terms)
                for (int v = WB; v <= ZETAB; ++v)
                    if (m.exp(v) != 0)
                        throw std::invalid_argument("holomorphic field has barred denominators");
            Mono origin;
            auto it = c[j].den.terms.find(origin);
            if (it == c[j].den.terms.end())
                throw std::invalid_argument("field denominator vanishes at the origin");
        }
    }

    friend HoloField operator+(const HoloField& a, const HoloField& b) {
        HoloField r;
        for (int j = 0; j < 4; ++j) r.c[j] = a.c[j] + b.c[j];
        return r;
    }
    friend HoloField operator-(const HoloField& a, const HoloField& b) {
        HoloField r;
        for (int j = 0; j < 4; ++j) r.c[j] = a.c[j] - b.c[j];
        return r;
    }
    friend HoloField operator*(const K& k, const HoloField& a) {
        HoloField r;
        for (int j = 0; j < 4; ++j) r.c[j] = k * a.c[j];
        return r;
    }
    friend bool operator==(const HoloField& a, const HoloField& b) {
        for (int j = 0; j < 4; ++j)
            if (!ratpoly_eq(a.c[j], b.c[j])) return false;
        return true;
    }
};

// X(f) for a polynomial f, as a rational function.
inline RatPoly apply_field(const HoloField& X, const Poly& f) {
    RatPoly r;
    for (int j = 0; j < 4; ++j) {
        if (X.c[j].is_zero()) continue;
        r = r + X.c[j] * RatPoly(f.derivative(kFieldVars[j]));
    }
    return r;
}

// (X + Xbar)(f): the conjugate field acts on the barred variables with
// conjugated coefficients.
inline RatPoly apply_field_real(const HoloField& X, const Poly& f) {
    RatPoly r = apply_field(X, f);
    for (int j = 0; j < 4; ++j) {
        if (X.c[j].is_zero()) continue;
        r = r + X.c[j].conj() * RatPoly(f.derivative(conj_var(kFieldVars[j])));
    }
    return r;
}

inline HoloField bracket(const HoloField& X, const HoloField& Y) {
    HoloField r;
    for (int k = 0; k < 4; ++k) {
        RatPoly acc;
        for (int j = 0; j < 4; ++j) {
            if (!X.c[j].is_zero()) acc = acc + X.c[j] * ratpoly_derivative(Y.c[k], kFieldVars[j]);
            if (!Y.c[j].is_zero()) acc = acc - Y.c[j] * ratpoly_derivative(X.c[k], kFieldVars[j]);
        }
        r.c[k] = acc;
    }
    return r;
}

// weighted Euler field: wt(w) = 2, wt(z1) = wt(z2) = 1, wt(zeta) = 0
inline HoloField euler_field() {
    HoloField e;
    e.c[0] = RatPoly(K(2) * Poly::var(W));
    e.c[1] = RatPoly(Poly::var(Z1));
    e.c[2] = RatPoly(Poly::var(Z2));
    return e;
}

// ------------------------------------------------------------------ tangency

struct TangencyResult {
    bool tangent = false;
    int multiplierPower = 0;  // power of Q2 needed to exhibit divisibility
    Poly quotient;            // cofactor when tangent
    Poly witness;             // non-divisible remainder otherwise
};

// Certificate that (X + Xbar) is tangent to {P = 0}: after clearing the
// field's denominators, P must divide Q2^j (X + Xbar)(P) exactly for some
// small j (the defining function is P / Q2-powers).
inline TangencyResult tangency(const HoloField& X, const Poly& P, const Poly& Q2) {
    if (P.is_zero()) throw ZeroDefining();
    X.validate();
    RatPoly t = apply_field_real(X, P);
    Poly target = t.num;
    TangencyResult r;
    for (int j = 0; j <= 4; ++j) {
        auto [div, q] = poly_divides(P, target);
        if (div) {
            r.tangent = true;
            r.multiplierPower = j;
            r.quotient = q;
            return r;
        }
        if (j == 0) {
            auto [qq, rr] = divmod(target, P);
            r.witness = rr;
        }
        target = target * Q2;
    }
    r.tangent = false;
    return r;
}

// ------------------------------------------------- linear algebra over reals

namespace symfields_detail {

// real/imaginary split of a K element; both halves are real elements of K
inline std::pair<K, K> reim(const K& x) {
    K re = x.re();
    K im = x.im();
    return {re, im};
}

// coordinates of a field cleared to the common denominator D
struct CoordSpace {
    Poly D;                              // common denominator (unbarred)
    std::map<std::uint64_t, int> index;  // (component, monomial) -> coordinate
};

inline std::vector<K> coords(const HoloField& X, CoordSpace& sp) {
    std::vector<K> v(sp.index.size() * 2, K(0));
    auto ensure = [&sp, &v](std::uint64_t key) {
        auto it = sp.index.find(key);
        if (it == sp.index.end()) {
            it = sp.index.emplace(key, int(sp.index.size())).first;
            v.resize(sp.index.size() * 2, K(0));
        }
        return it->second;
    };
    for (int j = 0; j < 4; ++j) {
        auto [div, scale] = poly_divides(X.c[j].den, sp.D);
        if (!div) throw std::invalid_argument("field denominator outside the coordinate space");
        Poly p = X.c[j].num * scale;
        for (auto& [m, k] : p.terms) {
            // component tag in the top bits; monomials use at most 56
            std::uint64_t key = m.bits * 4 + std::uint64_t(j);
            int idx = ensure(key);
            auto [re, im] = reim(k);
            if (2 * idx + 1 >= int(v.size())) v.resize(sp.index.size() * 2, K(0));
            v[2 * idx] = re;
            v[2 * idx + 1] = im;
        }
    }
    return v;
}

inline int k_rank(std::vector<std::vector<K>> rows) {
    std::size_t width = 0;
    for (auto& r : rows) width = std::max(width, r.size());
    for (auto& r : rows) r.resize(width, K(0));
    int rank = 0;
    std::size_t col = 0;
    for (; col < width && rank < int(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < int(rows.size()); ++r)
            if (!rows[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        K inv = rows[rank][col].inv();
        for (std::size_t c = col; c < width; ++c) rows[rank][c] = inv * rows[rank][c];
        for (int r = 0; r < int(rows.size()); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            K f = rows[r][col];
            for (std::size_t c = col; c < width; ++c)
                rows[r][c] = rows[r][c] - f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

inline Poly common_denominator(const std::vector<HoloField>& fields) {
    Poly D(1);
    for (const HoloField& f : fields)
        for (int j = 0; j < 4; ++j) {
            if (f.c[j].den == Poly(1)) continue;
            if (poly_divides(f.c[j].den, D).first) continue;
            D = D * f.c[j].den;
        }
    return D;
}

}  // namespace symfields_detail

// -------------------------------------------------------------- the report

struct SymmetryAlgebraReport {
    int dimension = 0;
    std::map<int, int> gradedDims;
    bool closed = false;
    bool allTangent = false;
    bool graded = false;
    std::vector<std::string> failures;
};

inline SymmetryAlgebraReport algebra_report(const std::vector<HoloField>& gens, const Poly& P,
                                            const Poly& Q2) {
    using namespace symfields_detail;
    SymmetryAlgebraReport rep;
    if (gens.empty()) {
        rep.closed = true;
        rep.allTangent = true;
        rep.graded = true;
        return rep;
    }
    rep.allTangent = true;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        TangencyResult t = tangency(gens[j], P, Q2);
        if (!t.tangent) {
            rep.allTangent = false;
            rep.failures.push_back("generator " + std::to_string(j) + " fails tangency");
        }
    }

    // brackets first, so the coordinate space can hold everything
    std::vector<HoloField> brackets;
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b)
            brackets.push_back(bracket(gens[a], gens[b]));

    std::vector<HoloField> all = gens;
    all.insert(all.end(), brackets.begin(), brackets.end());
    CoordSpace sp;
    sp.D = common_denominator(all);

    std::vector<std::vector<K>> base;
    for (const HoloField& g : gens) base.push_back(coords(g, sp));
    rep.dimension = k_rank(base);

    rep.closed = true;
    std::size_t bi = 0;
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b, ++bi) {
            std::vector<std::vector<K>> aug = base;
            aug.push_back(coords(brackets[bi], sp));
            if (k_rank(aug) != rep.dimension) {
                rep.closed = false;
                rep.failures.push_back("bracket [" + std::to_string(a) + "," + std::to_string(b)
                                       + "] escapes the span");
            }
        }

    // grading by the weighted Euler field
    HoloField E = euler_field();
    rep.graded = true;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        HoloField B = bracket(E, gens[j]);
        bool found = false;
        for (int lam : {-2, -1, 0, 1, 2}) {
            if (B == K(lam) * gens[j]) {
                ++rep.gradedDims[lam];
                found = true;
                break;
            }
        }
        if (!found) {
            rep.graded = false;
            rep.failures.push_back("generator " + std::to_string(j)
                                   + " is not weighted homogeneous");
        }
    }
    return rep;
}

// ------------------------------------------------------- the listed algebras

// Basis of the graded symmetry algebras written out for the three entries
// with a full description: real parameters at 1, complex parameters at 1, i.
inline std::vector<HoloField> section5_generators(const std::string& label) {
    Poly w = Poly::var(W), z1 = Poly::var(Z1), z2 = Poly::var(Z2), zt = Poly::var(ZETA);
    Poly one(1);
    K i = K::i(), r2 = K::sqrt2(), r3 = K::sqrt3();
    std::vector<HoloField> out;

    // a_{-2}: 2 i d/dw in all three cases
    HoloField am2;
    am2.c[0] = RatPoly(K(2) * i * one);
    out.push_back(am2);

    if (label == "I") {
        Poly den = K(2) * zt + one;
        auto am1 = [&](K a1, K a2) {
            HoloField X;
            X.c[0] = RatPoly(K(2) * (a1.conj() * z2 + a2.conj() * z1));
            X.c[1] = RatPoly(a1 * one)
                   - RatPoly((a1.conj() * (r2 * i)) * (zt * zt), den)
                   - RatPoly((a2.conj() * (K(1) + i)) * (zt * zt + zt), den);
            X.c[2] = RatPoly(a2 * one)
                   - RatPoly((a1.conj() * (i - K(1))) * (zt * zt + zt), den)
                   - RatPoly((a2.conj() * (r2 * i)) * (zt * zt), den);
            return X;
        };
        out.push_back(am1(K(1), K(0)));
        out.push_back(am1(i, K(0)));
        out.push_back(am1(K(0), K(1)));
        out.push_back(am1(K(0), i));
        out.push_back(euler_field());  // c = 1, d = 0
        K epi4 = r2 * K(Rat(1, 2)) * (K(1) + i);   // e^{i pi/4}
        K emi4 = r2 * K(Rat(1, 2)) * (K(1) - i);   // e^{-i pi/4}
        auto a0 = [&](K d) {
            K db = d.conj();
            HoloField X;
            X.c[0] = RatPoly(db * (-(K(1) + i) * (z1 * z1) + (K(1) - i) * (z2 * z2)));
            X.c[3] = RatPoly(d * den);
            Poly half_block = zt * zt + zt + K(Rat(1, 2)) * one;
            X.c[1] = RatPoly((d * emi4) * z2)
                   + RatPoly(K(2) * db * ((-epi4) * (half_block * z2) + i * ((zt * zt + zt) * z1)),
                             den);
            X.c[2] = RatPoly((d * epi4) * z1)
                   - RatPoly(K(2) * db * (emi4 * (half_block * z1) + i * ((zt * zt + zt) * z2)),
                             den);
            return X;
        };
        out.push_back(a0(K(1)));
        out.push_back(a0(i));
    } else if (label == "II") {
        auto am1 = [&](K a1, K a2) {
            HoloField X;
            X.c[0] = RatPoly(K(2) * (a2.conj() * z1 + a1.conj() * z2));
            X.c[1] = RatPoly(a1 * one - a1.conj() * zt - a2.conj() * zt - a2.conj() * (zt * zt));
            X.c[2] = RatPoly(a2 * one - a2.conj() * zt);
            return X;
        };
        out.push_back(am1(K(1), K(0)));
        out.push_back(am1(i, K(0)));
        out.push_back(am1(K(0), K(1)));
        out.push_back(am1(K(0), i));
        out.push_back(euler_field());  // c = 1, d = 0
        auto a0 = [&](K d) {
            K db = d.conj();
            HoloField X;
            X.c[0] = RatPoly(K(2) * db * (z2 * z2 + K(2) * (z1 * z2)));
            X.c[3] = RatPoly(K(2) * ((d * one - db * zt) * (one + zt)));
            X.c[2] = RatPoly(K(-2) * db * (z2 * (one + zt)));
            X.c[1] = RatPoly(d * (z2 + K(2) * z1) - db * z2
                             - K(2) * db * (zt * (K(2) * z2 + z1 + z2 * zt)));
            return X;
        };
        out.push_back(a0(K(1)));
        out.push_back(a0(i));
    } else if (label == "III") {
        auto am1 = [&](K a1, K a2) {
            HoloField X;
            X.c[0] = RatPoly(K(2) * (a1.conj() * z1 - a2.conj() * z2));
            X.c[1] = RatPoly(a1 * one - K(2) * a1.conj() * zt + (r3 * a2.conj()) * (zt * zt));
            X.c[2] = RatPoly(a2 * one - (r3 * a1.conj()) * (zt * zt)
                             + K(2) * a2.conj() * (zt * zt * zt));
            return X;
        };
        out.push_back(am1(K(1), K(0)));
        out.push_back(am1(i, K(0)));
        out.push_back(am1(K(0), K(1)));
        out.push_back(am1(K(0), i));
        auto a0 = [&](K c1, K c2) {
            K c1b = c1.conj();
            K re_c2 = c2.re(), im_c2 = c2.im();
            HoloField X;
            X.c[0] = RatPoly(K(2) * re_c2 * w + K(2) * c1b * (z1 * z1));
            X.c[1] = RatPoly(c2 * z1 + (r3 * c1b) * z2 - K(4) * c1b * (z1 * zt));
            X.c[2] = RatPoly((r3 * c1) * z1 + c2 * z2 + K(2) * i * im_c2 * z2
                             - K(2) * (r3 * c1b) * (z1 * zt * zt));
            X.c[3] = RatPoly(c1 * one - c1b * (zt * zt) + K(2) * i * im_c2 * zt);
            return X;
        };
        out.push_back(a0(K(1), K(0)));
        out.push_back(a0(i, K(0)));
        out.push_back(a0(K(0), K(1)));
        out.push_back(a0(K(0), i));
    } else {
        throw std::invalid_argument("section5_generators: label must be I, II, or III");
    }
    return out;
}

}  // namespace crnf
