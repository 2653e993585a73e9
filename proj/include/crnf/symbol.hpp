#pragma once

// Bigraded and modified symbol invariants: the symbol fields along the
// evaluation curve, classification of (H, S_zeta(0)) to a canonical
// representative pair, and extraction of (Omega, tau, o1, o2).

#include <stdexcept>

#include "model.hpp"

namespace crnf {

struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};
struct ExtensionRequired : std::runtime_error {
    explicit ExtensionRequired(const std::string& what)
        : std::runtime_error("square root outside the coefficient field: " + what) {}
};

inline BiSeriesMat d_zeta(const BiSeriesMat& m) {
    BiSeriesMat r(m.a.N);
    r.a = m.a.d_zeta(); r.b = m.b.d_zeta(); r.c = m.c.d_zeta(); r.d = m.d.d_zeta();
    return r;
}

struct SymbolFields {
    BiSeriesMat Xi;        // (H^T)^{-1} S_zeta
    BiSeriesMat S02field;  // (H^T)^{-1} S_zeta H^{-1}
    BiSeriesMat Omega;     // (H^T)^{-1} H_zeta^T
    BiSeriesMat eIotaEbar; // obstruction field, 0 at the origin
    BiSeriesMat eIotaE;    // obstruction field, S_zetazeta(0) at the origin
};

inline SymbolFields symbol_fields(const Model& m) {
    DerivedTensors t = derive_tensors(m);
    BiSeriesMat Hi = series_mat_inverse(t.Hfield);
    BiSeriesMat Hti = series_mat_inverse(t.Hfield.transpose());
    BiSeriesMat Hz = d_zeta(t.Hfield);
    BiSeriesMat Sz = d_zeta(t.Sfield);
    BiSeriesMat Szz = d_zeta(Sz);
    BiSeriesMat Sbz = d_zeta(conj(t.Sfield));

    SymbolFields f{BiSeriesMat(m.order()), BiSeriesMat(m.order()), BiSeriesMat(m.order()),
                   BiSeriesMat(m.order()), BiSeriesMat(m.order())};
    f.Xi = Hti * Sz;
    f.S02field = Hti * Sz * Hi;
    f.Omega = Hti * Hz.transpose();
    f.eIotaEbar = Hz * Hi * Sbz + Sbz * Hi.transpose() * Hz.transpose();
    f.eIotaE = Hti * Szz * Hi - Hti * Hz.transpose() * Hti * Sz * Hi
             - Hti * Sz * Hi * Hz * Hi;
    return f;
}

inline std::pair<BiSeriesMat, BiSeriesMat> xi_and_s02_field(const Model& m) {
    SymbolFields f = symbol_fields(m);
    return {f.Xi, f.S02field};
}

inline BiSeriesMat omega_field(const Model& m) { return symbol_fields(m).Omega; }

inline std::pair<BiSeriesMat, BiSeriesMat> obstruction_fields(const Model& m) {
    SymbolFields f = symbol_fields(m);
    return {f.eIotaEbar, f.eIotaE};
}

enum class Row { R1 = 1, R2, R3, R4, R5, R6, R7 };

inline Mat2 row_H(Row row, int eps) {
    switch (row) {
        case Row::R1: case Row::R3: case Row::R4:
            return Mat2::diag(K(1), K(eps));
        default:
            return Mat2::antidiag();
    }
}

inline Mat2 row_S02(Row row, const K& lambda, const K& eitheta) {
    switch (row) {
        case Row::R1: return Mat2::diag(K(1), lambda);
        case Row::R2: return Mat2::diag(K(1), eitheta);
        case Row::R3: case Row::R5: return Mat2::antidiag();
        case Row::R4: case Row::R7: return Mat2::diag(K(1), K(0));
        case Row::R6: return Mat2{K(1), K(1), K(1), K(0)};
    }
    return Mat2{};
}

struct BigradedSymbol {
    Row row = Row::R1;
    int eps = 1;    // rows R1, R3, R4
    K lambda;       // row R1, real > 1
    K eitheta;      // row R2, unit with 0 < theta < pi
    K u;            // 1 or i
    Mat2 U;         // H_rep = (u/ub) U^T H Ub, S_rep proportional to U^{-1} S02 U^{-T}

    Mat2 rep_H() const { return row_H(row, eps); }
    Mat2 rep_S02() const { return row_S02(row, lambda, eitheta); }
};

namespace detail {

inline K sqrtK(const K& x, const char* where) {
    auto r = sqrt_in_K(x);
    if (!r) throw ExtensionRequired(where);
    // prefer the root that is real positive or has positive leading sign
    return *r;
}

// |x| = sqrt(x conj(x)), exact, real >= 0
inline K abs_in_K(const K& x, const char* where) {
    K r = sqrtK(x * x.conj(), where);
    if (!r.is_real()) r = r * K::i();  // the square is real >= 0, roots are +-real or +-imag
    if (sign_real(r) < 0) r = -r;
    return r;
}

// positive real square root of a positive real element
inline K sqrt_pos(const K& x, const char* where) {
    K r = sqrtK(x, where);
    if (!r.is_real()) throw DegenerateInput("sqrt of positive element came out non-real");
    if (sign_real(r) < 0) r = -r;
    return r;
}

struct Vec2 { K x, y; };

inline Vec2 mat_apply(const Mat2& m, const Vec2& v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}
inline K sym_val(const Mat2& S, const Vec2& v, const Vec2& w) {  // v^T S w
    return v.x * (S.a * w.x + S.b * w.y) + v.y * (S.c * w.x + S.d * w.y);
}
inline K herm_val(const Mat2& G, const Vec2& v, const Vec2& w) {  // conj(v)^T G w
    return v.x.conj() * (G.a * w.x + G.b * w.y) + v.y.conj() * (G.c * w.x + G.d * w.y);
}
inline Mat2 from_columns(const Vec2& v, const Vec2& w) { return Mat2{v.x, w.x, v.y, w.y}; }

// a kernel vector of a singular 2x2 matrix
inline Vec2 kernel_vec(const Mat2& A) {
    if (!A.a.is_zero() || !A.b.is_zero()) return {A.b, -A.a};
    if (!A.c.is_zero() || !A.d.is_zero()) return {A.d, -A.c};
    return {K(1), K(0)};
}

// the two S-isotropic directions of a rank-2 symmetric matrix
inline std::pair<Vec2, Vec2> isotropic_pair(const Mat2& S, const char* where) {
    if (!S.a.is_zero()) {
        K disc = S.b * S.b - S.a * S.d;  // = -det S
        K r = sqrtK(disc, where);
        return {Vec2{(-S.b + r) / S.a, K(1)}, Vec2{(-S.b - r) / S.a, K(1)}};
    }
    // S.a = 0: lines (1,0) and (S.d, -2 S.b)
    return {Vec2{K(1), K(0)}, Vec2{S.d, K(-2) * S.b}};
}

}  // namespace detail

// orbit invariant: transforms by |c|^2 U^T P U^{-T} under the symbol group
// action, so its spectrum-up-to-positive-scale classifies and its eigenbasis
// transforms with the dual basis used by the normalizing construction
inline Mat2 symbol_invariant_P(const Mat2& H, const Mat2& S02) {
    return H * S02.conj() * H.transpose() * S02;
}

inline std::pair<Mat2, Mat2> apply_pair(const K& u, const Mat2& U, const Mat2& H, const Mat2& S02) {
    K mu = u * u.conj().inv();
    Mat2 Ui = U.inv();
    return {mu * (U.transpose() * H * U.conj()), Ui * S02 * Ui.transpose()};
}

// Row and parameters only, from the orbit invariants (no transform construction).
inline BigradedSymbol classify_parameters(const Mat2& H, const Mat2& S02) {
    using namespace detail;
    if (!H.is_hermitian() || H.det().is_zero()) throw DegenerateInput("H not Hermitian nondegenerate");
    if (!S02.is_symmetric() || S02.is_zero()) throw DegenerateInput("S02 not symmetric nonzero");
    Mat2 P = symbol_invariant_P(H, S02);
    int hsign = sign_real(H.det());

    BigradedSymbol out;
    out.U = Mat2::identity();
    out.u = K(1);
    if (S02.det().is_zero()) {
        if (P.is_zero()) {
            if (hsign > 0) throw DegenerateInput("row 7 needs mixed signature");
            out.row = Row::R7;
        } else {
            out.row = Row::R4;
            out.eps = hsign;
        }
        return out;
    }
    K tr = P.trace(), det = P.det();
    K p = tr * K(Rat(1, 2));
    if ((P - Mat2::diag(p, p)).is_zero()) {
        if (!p.is_real() || p.is_zero()) throw DegenerateInput("scalar invariant not real");
        if (hsign > 0) {
            if (sign_real(p) < 0) throw DegenerateInput("negative scalar with definite H");
            out.row = Row::R3;
            out.eps = 1;
        } else if (sign_real(p) < 0) {
            out.row = Row::R3;
            out.eps = -1;
        } else {
            out.row = Row::R5;
        }
        return out;
    }
    K disc = tr * tr - K(4) * det;
    if (disc.is_zero()) {
        if (hsign > 0) throw DegenerateInput("row 6 needs mixed signature");
        out.row = Row::R6;
        return out;
    }
    K D = sqrtK(disc, "eigenvalues of the dispatch invariant");
    K half(Rat(1, 2));
    K mu1 = (tr - D) * half, mu2 = (tr + D) * half;
    if (mu1.is_real() && mu2.is_real()) {
        if (sign_real(mu1) <= 0 || sign_real(mu2) <= 0)
            throw DegenerateInput("real spectrum must be positive");
        if (sign_real(mu2 - mu1) < 0) std::swap(mu1, mu2);
        out.row = Row::R1;
        out.eps = hsign;
        out.lambda = sqrt_pos(mu2 / mu1, "lambda");
    } else {
        if (mu2 != mu1.conj()) throw DegenerateInput("complex spectrum must be conjugate");
        if (hsign > 0) throw DegenerateInput("row 2 needs mixed signature");
        if (sign_real(mu1.im()) > 0) std::swap(mu1, mu2);
        K absmu = sqrt_pos(mu1 * mu2, "modulus of spectrum");
        out.row = Row::R2;
        out.eitheta = mu2 / absmu;
    }
    return out;
}

inline BigradedSymbol classify_bigraded(const Mat2& H, const Mat2& S02) {
    using namespace detail;
    BigradedSymbol params = classify_parameters(H, S02);

    Mat2 G = H.inv();  // Hermitian form paired with the dual-basis transformation
    Mat2 P = symbol_invariant_P(H, S02);
    bool definite = sign_real(H.det()) > 0;

    BigradedSymbol out;
    Vec2 v1{K(1), K(0)}, v2{K(0), K(1)};
    bool flip = false;  // u = i, negating the Hermitian target

    auto finish_diag_G = [&](Row row) {
        // basis (v1, v2) with S-shape already correct and G diagonal real;
        // rescale to G = diag(1, eps), flipping by u = i if needed
        K g1 = herm_val(G, v1, v1), g2 = herm_val(G, v2, v2);
        if (g1.is_zero() || g2.is_zero() || !g1.is_real() || !g2.is_real())
            throw DegenerateInput("inconsistent Hermitian diagonal");
        if (row == Row::R3 && sign_real(g1) < 0 && sign_real(g2) > 0) {
            std::swap(v1, v2);
            std::swap(g1, g2);
        }
        if (sign_real(g1) < 0) {
            flip = true;
            g1 = -g1; g2 = -g2;
        }
        if (sign_real(g1) < 0) throw DegenerateInput("cannot orient Hermitian form");
        out.eps = sign_real(g2);
        K d1 = sqrt_pos(g1.inv(), "Hermitian normalization");
        K d2 = sqrt_pos((out.eps * g2).inv(), "Hermitian normalization");
        v1 = {d1 * v1.x, d1 * v1.y};
        v2 = {d2 * v2.x, d2 * v2.y};
        out.row = row;
    };

    if (S02.det().is_zero()) {
        // rank 1: S02 = s u u^T; v2 spans the kernel
        Vec2 uvec = !S02.a.is_zero() ? Vec2{S02.a, S02.b} : Vec2{S02.b, S02.d};
        v2 = {uvec.y, -uvec.x};
        K g22 = herm_val(G, v2, v2);
        if (P.is_zero()) {
            if (!g22.is_zero()) throw DegenerateInput("P = 0 but kernel not isotropic");
            // row 7: v1 = w + t v2 with G(v1,v1) = 0, w independent of the kernel
            Vec2 w{K(1), K(0)};
            if ((w.x * v2.y - w.y * v2.x).is_zero()) w = {K(0), K(1)};
            K g = herm_val(G, w, v2);
            if (g.is_zero()) throw DegenerateInput("degenerate Hermitian pairing");
            K t = -herm_val(G, w, w) / (K(2) * g);
            v1 = {w.x + t * v2.x, w.y + t * v2.y};
            K gamma = herm_val(G, v1, v2);
            v2 = {v2.x / gamma, v2.y / gamma};
            out.row = Row::R7;
        } else {
            if (g22.is_zero()) throw DegenerateInput("P != 0 but kernel isotropic");
            // row 4: v1 = G-orthogonal complement of v2
            Vec2 phi = mat_apply(G, v2);
            v1 = {phi.y.conj(), -phi.x.conj()};
            if (sym_val(S02, v1, v1).is_zero()) throw DegenerateInput("rank-1 direction collapsed");
            finish_diag_G(Row::R4);
        }
    } else {
        K tr = P.trace(), det = P.det();
        Mat2 scalar_test = P - Mat2::diag(tr * K(Rat(1, 2)), tr * K(Rat(1, 2)));
        if (scalar_test.is_zero()) {
            // rows 3 / 5: split by the sign of the scalar and the H branch
            K p = tr * K(Rat(1, 2));
            if (!p.is_real() || p.is_zero()) throw DegenerateInput("scalar invariant not real");
            auto [w1, w2] = isotropic_pair(S02, "isotropic directions of S02");
            v1 = w1; v2 = w2;
            K g11 = herm_val(G, v1, v1), g22 = herm_val(G, v2, v2), g12 = herm_val(G, v1, v2);
            if (g11.is_zero() && g22.is_zero()) {
                if (g12.is_zero()) throw DegenerateInput("H degenerate on isotropic basis");
                v2 = {v2.x / g12, v2.y / g12};
                out.row = Row::R5;
                if (definite || sign_real(p) < 0) throw DegenerateInput("row 5 needs mixed H, positive scalar");
            } else {
                if (!g12.is_zero()) throw DegenerateInput("scalar invariant with mixed Hermitian data");
                finish_diag_G(Row::R3);
                (void)definite;
            }
        } else {
            K disc = tr * tr - K(4) * det;
            if (disc.is_zero()) {
                // row 6: a non-scalar invariant with a double eigenvalue
                auto [w1, w2] = isotropic_pair(S02, "isotropic directions of S02");
                // v2 = the S-isotropic direction that is also G-isotropic
                K n1 = herm_val(G, w1, w1), n2 = herm_val(G, w2, w2);
                if (n1.is_zero() == n2.is_zero()) throw DegenerateInput("row 6 isotropic selection failed");
                v2 = n1.is_zero() ? w1 : w2;
                // v1 = w + t v2, G-isotropic, then shift by b = i mu / gamma
                Vec2 w{K(1), K(0)};
                if ((w.x * v2.y - w.y * v2.x).is_zero()) w = {K(0), K(1)};
                K g = herm_val(G, w, v2);
                if (g.is_zero()) throw DegenerateInput("degenerate Hermitian pairing");
                K t = -herm_val(G, w, w) / (K(2) * g);
                v1 = {w.x + t * v2.x, w.y + t * v2.y};
                K c1 = sym_val(S02, v1, v1), c2 = sym_val(S02, v1, v2);
                if (c2.is_zero()) throw DegenerateInput("row 6 pairing collapsed");
                K gamma = herm_val(G, v1, v2);
                K dg0 = c1 * gamma / c2;          // d*gamma before the imaginary shift
                K b = K::i() * (-dg0.im() * K(Rat(1, 2))) / gamma;
                v1 = {v1.x + b * v2.x, v1.y + b * v2.y};
                K d = c1 / c2 + K(2) * b;
                if (d.is_zero()) throw DegenerateInput("row 6 scale collapsed");
                v2 = {d * v2.x, d * v2.y};
                K dgamma = d * gamma;  // real by construction
                if (!dgamma.is_real() || dgamma.is_zero()) throw DegenerateInput("row 6 pairing not real");
                if (sign_real(dgamma) < 0) { flip = true; dgamma = -dgamma; }
                K tsc = sqrt_pos(dgamma.inv(), "row 6 scale");
                v1 = {tsc * v1.x, tsc * v1.y};
                v2 = {tsc * v2.x, tsc * v2.y};
                out.row = Row::R6;
            } else {
                // rows 1 / 2: distinct eigenvalues
                K D = sqrtK(disc, "eigenvalues of the dispatch invariant");
                K half(Rat(1, 2));
                K mu1 = (tr - D) * half, mu2 = (tr + D) * half;
                bool realeig = mu1.is_real() && mu2.is_real();
                Row row;
                if (realeig) {
                    row = Row::R1;
                    if (sign_real(mu1) <= 0 || sign_real(mu2) <= 0)
                        throw DegenerateInput("real spectrum must be positive");
                    if (sign_real(mu2 - mu1) < 0) std::swap(mu1, mu2);
                    out.lambda = sqrt_pos(mu2 / mu1, "lambda");
                } else {
                    row = Row::R2;
                    if (mu2 != mu1.conj()) throw DegenerateInput("complex spectrum must be conjugate");
                    // mu1 <- the eigenvalue with negative imaginary part (matching e1)
                    if (sign_real(mu1.im()) > 0) std::swap(mu1, mu2);
                    // |mu| = sqrt(mu1 mu2) since the eigenvalues are conjugate
                    K absmu = sqrt_pos(mu1 * mu2, "modulus of spectrum");
                    out.eitheta = mu2 / absmu;
                }
                v1 = kernel_vec(P - Mat2::diag(mu1, mu1));
                v2 = kernel_vec(P - Mat2::diag(mu2, mu2));
                K s1 = sym_val(S02, v1, v1), s2 = sym_val(S02, v2, v2);
                if (s1.is_zero() || s2.is_zero() || !sym_val(S02, v1, v2).is_zero())
                    throw DegenerateInput("eigenbasis did not diagonalize S02");
                if (row == Row::R1) {
                    K g1 = herm_val(G, v1, v1), g2 = herm_val(G, v2, v2);
                    if (!herm_val(G, v1, v2).is_zero()) throw DegenerateInput("eigenbasis not G-orthogonal");
                    if (sign_real(g1) < 0) { flip = true; g1 = -g1; g2 = -g2; }
                    out.eps = sign_real(g2);
                    K r1 = sqrt_pos(g1.inv(), "Hermitian normalization");
                    K r2 = sqrt_pos((out.eps * g2).inv(), "Hermitian normalization");
                    // unit correction so that S becomes proportional to diag(1, lambda)
                    K tunit = s2 * r2 * r2 / (out.lambda * s1 * r1 * r1);
                    if ((tunit * tunit.conj()) != K(1)) throw DegenerateInput("phase correction not a unit");
                    K om = sqrtK(tunit, "phase correction");
                    v1 = {r1 * om * v1.x, r1 * om * v1.y};
                    v2 = {r2 * v2.x, r2 * v2.y};
                    out.row = Row::R1;
                } else {
                    K gamma = herm_val(G, v1, v2);
                    if (!herm_val(G, v1, v1).is_zero() || !herm_val(G, v2, v2).is_zero() || gamma.is_zero())
                        throw DegenerateInput("eigenbasis not null for G");
                    K rho = s2 / (out.eitheta * s1 * gamma * gamma);
                    if (!rho.is_real() || rho.is_zero()) throw DegenerateInput("row 2 scale not real");
                    if (sign_real(rho) < 0) { flip = true; rho = -rho; }
                    K r2sq = sqrt_pos(rho, "row 2 scale");
                    K r = sqrt_pos(r2sq, "row 2 scale");
                    v1 = {r * v1.x, r * v1.y};
                    K d2 = (flip ? K(-1) : K(1)) * (gamma * r).inv();
                    v2 = {d2 * v2.x, d2 * v2.y};
                    out.row = Row::R2;
                }
            }
        }
    }

    Mat2 V = from_columns(v1, v2);
    if (V.det().is_zero()) throw DegenerateInput("transform collapsed");
    out.U = V.transpose().inv();
    out.u = flip ? K::i() : K(1);

    // exact verification: the transformed pair must equal the representative
    auto [Ht, St] = apply_pair(out.u, out.U, H, S02);
    if (Ht != out.rep_H()) throw DegenerateInput("verification failed: Hermitian part");
    Mat2 Sr = out.rep_S02();
    // St must be a nonzero multiple of Sr
    K c;
    if (!Sr.a.is_zero()) c = St.a / Sr.a;
    else if (!Sr.b.is_zero()) c = St.b / Sr.b;
    else c = St.d / Sr.d;
    if (c.is_zero() || St != c * Sr) throw DegenerateInput("verification failed: symbol part");
    if (out.row != params.row || out.eps != params.eps ||
        out.lambda != params.lambda || out.eitheta != params.eitheta)
        throw DegenerateInput("construction disagrees with the orbit invariants");
    return out;
}

// -----------------------------------------------------------------------

struct ModifiedSymbolData {
    Mat2 Omega;     // canonical Table shape with tau real >= 0
    Mat2 OmegaRaw;  // full solution of Omega S + S Omega^T = S_zetazeta(0) - O^N in N_gl2
    K tau;          // real >= 0, the modulus of the class of Omega mod g'_{0,0}
    K o1, o2;       // obstruction entries of O^N
    Mat2 ON;        // O^N_{0,2} = S_zetazeta(0) - Omega S - S Omega^T
};

// Requires (m.H, m.S_zeta(0)) to equal the row representative exactly.
inline ModifiedSymbolData extract_modified_symbol(const Model& m, const BigradedSymbol& bs) {
    using namespace detail;
    Mat2 Srep = bs.rep_S02();
    if (m.H != bs.rep_H() || m.S_zeta0() != Srep)
        throw DegenerateInput("model is not at the bigraded representative");
    Mat2 M = m.S_zetazeta0();
    ModifiedSymbolData out;
    K half(Rat(1, 2));
    switch (bs.row) {
        case Row::R1: {
            K a = M.a * half;
            K b = M.b / (K(1) - bs.lambda * bs.lambda);
            out.OmegaRaw = Mat2{a, -bs.lambda * b, b, a};
            out.tau = abs_in_K(b, "tau");
            out.Omega = Mat2{K(0), -bs.lambda * out.tau, out.tau, K(0)};
            break;
        }
        case Row::R2: {
            K a = M.a * half;
            K b = M.b / (K(1) - bs.eitheta * bs.eitheta);
            out.OmegaRaw = Mat2{a, -bs.eitheta * b, b, a};
            out.tau = abs_in_K(b, "tau");
            out.Omega = Mat2{K(0), -bs.eitheta * out.tau, out.tau, K(0)};
            break;
        }
        case Row::R3: case Row::R5:
            // Omega S + S Omega^T = (a+b) antidiag; the class mod g'_{0,0} is zero
            out.OmegaRaw = Mat2::diag(M.b * half, M.b * half);
            break;
        case Row::R4: {
            K c = M.b;
            out.OmegaRaw = Mat2{M.a * half, K(0), c, K(0)};
            out.tau = abs_in_K(c, "tau");
            out.Omega = Mat2{K(0), K(0), out.tau, K(0)};
            break;
        }
        case Row::R6: {
            K a = (M.a + M.b) * K(Rat(1, 4));
            K b = (M.a - M.b) * K(Rat(1, 4));
            out.OmegaRaw = Mat2{a, b, K(0), a - K(2) * b};
            out.tau = abs_in_K(b, "tau");
            out.Omega = Mat2{K(2) * out.tau, out.tau, K(0), K(0)};
            break;
        }
        case Row::R7:
            out.OmegaRaw = Mat2::diag(M.a * half, K(0));
            break;
    }
    out.ON = M - out.OmegaRaw * Srep - Srep * out.OmegaRaw.transpose();
    // residue must lie in the row's normalization space N_{0,2}
    bool ok = false;
    switch (bs.row) {
        case Row::R1: case Row::R2: case Row::R4: case Row::R6:
            ok = out.ON.a.is_zero() && out.ON.b.is_zero();
            out.o1 = out.ON.d;
            break;
        case Row::R3: case Row::R5:
            ok = out.ON.b.is_zero();
            out.o1 = out.ON.a;
            out.o2 = out.ON.d;
            break;
        case Row::R7:
            ok = out.ON.a.is_zero();
            out.o1 = out.ON.d;
            out.o2 = out.ON.b;
            break;
    }
    if (!ok) throw DegenerateInput("residue escaped the normalization space");
    return out;
}

// Homogeneous-model realization of a modified symbol.
inline Model realize(const Mat2& H, const Mat2& S02, const Mat2& Omega, int order = kDefaultOrder) {
    return Model::make(H, semidirect_exp(S02, Omega, order));
}

}  // namespace crnf
