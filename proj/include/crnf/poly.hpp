#pragma once

// Sparse multivariate polynomials over K in the 8 variables
// (w, z1, z2, zeta, wb, z1b, z2b, zetab), with graded-lex ordering
// w < z1 < z2 < zeta < wb < z1b < z2b < zetab and single-divisor division.

#include <cstdint>
#include <map>
#include <stdexcept>

#include "numberfield.hpp"

namespace crnf {

enum Var : int { W = 0, Z1, Z2, ZETA, WB, Z1B, Z2B, ZETAB };

inline Var conj_var(Var v) { return Var((int(v) + 4) % 8); }

// Exponent vector packed into 8 bytes; variable v occupies byte v.
struct Mono {
    std::uint64_t bits = 0;

    int exp(int v) const { return int((bits >> (8 * v)) & 0xff); }
    void set(int v, int e) {
        bits = (bits & ~(std::uint64_t(0xff) << (8 * v))) | (std::uint64_t(e & 0xff) << (8 * v));
    }
    int total_degree() const {
        int d = 0;
        for (int v = 0; v < 8; ++v) d += exp(v);
        return d;
    }
    friend Mono operator*(Mono a, Mono b) {
        Mono r;
        for (int v = 0; v < 8; ++v) r.set(v, a.exp(v) + b.exp(v));
        return r;
    }
    // divisibility of a by b; quotient in *q if non-null
    bool divisible_by(Mono b, Mono* q = nullptr) const {
        Mono r;
        for (int v = 0; v < 8; ++v) {
            int d = exp(v) - b.exp(v);
            if (d < 0) return false;
            r.set(v, d);
        }
        if (q) *q = r;
        return true;
    }
    friend bool operator==(Mono a, Mono b) { return a.bits == b.bits; }
};

// graded lex: total degree first, then lex with w most significant
struct MonoCmp {
    bool operator()(Mono a, Mono b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        for (int v = 0; v < 8; ++v) {
            if (a.exp(v) != b.exp(v)) return a.exp(v) < b.exp(v);
        }
        return false;
    }
};

struct ZeroDivisor : std::runtime_error {
    ZeroDivisor() : std::runtime_error("division by the zero polynomial") {}
};

class Poly {
  public:
    std::map<Mono, K, MonoCmp> terms;  // no zero coefficients stored

    Poly() = default;
    Poly(const K& k) {
        if (!k.is_zero()) terms[Mono{}] = k;
    }
    Poly(int n) : Poly(K(n)) {}

    static Poly var(Var v, int e = 1) {
        Poly p;
        Mono m;
        m.set(v, e);
        p.terms[m] = K(1);
        return p;
    }
    static Poly mono(Mono m, const K& k) {
        Poly p;
        if (!k.is_zero()) p.terms[m] = k;
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    int total_degree() const {
        int d = 0;
        for (auto& [m, k] : terms) d = std::max(d, m.total_degree());
        return d;
    }
    int degree_in(Var v) const {
        int d = 0;
        for (auto& [m, k] : terms) d = std::max(d, m.exp(v));
        return d;
    }

    void add_term(Mono m, const K& k) {
        if (k.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, k);
        } else {
            it->second += k;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, k] : b.terms) r.add_term(m, k);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, k] : b.terms) r.add_term(m, -k);
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r;
        for (auto& [m, k] : a.terms) r.terms.emplace(m, -k);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [ma, ka] : a.terms)
            for (auto& [mb, kb] : b.terms) r.add_term(ma * mb, ka * kb);
        return r;
    }
    friend Poly operator*(const K& k, const Poly& a) { return Poly(k) * a; }
    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative(Var v) const {
        Poly r;
        for (auto& [m, k] : terms) {
            int e = m.exp(v);
            if (e == 0) continue;
            Mono m2 = m;
            m2.set(v, e - 1);
            r.add_term(m2, K(e) * k);
        }
        return r;
    }

    // Swap barred/unbarred variables and apply sigma to coefficients.
    Poly conj() const {
        Poly r;
        for (auto& [m, k] : terms) {
            Mono m2;
            for (int v = 0; v < 8; ++v) m2.set((v + 4) % 8, m.exp(v));
            r.add_term(m2, k.conj());
        }
        return r;
    }

    // substitute variable v by polynomial q
    Poly substitute(Var v, const Poly& q) const {
        Poly r;
        for (auto& [m, k] : terms) {
            Mono m2 = m;
            int e = m.exp(v);
            m2.set(v, 0);
            Poly t = Poly::mono(m2, k);
            for (int j = 0; j < e; ++j) t = t * q;
            r += t;
        }
        return r;
    }

    Mono leading_mono() const { return terms.rbegin()->first; }
    const K& leading_coeff() const { return terms.rbegin()->second; }
};

// single-divisor division: f = q*d + r where no monomial of r is divisible
// by the leading monomial of d
inline std::pair<Poly, Poly> divmod(const Poly& f, const Poly& d) {
    if (d.is_zero()) throw ZeroDivisor();
    Poly q, r, work = f;
    Mono lm = d.leading_mono();
    K lc_inv = d.leading_coeff().inv();
    while (!work.is_zero()) {
        auto it = work.terms.rbegin();
        Mono qm;
        if (it->first.divisible_by(lm, &qm)) {
            K qc = it->second * lc_inv;
            Poly t = Poly::mono(qm, qc);
            q += t;
            work -= t * d;
        } else {
            r.add_term(it->first, it->second);
            work.terms.erase(std::prev(work.terms.end()));
        }
    }
    return {q, r};
}

inline std::pair<bool, Poly> poly_divides(const Poly& d, const Poly& f) {
    auto [q, r] = divmod(f, d);
    if (r.is_zero()) return {true, q};
    return {false, Poly()};
}

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    static const char* names[8] = {"w", "z1", "z2", "zeta", "wb", "z1b", "z2b", "zetab"};
    std::string out;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        if (!out.empty()) out += " + ";
        std::string coef = to_string(it->second);
        bool needs_parens = coef.find(' ') != std::string::npos;
        std::string vars;
        for (int v = 0; v < 8; ++v) {
            int e = it->first.exp(v);
            if (e == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += names[v];
            if (e > 1) vars += "^" + std::to_string(e);
        }
        if (vars.empty()) {
            out += needs_parens ? "(" + coef + ")" : coef;
        } else if (coef == "1") {
            out += vars;
        } else if (coef == "-1") {
            out += "-" + vars;
        } else {
            out += (needs_parens ? "(" + coef + ")" : coef) + "*" + vars;
        }
    }
    return out;
}

}  // namespace crnf
