#pragma once

// Exact arithmetic in K = Q(i, sqrt2, sqrt3), the coefficient field for every
// computation in this library. Elements are stored as 8 rational coordinates
// with respect to the basis {1, i, s2, i*s2, s3, i*s3, s6, i*s6}.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace crnf {

using Rat = mpq_class;

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero in K") {}
};

// Basis index = 2*r + s where s is the power of i (0 or 1) and r encodes the
// radical part as a bitmask: bit0 = sqrt2 present, bit1 = sqrt3 present.
class K {
  public:
    std::array<Rat, 8> c;

    K() = default;
    K(int n) { c[0] = n; }
    K(const Rat& q) { c[0] = q; }
    K(long num, long den) { c[0] = Rat(num, den); c[0].canonicalize(); }

    static K i() { K x; x.c[1] = 1; return x; }
    static K sqrt2() { K x; x.c[2] = 1; return x; }
    static K sqrt3() { K x; x.c[4] = 1; return x; }
    static K sqrt6() { K x; x.c[6] = 1; return x; }

    bool is_zero() const {
        for (const auto& q : c)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (int j = 1; j < 8; ++j)
            if (c[j] != 0) return false;
        return true;
    }
    // Fixed by complex conjugation, i.e. lies in Q(sqrt2, sqrt3).
    bool is_real() const { return c[1] == 0 && c[3] == 0 && c[5] == 0 && c[7] == 0; }

    friend K operator+(const K& a, const K& b) {
        K r;
        for (int j = 0; j < 8; ++j) r.c[j] = a.c[j] + b.c[j];
        return r;
    }
    friend K operator-(const K& a, const K& b) {
        K r;
        for (int j = 0; j < 8; ++j) r.c[j] = a.c[j] - b.c[j];
        return r;
    }
    friend K operator-(const K& a) {
        K r;
        for (int j = 0; j < 8; ++j) r.c[j] = -a.c[j];
        return r;
    }
    friend K operator*(const K& a, const K& b) {
        K r;
        for (int j = 0; j < 8; ++j) {
            if (a.c[j] == 0) continue;
            for (int k = 0; k < 8; ++k) {
                if (b.c[k] == 0) continue;
                int s = (j & 1) + (k & 1);       // power of i
                int rj = j >> 1, rk = k >> 1;    // radical masks
                Rat scale = a.c[j] * b.c[k];
                if (rj & rk & 1) scale *= 2;     // sqrt2 * sqrt2
                if (rj & rk & 2) scale *= 3;     // sqrt3 * sqrt3
                if (s >= 2) scale = -scale;      // i*i = -1
                int idx = ((rj ^ rk) << 1) | (s & 1);
                r.c[idx] += scale;
            }
        }
        return r;
    }
    K& operator+=(const K& b) { *this = *this + b; return *this; }
    K& operator-=(const K& b) { *this = *this - b; return *this; }
    K& operator*=(const K& b) { *this = *this * b; return *this; }

    friend bool operator==(const K& a, const K& b) { return a.c == b.c; }
    friend bool operator!=(const K& a, const K& b) { return !(a == b); }

    // sigma: i -> -i, radicals fixed.
    K conj() const {
        K r = *this;
        for (int j = 1; j < 8; j += 2) r.c[j] = -r.c[j];
        return r;
    }
    // sqrt2 -> -sqrt2
    K g2() const {
        K r = *this;
        for (int j = 0; j < 8; ++j)
            if ((j >> 1) & 1) r.c[j] = -r.c[j];
        return r;
    }
    // sqrt3 -> -sqrt3
    K g3() const {
        K r = *this;
        for (int j = 0; j < 8; ++j)
            if ((j >> 1) & 2) r.c[j] = -r.c[j];
        return r;
    }

    K inv() const {
        if (is_zero()) throw DivisionByZero();
        // Norm tower: multiply by the Galois conjugates down to Q.
        K b = *this * g2();          // invariant under sqrt2 flip
        K d = b * b.g3();            // lies in Q(i)
        K e = d * d.conj();          // lies in Q
        K num = g2() * b.g3() * d.conj();
        Rat n = e.c[0];
        K r;
        for (int j = 0; j < 8; ++j) r.c[j] = num.c[j] / n;
        return r;
    }
    friend K operator/(const K& a, const K& b) { return a * b.inv(); }

    K re() const {
        K r;
        for (int j = 0; j < 8; j += 2) r.c[j] = c[j];
        return r;
    }
    K im() const {  // the real element y with x = re + i*y
        K r;
        for (int j = 1; j < 8; j += 2) r.c[j - 1] = c[j];
        return r;
    }
    K abs2() const { return *this * conj(); }  // real and >= 0

    std::size_t hash() const {
        std::size_t h = 0;
        for (const auto& q : c) {
            h = h * 1000003u + mpz_get_ui(q.get_num_mpz_t());
            h = h * 1000003u + mpz_get_ui(q.get_den_mpz_t());
        }
        return h;
    }
};

inline K operator*(const Rat& q, const K& a) { return K(q) * a; }
inline K operator*(int n, const K& a) { return K(n) * a; }

// Exact sign of a real element of K (throws if not real).
inline int sign_real(const K& x) {
    if (!x.is_real()) throw std::invalid_argument("sign_real: element not real");
    // x = p + q*sqrt3 with p, q in Q(sqrt2); p = a + b*sqrt2 with a, b in Q.
    auto sgn2 = [](const Rat& a, const Rat& b) -> int {
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rat d = a * a - 2 * b * b;  // sign of |a| vs |b*sqrt2|
        int sd = sgn(d);
        if (sd == 0) return 0;  // cannot happen for nonzero a,b (sqrt2 irrational)
        return sa > 0 ? sd : -sd;
    };
    // p = x.c0 + x.c2*sqrt2, q = x.c4 + x.c6*sqrt2
    const Rat &a = x.c[0], &b = x.c[2], &e = x.c[4], &f = x.c[6];
    int sp = sgn2(a, b);
    int sq = sgn2(e, f);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // compare p^2 vs 3 q^2 in Q(sqrt2)
    Rat pa = a * a + 2 * b * b, pb = 2 * a * b;            // p^2
    Rat qa = 3 * (e * e + 2 * f * f), qb = 6 * e * f;      // 3 q^2
    int sd = sgn2(pa - qa, pb - qb);
    if (sd == 0) return 0;  // impossible for nonzero p,q
    return sp > 0 ? sd : -sd;
}

// Exact square root of a nonnegative rational, if rational.
inline std::optional<Rat> sqrt_rat(const Rat& q) {
    if (q == 0) return Rat(0);
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rat(rn, rd);
}

namespace detail {

// Square root in Q(i): y = p + q i.
inline std::optional<std::pair<Rat, Rat>> sqrt_qi(const Rat& p, const Rat& q) {
    if (p == 0 && q == 0) return std::make_pair(Rat(0), Rat(0));
    auto r = sqrt_rat(p * p + q * q);
    if (!r) return std::nullopt;
    // real part a satisfies a^2 = (p + r)/2
    Rat a2 = (p + *r) / 2;
    if (auto a = sqrt_rat(a2); a && *a != 0) {
        return std::make_pair(*a, q / (2 * *a));
    }
    // pure-imaginary root: b^2 = (r - p)/2, requires q = 0
    if (q == 0 && p < 0) {
        if (auto b = sqrt_rat(-p)) return std::make_pair(Rat(0), *b);
    }
    return std::nullopt;
}

// Extract (u, v) with x = u + v * basis[step] where step 1 splits off sqrt3,
// step 0 splits off sqrt2, leaving elements of the smaller field.
// Representation: vector of rational coords in the current subfield basis.

}  // namespace detail

// Square root of y within K, if one exists in K. Descends the tower
// K = F(sqrt3), F = E(sqrt2), E = Q(i).
inline std::optional<K> sqrt_in_K(const K& y);

namespace detail {

// level 0: Q(i) (basis 1, i), level 1: Q(i, sqrt2) (basis 1, i, s2, i s2),
// level 2: K itself.
inline std::optional<K> sqrt_level(const K& y, int level) {
    if (y.is_zero()) return K(0);
    if (level == 0) {
        auto r = sqrt_qi(y.c[0], y.c[1]);
        if (!r) return std::nullopt;
        K x;
        x.c[0] = r->first;
        x.c[1] = r->second;
        return x;
    }
    // split y = u + v * rad where rad = sqrt2 (level 1) or sqrt3 (level 2)
    const int bit = (level == 1) ? 1 : 2;  // radical mask bit
    const int m = (level == 1) ? 2 : 3;
    K u, v;
    for (int j = 0; j < 8; ++j) {
        int rj = j >> 1;
        if (rj & bit) {
            int tgt = ((rj ^ bit) << 1) | (j & 1);
            v.c[tgt] = y.c[j];
        } else {
            u.c[j] = y.c[j];
        }
    }
    auto mk = [&](const K& a) {  // multiply by rad: shift coords up
        K r;
        for (int j = 0; j < 8; ++j) {
            if (a.c[j] == 0) continue;
            int rj = j >> 1;
            Rat scale = a.c[j];
            if (rj & bit) scale *= m;
            int idx = ((rj ^ bit) << 1) | (j & 1);
            r.c[idx] += scale;
        }
        return r;
    };
    if (v.is_zero()) {
        if (auto a = sqrt_level(u, level - 1)) return a;
        // try x = t * rad with t^2 = u / m
        K um = u;
        for (auto& q : um.c) q /= m;
        if (auto t = sqrt_level(um, level - 1)) return mk(*t);
        return std::nullopt;
    }
    // x = a + b*rad, a,b in subfield: a^2 + m b^2 = u, 2ab = v.
    // a^2 = (u +/- sqrt(u^2 - m v^2)) / 2.
    K disc = u * u - K(m) * v * v;
    auto D = sqrt_level(disc, level - 1);
    if (!D) return std::nullopt;
    for (int sgn_choice : {1, -1}) {
        K a2 = (u + K(sgn_choice) * *D);
        for (auto& q : a2.c) q /= 2;
        auto a = sqrt_level(a2, level - 1);
        if (!a || a->is_zero()) continue;
        K b = v / (K(2) * *a);
        K cand = *a + mk(b);
        if (cand * cand == y) return cand;
    }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<K> sqrt_in_K(const K& y) {
    auto r = detail::sqrt_level(y, 2);
    if (r && !(*r * *r == y)) return std::nullopt;
    return r;
}

// All 24th roots of unity lie in K; e^{i pi/12} = ((s6+s2) + i(s6-s2))/4.
inline const std::vector<K>& roots_of_unity_24() {
    static const std::vector<K> table = [] {
        K z;  // e^{i pi / 12}
        z.c[2] = Rat(1, 4);
        z.c[6] = Rat(1, 4);
        z.c[3] = Rat(-1, 4);
        z.c[7] = Rat(1, 4);
        std::vector<K> t;
        K p(1);
        for (int k = 0; k < 24; ++k) {
            t.push_back(p);
            p = p * z;
        }
        return t;
    }();
    return table;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

// Human-readable rendering, e.g. "1/2 + 3i - s2".
inline std::string to_string(const K& x) {
    static const char* names[8] = {"", "i", "s2", "i*s2", "s3", "i*s3", "s6", "i*s6"};
    std::string out;
    for (int j = 0; j < 8; ++j) {
        if (x.c[j] == 0) continue;
        Rat q = x.c[j];
        std::string term;
        if (!out.empty()) {
            term = (sgn(q) < 0) ? " - " : " + ";
            q = abs(q);
        } else if (sgn(q) < 0) {
            term = "-";
            q = abs(q);
        }
        if (q != 1 || j == 0)
            term += q.get_str();
        if (j != 0) {
            if (q != 1) term += "*";
            term += names[j];
        }
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace crnf
