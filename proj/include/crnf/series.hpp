#pragma once

// Truncated power series over K: univariate in zeta, bivariate in
// (zeta, zetab), and 2x2 matrices of either. All arithmetic is exact modulo
// the truncation order.

#include <functional>
#include <stdexcept>
#include <vector>

#include "numberfield.hpp"

namespace crnf {

constexpr int kDefaultOrder = 10;

struct CompositionAtNonzero : std::runtime_error {
    CompositionAtNonzero() : std::runtime_error("inner series must vanish at 0") {}
};
struct NotInvertible : std::runtime_error {
    NotInvertible() : std::runtime_error("series has no compositional inverse") {}
};
struct SingularConstantTerm : std::runtime_error {
    SingularConstantTerm() : std::runtime_error("constant term not invertible") {}
};

class UniSeries {
  public:
    std::vector<K> c;  // c[j] multiplies zeta^j, j = 0..N
    int N = kDefaultOrder;

    explicit UniSeries(int order = kDefaultOrder) : c(order + 1), N(order) {}
    UniSeries(const K& k, int order) : UniSeries(order) { c[0] = k; }

    static UniSeries zeta(int order = kDefaultOrder) {
        UniSeries s(order);
        if (order >= 1) s.c[1] = K(1);
        return s;
    }
    static UniSeries monomial(int j, const K& k, int order = kDefaultOrder) {
        UniSeries s(order);
        if (j <= order) s.c[j] = k;
        return s;
    }

    bool is_zero() const {
        for (auto& k : c)
            if (!k.is_zero()) return false;
        return true;
    }
    // lowest nonzero degree, or -1 for the zero series
    int valuation() const {
        for (int j = 0; j <= N; ++j)
            if (!c[j].is_zero()) return j;
        return -1;
    }

    friend UniSeries binop(const UniSeries& a, const UniSeries& b,
                           const std::function<K(const K&, const K&)>& f) {
        int n = std::min(a.N, b.N);
        UniSeries r(n);
        for (int j = 0; j <= n; ++j) r.c[j] = f(a.c[j], b.c[j]);
        return r;
    }
    friend UniSeries operator+(const UniSeries& a, const UniSeries& b) {
        return binop(a, b, [](const K& x, const K& y) { return x + y; });
    }
    friend UniSeries operator-(const UniSeries& a, const UniSeries& b) {
        return binop(a, b, [](const K& x, const K& y) { return x - y; });
    }
    friend UniSeries operator-(const UniSeries& a) {
        UniSeries r(a.N);
        for (int j = 0; j <= a.N; ++j) r.c[j] = -a.c[j];
        return r;
    }
    friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
        int n = std::min(a.N, b.N);
        UniSeries r(n);
        for (int j = 0; j <= n; ++j) {
            if (a.c[j].is_zero()) continue;
            for (int k = 0; j + k <= n; ++k) {
                if (b.c[k].is_zero()) continue;
                r.c[j + k] += a.c[j] * b.c[k];
            }
        }
        return r;
    }
    friend UniSeries operator*(const K& k, const UniSeries& a) {
        UniSeries r(a.N);
        for (int j = 0; j <= a.N; ++j) r.c[j] = k * a.c[j];
        return r;
    }
    friend UniSeries operator*(const UniSeries& a, const K& k) { return k * a; }
    UniSeries& operator+=(const UniSeries& b) { *this = *this + b; return *this; }
    UniSeries& operator-=(const UniSeries& b) { *this = *this - b; return *this; }
    UniSeries& operator*=(const UniSeries& b) { *this = *this * b; return *this; }
    friend bool operator==(const UniSeries& a, const UniSeries& b) {
        int n = std::min(a.N, b.N);
        for (int j = 0; j <= n; ++j)
            if (a.c[j] != b.c[j]) return false;
        return true;
    }
    friend bool operator!=(const UniSeries& a, const UniSeries& b) { return !(a == b); }

    UniSeries derivative() const {
        UniSeries r(N);
        for (int j = 1; j <= N; ++j) r.c[j - 1] = K(j) * c[j];
        return r;
    }

    UniSeries truncated(int order) const {
        UniSeries r(order);
        for (int j = 0; j <= std::min(order, N); ++j) r.c[j] = c[j];
        return r;
    }

    // multiplicative inverse; requires c[0] != 0
    UniSeries inverse() const {
        if (c[0].is_zero()) throw SingularConstantTerm();
        UniSeries r(N);
        K inv0 = c[0].inv();
        r.c[0] = inv0;
        for (int j = 1; j <= N; ++j) {
            K acc;
            for (int k = 1; k <= j; ++k) acc += c[k] * r.c[j - k];
            r.c[j] = -inv0 * acc;
        }
        return r;
    }
};

inline UniSeries series_compose(const UniSeries& f, const UniSeries& g) {
    if (!g.c[0].is_zero()) throw CompositionAtNonzero();
    int n = std::min(f.N, g.N);
    UniSeries r(n), p(K(1), n);
    for (int j = 0; j <= n; ++j) {
        r += f.c[j] * p;
        if (j < n) p = p * g;
    }
    return r;
}

// compositional inverse: g with f(g(zeta)) = zeta mod zeta^{N+1}
inline UniSeries series_reverse(const UniSeries& f) {
    if (!f.c[0].is_zero() || f.N < 1 || f.c[1].is_zero()) throw NotInvertible();
    int n = f.N;
    K a1inv = f.c[1].inv();
    UniSeries g = UniSeries::monomial(1, a1inv, n);
    // fixed point iteration g <- (zeta - (f - a1*zeta)(g)) / a1, gaining one
    // correct order per step
    UniSeries tail = f;
    tail.c[1] = K(0);
    for (int it = 0; it < n; ++it) {
        UniSeries corr = series_compose(tail, g);
        g = a1inv * (UniSeries::zeta(n) - corr);
    }
    return g;
}

// ---------------------------------------------------------------------------

class BiSeries {
  public:
    // coefficient of zeta^j zetab^k at index(j,k), for j + k <= N
    std::vector<K> c;
    int N = kDefaultOrder;

    explicit BiSeries(int order = kDefaultOrder)
        : c((order + 1) * (order + 2) / 2), N(order) {}
    BiSeries(const K& k, int order) : BiSeries(order) { at(0, 0) = k; }

    int index(int j, int k) const {
        int d = j + k;
        return d * (d + 1) / 2 + k;
    }
    K& at(int j, int k) { return c[index(j, k)]; }
    const K& at(int j, int k) const { return c[index(j, k)]; }

    static BiSeries from_uni(const UniSeries& f, bool barred = false) {
        BiSeries r(f.N);
        for (int j = 0; j <= f.N; ++j)
            (barred ? r.at(0, j) : r.at(j, 0)) = f.c[j];
        return r;
    }

    bool is_zero() const {
        for (auto& k : c)
            if (!k.is_zero()) return false;
        return true;
    }

    friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
        int n = std::min(a.N, b.N);
        BiSeries r(n);
        for (int d = 0; d <= n; ++d)
            for (int k = 0; k <= d; ++k) r.at(d - k, k) = a.at(d - k, k) + b.at(d - k, k);
        return r;
    }
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b) {
        int n = std::min(a.N, b.N);
        BiSeries r(n);
        for (int d = 0; d <= n; ++d)
            for (int k = 0; k <= d; ++k) r.at(d - k, k) = a.at(d - k, k) - b.at(d - k, k);
        return r;
    }
    friend BiSeries operator-(const BiSeries& a) {
        BiSeries r(a.N);
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = -a.c[i];
        return r;
    }
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        int n = std::min(a.N, b.N);
        BiSeries r(n);
        for (int da = 0; da <= n; ++da)
            for (int ka = 0; ka <= da; ++ka) {
                const K& x = a.at(da - ka, ka);
                if (x.is_zero()) continue;
                for (int db = 0; da + db <= n; ++db)
                    for (int kb = 0; kb <= db; ++kb) {
                        const K& y = b.at(db - kb, kb);
                        if (y.is_zero()) continue;
                        r.at(da - ka + db - kb, ka + kb) += x * y;
                    }
            }
        return r;
    }
    friend BiSeries operator*(const K& k, const BiSeries& a) {
        BiSeries r(a.N);
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = k * a.c[i];
        return r;
    }
    BiSeries& operator+=(const BiSeries& b) { *this = *this + b; return *this; }
    BiSeries& operator-=(const BiSeries& b) { *this = *this - b; return *this; }
    friend bool operator==(const BiSeries& a, const BiSeries& b) {
        int n = std::min(a.N, b.N);
        for (int d = 0; d <= n; ++d)
            for (int k = 0; k <= d; ++k)
                if (a.at(d - k, k) != b.at(d - k, k)) return false;
        return true;
    }
    friend bool operator!=(const BiSeries& a, const BiSeries& b) { return !(a == b); }

    // swap zeta <-> zetab and conjugate coefficients
    BiSeries conj() const {
        BiSeries r(N);
        for (int d = 0; d <= N; ++d)
            for (int k = 0; k <= d; ++k) r.at(k, d - k) = at(d - k, k).conj();
        return r;
    }

    BiSeries d_zeta() const {
        BiSeries r(N > 0 ? N - 1 : 0);
        for (int d = 1; d <= N; ++d)
            for (int k = 0; k < d; ++k) r.at(d - 1 - k, k) = K(d - k) * at(d - k, k);
        return r;
    }
    BiSeries d_zetab() const {
        BiSeries r(N > 0 ? N - 1 : 0);
        for (int d = 1; d <= N; ++d)
            for (int k = 1; k <= d; ++k) r.at(d - k, k - 1) = K(k) * at(d - k, k);
        return r;
    }

    BiSeries inverse() const {
        if (at(0, 0).is_zero()) throw SingularConstantTerm();
        K inv0 = at(0, 0).inv();
        BiSeries tail = *this;
        tail.at(0, 0) = K(0);
        tail = inv0 * tail;  // (1 + t) with t of positive order
        BiSeries r(K(inv0), N), pw(K(1), N);
        for (int d = 1; d <= N; ++d) {
            pw = pw * tail;
            K sign = (d % 2) ? K(-1) : K(1);
            r += sign * inv0 * pw;
        }
        return r;
    }
};

// ---------------------------------------------------------------------------

template <typename S>
struct Mat2S {
    S a, b, c, d;  // [[a, b], [c, d]]

    explicit Mat2S(int order = kDefaultOrder) : a(order), b(order), c(order), d(order) {}

    static Mat2S identity(int order = kDefaultOrder) {
        Mat2S m(order);
        m.a = S(K(1), order);
        m.d = S(K(1), order);
        return m;
    }

    friend Mat2S operator+(const Mat2S& x, const Mat2S& y) {
        Mat2S r(std::min(x.a.N, y.a.N));
        r.a = x.a + y.a; r.b = x.b + y.b; r.c = x.c + y.c; r.d = x.d + y.d;
        return r;
    }
    friend Mat2S operator-(const Mat2S& x, const Mat2S& y) {
        Mat2S r(std::min(x.a.N, y.a.N));
        r.a = x.a - y.a; r.b = x.b - y.b; r.c = x.c - y.c; r.d = x.d - y.d;
        return r;
    }
    friend Mat2S operator*(const Mat2S& x, const Mat2S& y) {
        Mat2S r(std::min(x.a.N, y.a.N));
        r.a = x.a * y.a + x.b * y.c;
        r.b = x.a * y.b + x.b * y.d;
        r.c = x.c * y.a + x.d * y.c;
        r.d = x.c * y.b + x.d * y.d;
        return r;
    }
    friend Mat2S operator*(const K& k, const Mat2S& x) {
        Mat2S r(x.a.N);
        r.a = k * x.a; r.b = k * x.b; r.c = k * x.c; r.d = k * x.d;
        return r;
    }
    friend bool operator==(const Mat2S& x, const Mat2S& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }

    Mat2S transpose() const {
        Mat2S r = *this;
        std::swap(r.b, r.c);
        return r;
    }
    bool is_symmetric() const { return b == c; }
};

using UniSeriesMat = Mat2S<UniSeries>;
using BiSeriesMat = Mat2S<BiSeries>;

inline BiSeriesMat conj(const BiSeriesMat& m) {
    BiSeriesMat r(m.a.N);
    r.a = m.a.conj(); r.b = m.b.conj(); r.c = m.c.conj(); r.d = m.d.conj();
    return r;
}

// Inverse of a series matrix whose constant term is invertible: invert the
// constant term, then expand the tail as a Neumann series.
template <typename S>
Mat2S<S> series_mat_inverse(const Mat2S<S>& m) {
    int n = m.a.N;
    K a0 = m.a.c[0], b0 = m.b.c[0], c0 = m.c.c[0], d0 = m.d.c[0];
    K det = a0 * d0 - b0 * c0;
    if (det.is_zero()) throw SingularConstantTerm();
    K dinv = det.inv();
    Mat2S<S> inv0(n);
    inv0.a = S(dinv * d0, n);
    inv0.b = S(-dinv * b0, n);
    inv0.c = S(-dinv * c0, n);
    inv0.d = S(dinv * a0, n);
    // m = M0 (Id - T) with T = Id - M0^{-1} m of positive order
    Mat2S<S> T = Mat2S<S>::identity(n) - inv0 * m;
    Mat2S<S> acc = Mat2S<S>::identity(n), pw = Mat2S<S>::identity(n);
    for (int k = 1; k <= n; ++k) {
        pw = pw * T;
        acc = acc + pw;
    }
    return acc * inv0;
}

// constant 2x2 matrices over K
struct Mat2 {
    K a, b, c, d;

    Mat2() = default;
    Mat2(K a_, K b_, K c_, K d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return {K(1), K(0), K(0), K(1)}; }
    static Mat2 diag(K x, K y) { return {x, K(0), K(0), y}; }
    static Mat2 antidiag(K x = K(1), K y = K(1)) { return {K(0), x, y, K(0)}; }

    K det() const { return a * d - b * c; }
    K trace() const { return a + d; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 conj() const { return {a.conj(), b.conj(), c.conj(), d.conj()}; }
    Mat2 inv() const {
        K dt = det();
        if (dt.is_zero()) throw DivisionByZero();
        K di = dt.inv();
        return {di * d, -di * b, -di * c, di * a};
    }
    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
    bool is_symmetric() const { return b == c; }
    bool is_hermitian() const {
        return a == a.conj() && d == d.conj() && b == c.conj();
    }
    int rank() const {
        if (!det().is_zero()) return 2;
        return is_zero() ? 0 : 1;
    }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(const K& k, const Mat2& x) {
        return {k * x.a, k * x.b, k * x.c, k * x.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
};

inline UniSeriesMat operator*(const Mat2& m, const UniSeriesMat& s) {
    UniSeriesMat c(s.a.N);
    c.a = m.a * s.a + m.b * s.c;
    c.b = m.a * s.b + m.b * s.d;
    c.c = m.c * s.a + m.d * s.c;
    c.d = m.c * s.b + m.d * s.d;
    return c;
}
inline UniSeriesMat operator*(const UniSeriesMat& s, const Mat2& m) {
    UniSeriesMat c(s.a.N);
    c.a = s.a * m.a + s.b * m.c;
    c.b = s.a * m.b + s.b * m.d;
    c.c = s.c * m.a + s.d * m.c;
    c.d = s.c * m.b + s.d * m.d;
    return c;
}

// S(zeta) = sum_{k>=0} zeta^{k+1} L_Omega^k(S02) / (k+1)!  with
// L_Omega(S) = Omega S + S Omega^T; the log of the semidirect-product
// exponential pair.
inline UniSeriesMat semidirect_exp(const Mat2& S02, const Mat2& Omega, int order = kDefaultOrder) {
    UniSeriesMat S(order);
    Mat2 T = S02;
    Rat fact = 1;
    for (int k = 0; k + 1 <= order; ++k) {
        fact *= (k + 1);
        K coef = K(Rat(1) / fact);
        S.a.c[k + 1] = coef * T.a;
        S.b.c[k + 1] = coef * T.b;
        S.c.c[k + 1] = coef * T.c;
        S.d.c[k + 1] = coef * T.d;
        T = Omega * T + T * Omega.transpose();
    }
    return S;
}

inline UniSeriesMat compose(const UniSeriesMat& S, const UniSeries& g) {
    UniSeriesMat r(std::min(S.a.N, g.N));
    r.a = series_compose(S.a, g);
    r.b = series_compose(S.b, g);
    r.c = series_compose(S.c, g);
    r.d = series_compose(S.d, g);
    return r;
}

}  // namespace crnf
