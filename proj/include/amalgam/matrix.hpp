#pragma once

// Dense square matrices over any ring model from ring.hpp.  Products skip
// zero entries, which matters because generator matrices are very sparse.

#include <cstddef>
#include <vector>

#include "amalgam/errors.hpp"
#include "amalgam/ring.hpp"

namespace amalgam {

template <class Ring>
struct Matrix {
    using Elem = typename Ring::Elem;
    std::size_t n = 0;
    std::vector<Elem> a;

    Elem& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    bool operator==(const Matrix&) const = default;
};

using IntMatrix = Matrix<IntegerRing>;

template <class Ring>
Matrix<Ring> zero_matrix(const Ring& r, std::size_t n) {
    return Matrix<Ring>{n, std::vector<typename Ring::Elem>(n * n, r.zero())};
}

template <class Ring>
Matrix<Ring> identity(const Ring& r, std::size_t n) {
    auto m = zero_matrix(r, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = r.one();
    return m;
}

template <class Ring>
Matrix<Ring> mul(const Ring& r, const Matrix<Ring>& x, const Matrix<Ring>& y) {
    if (x.n != y.n) throw DimensionMismatch("matrix sizes differ");
    const std::size_t n = x.n;
    auto z = zero_matrix(r, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const auto& xik = x(i, k);
            if (r.is_zero(xik)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const auto& ykj = y(k, j);
                if (r.is_zero(ykj)) continue;
                z(i, j) = r.add(z(i, j), r.mul(xik, ykj));
            }
        }
    return z;
}

template <class Ring>
Matrix<Ring> add(const Ring& r, const Matrix<Ring>& x, const Matrix<Ring>& y) {
    if (x.n != y.n) throw DimensionMismatch("matrix sizes differ");
    auto z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = r.add(x.a[i], y.a[i]);
    return z;
}

template <class Ring>
Matrix<Ring> sub(const Ring& r, const Matrix<Ring>& x, const Matrix<Ring>& y) {
    if (x.n != y.n) throw DimensionMismatch("matrix sizes differ");
    auto z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = r.sub(x.a[i], y.a[i]);
    return z;
}

template <class Ring>
Matrix<Ring> scale(const Ring& r, const typename Ring::Elem& c, const Matrix<Ring>& x) {
    auto z = x;
    for (auto& e : z.a)
        if (!r.is_zero(e)) e = r.mul(c, e);
    return z;
}

template <class Ring>
bool is_identity(const Ring& r, const Matrix<Ring>& x) {
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) {
            const auto& e = x(i, j);
            if (i == j ? !r.equal(e, r.one()) : !r.is_zero(e)) return false;
        }
    return true;
}

template <class Ring>
bool is_zero_matrix(const Ring& r, const Matrix<Ring>& x) {
    for (const auto& e : x.a)
        if (!r.is_zero(e)) return false;
    return true;
}

template <class Ring>
bool equal(const Ring& r, const Matrix<Ring>& x, const Matrix<Ring>& y) {
    if (x.n != y.n) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (!r.equal(x.a[i], y.a[i])) return false;
    return true;
}

// [x, y] = xy - yx
template <class Ring>
Matrix<Ring> bracket(const Ring& r, const Matrix<Ring>& x, const Matrix<Ring>& y) {
    return sub(r, mul(r, x, y), mul(r, y, x));
}

// Image of an integer matrix under Z -> R.
template <class Ring>
Matrix<Ring> from_int(const Ring& r, const IntMatrix& m) {
    Matrix<Ring> z{m.n, {}};
    z.a.reserve(m.a.size());
    for (auto v : m.a) z.a.push_back(r.from_int(v));
    return z;
}

template <class Ring>
std::vector<typename Ring::Elem> apply(const Ring& r, const Matrix<Ring>& m,
                                       const std::vector<typename Ring::Elem>& v) {
    std::vector<typename Ring::Elem> out(m.n, r.zero());
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            if (!r.is_zero(m(i, j)) && !r.is_zero(v[j])) out[i] = r.add(out[i], r.mul(m(i, j), v[j]));
    return out;
}

inline IntMatrix int_zero(std::size_t n) { return zero_matrix(IntegerRing{}, n); }
inline IntMatrix int_identity(std::size_t n) { return identity(IntegerRing{}, n); }
inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) { return mul(IntegerRing{}, x, y); }

// Divided powers x^k / k! for a nilpotent integer matrix, k = 0.. until zero.
// Throws ArithmeticError if some power is not divisible.
inline std::vector<IntMatrix> divided_powers(const IntMatrix& x) {
    std::vector<IntMatrix> out{int_identity(x.n)};
    IntMatrix cur = int_identity(x.n);
    for (long long k = 1;; ++k) {
        cur = cur * x;
        IntMatrix d = cur;
        for (auto& e : d.a) {
            if (e % k != 0) throw ArithmeticError("divided power is not integral");
            e /= k;
        }
        cur = d;
        if (is_zero_matrix(IntegerRing{}, cur)) break;
        out.push_back(cur);
        if (k > static_cast<long long>(x.n) + 1) throw ArithmeticError("matrix is not nilpotent");
    }
    return out;
}

// exp(t x) = sum_k t^k x^(k) from precomputed divided powers.
template <class Ring>
Matrix<Ring> exp_divided(const Ring& r, const std::vector<IntMatrix>& dp, const typename Ring::Elem& t) {
    auto out = from_int(r, dp[0]);
    auto tk = r.one();
    for (std::size_t k = 1; k < dp.size(); ++k) {
        tk = r.mul(tk, t);
        if (r.is_zero(tk)) break;
        out = add(r, out, scale(r, tk, from_int(r, dp[k])));
    }
    return out;
}

}  // namespace amalgam
