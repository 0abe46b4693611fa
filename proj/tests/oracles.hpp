#pragma once

// Reference computations written without the library's algorithms. Only the
// Rational type is shared.

#include <cstdint>
#include <vector>

#include "syzmod/rational.hpp"

namespace oracle {

using syzmod::Rational;

/// Number of monomials of total degree d in k variables, by enumeration.
inline std::int64_t monomials(int k, std::int64_t d) {
    if (d < 0) return 0;
    if (k == 1) return 1;
    std::int64_t total = 0;
    for (std::int64_t first = 0; first <= d; ++first) total += monomials(k - 1, d - first);
    return total;
}

/// h^i(O(d)) on P^n: sections are degree-d monomials; the top group is dual
/// to sections of O(-d-n-1).
inline std::vector<std::int64_t> bott(int n, std::int64_t d) {
    std::vector<std::int64_t> h(n + 1, 0);
    h[0] = monomials(n + 1, d);
    h[n] += monomials(n + 1, -d - n - 1);
    return h;
}

inline std::vector<std::int64_t> bott_sum(int n, const std::vector<std::int64_t>& degrees) {
    std::vector<std::int64_t> h(n + 1, 0);
    for (auto d : degrees) {
        const auto t = bott(n, d);
        for (int i = 0; i <= n; ++i) h[i] += t[i];
    }
    return h;
}

inline std::int64_t alternating(const std::vector<std::int64_t>& h) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < h.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * h[i];
    return s;
}

/// Hilbert polynomial of P^n evaluated at d: prod_{k=1..n} (d + k) / k.
inline Rational hilbert_polynomial(int n, std::int64_t d) {
    Rational p(1);
    for (int k = 1; k <= n; ++k) p *= Rational(d + k, k);
    return p;
}

/// Inverse of 1 + a_1 t + ... + a_n t^n modulo t^(n+1), by the recursion
/// b_k = -sum_{j=1..k} a_j b_{k-j}.
inline std::vector<std::int64_t> series_inverse(const std::vector<std::int64_t>& a) {
    std::vector<std::int64_t> b(a.size(), 0);
    b[0] = 1;
    for (std::size_t k = 1; k < a.size(); ++k)
        for (std::size_t j = 1; j <= k; ++j) b[k] -= a[j] * b[k - j];
    return b;
}

inline std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> c(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline Rational fact(int k) {
    Rational f(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// Coefficients of exp(d t) up to t^n.
inline std::vector<Rational> exp_series(std::int64_t d, int n) {
    std::vector<Rational> e(n + 1);
    Rational p(1);
    for (int k = 0; k <= n; ++k) {
        e[k] = p / fact(k);
        p *= d;
    }
    return e;
}

/// Chern character of O(d_1) + ... + O(d_m) on P^n, as h-coefficients.
inline std::vector<Rational> ch_split(const std::vector<std::int64_t>& degrees, int n) {
    std::vector<Rational> ch(n + 1, Rational(0));
    for (auto d : degrees) {
        const auto e = exp_series(d, n);
        for (int k = 0; k <= n; ++k) ch[k] += e[k];
    }
    return ch;
}

/// Todd class of P^n as (t / (1 - e^{-t}))^(n+1) truncated at t^n.
inline std::vector<Rational> todd_pn(int n) {
    // g(t) = (1 - e^{-t}) / t = sum_k (-1)^k t^k / (k+1)!
    std::vector<Rational> g(n + 1);
    for (int k = 0; k <= n; ++k) g[k] = Rational(k % 2 == 0 ? 1 : -1) / fact(k + 1);
    std::vector<Rational> inv(n + 1, Rational(0));
    inv[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= k; ++j) inv[k] -= g[j] * inv[k - j];
    std::vector<Rational> td(n + 1, Rational(0));
    td[0] = 1;
    for (int i = 0; i <= n; ++i) td = series_mul(td, inv);
    return td;
}

/// Integral of ch * td over P^n.
inline Rational hrr_pn(const std::vector<Rational>& ch, int n) {
    const auto td = todd_pn(n);
    Rational s(0);
    for (int k = 0; k <= n; ++k) s += ch[k] * td[n - k];
    return s;
}

/// Euler sequence on P^n: h^0(Ω^1(t)) = (n+1) h^0(O(t-1)) - h^0(O(t)) for t >= 1.
inline std::int64_t h0_cotangent_twist(int n, std::int64_t t) {
    return (n + 1) * monomials(n + 1, t - 1) - monomials(n + 1, t);
}

/// ext^1(S,S) for S = syz(O(d), w) on P^n, d >= 1, S simple, by chasing
///   0 -> S(-d) -> S^w -> End S -> 0
/// with h(S(-d)) = (0, 1, 0, .., w h^n(O(-d))) and h(S) = (0, v - w, 0, .., 0):
///   0 -> H^0 End -> H^1 S(-d) = 1 -> (H^1 S)^w -> H^1 End -> H^2 S(-d) -> 0
/// where H^2 S(-d) is nonzero only on surfaces.
inline std::int64_t syzygy_ext1(int n, std::int64_t d, std::int64_t w) {
    const std::int64_t v = monomials(n + 1, d);
    const std::int64_t h0_end = 1, h1_twist = 1;
    const std::int64_t h2_twist = n == 2 ? w * bott(n, -d)[2] : 0;
    return h0_end - h1_twist + w * (v - w) + h2_twist;
}

}  // namespace oracle
