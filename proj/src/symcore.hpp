#pragma once

// Shared kernels for the symmetric-function backends.  Everything here is a
// straight template over the scalar field so the exact-rational oracle and
// the scaled-double production path run literally the same algorithm.

#include <cstddef>
#include <vector>

#include "vklab/scaled.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace vklab::detail {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct FieldOps;

template <>
struct FieldOps<std::complex<double>> {
    using T = std::complex<double>;
    static T zero() { return {0.0, 0.0}; }
    static T one() { return {1.0, 0.0}; }
    static T from_count(std::size_t n) { return {static_cast<double>(n), 0.0}; }
    static T from_long(long n) { return {static_cast<double>(n), 0.0}; }
    static bool is_zero(const T& x) { return x == T{0.0, 0.0}; }
    static bool pivot_less(const T& a, const T& b) { return std::abs(a) < std::abs(b); }
};

template <>
struct FieldOps<ScaledComplex> {
    using T = ScaledComplex;
    static T zero() { return ScaledComplex::zero(); }
    static T one() { return ScaledComplex::one(); }
    static T from_count(std::size_t n) { return ScaledComplex::from(static_cast<double>(n)); }
    static T from_long(long n) { return ScaledComplex::from(static_cast<double>(n)); }
    static bool is_zero(const T& x) { return x.is_zero(); }
    static bool pivot_less(const T& a, const T& b) { return a.log2_abs() < b.log2_abs(); }
};

template <>
struct FieldOps<Rational> {
    using T = Rational;
    static T zero() { return 0; }
    static T one() { return 1; }
    static T from_count(std::size_t n) { return T(static_cast<long>(n)); }
    static T from_long(long n) { return T(n); }
    static bool is_zero(const T& x) { return x == 0; }
    static bool pivot_less(const T& a, const T& b) { return abs(a) < abs(b); }
};

// p_0..p_kmax with p_k = sum x_i^k; padding variables equal to one add their
// count to every p_k (and to p_0, the variable count).
template <class T>
std::vector<T> power_sums_core(const std::vector<T>& values, std::size_t pad, int kmax) {
    using F = FieldOps<T>;
    std::vector<T> p(static_cast<std::size_t>(kmax) + 1, F::zero());
    p[0] = F::from_count(values.size() + pad);
    std::vector<T> pw = values;
    for (int k = 1; k <= kmax; ++k) {
        T s = F::from_count(pad);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (k > 1) pw[i] = pw[i] * values[i];
            s += pw[i];
        }
        p[static_cast<std::size_t>(k)] = s;
    }
    return p;
}

// Newton: k h_k = sum_{j=1..k} p_j h_{k-j}
template <class T>
std::vector<T> h_from_power_sums(const std::vector<T>& p, int kmax) {
    using F = FieldOps<T>;
    std::vector<T> h(static_cast<std::size_t>(kmax) + 1, F::zero());
    h[0] = F::one();
    for (int k = 1; k <= kmax; ++k) {
        T acc = F::zero();
        for (int j = 1; j <= k; ++j)
            acc += p[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(k - j)];
        h[static_cast<std::size_t>(k)] = acc / F::from_long(k);
    }
    return h;
}

// Newton with alternating signs: k e_k = sum_{j=1..k} (-1)^{j-1} p_j e_{k-j};
// e_k vanishes identically above the variable count and is clamped there.
template <class T>
std::vector<T> e_from_power_sums(const std::vector<T>& p, int kmax, std::size_t nvars) {
    using F = FieldOps<T>;
    std::vector<T> e(static_cast<std::size_t>(kmax) + 1, F::zero());
    e[0] = F::one();
    for (int k = 1; k <= kmax; ++k) {
        if (static_cast<std::size_t>(k) > nvars) break;  // exact zero beyond nvars
        T acc = F::zero();
        for (int j = 1; j <= k; ++j) {
            const T term = p[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k - j)];
            if (j % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        e[static_cast<std::size_t>(k)] = acc / F::from_long(k);
    }
    return e;
}

// LU determinant with partial pivoting (by magnitude; exact fields just need
// any nonzero pivot, taking the largest keeps rational sizes tame too).
template <class T>
T determinant_core(std::vector<std::vector<T>> m) {
    using F = FieldOps<T>;
    const std::size_t n = m.size();
    if (n == 0) return F::one();
    T det = F::one();
    bool negate = false;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (F::pivot_less(m[piv][c], m[r][c])) piv = r;
        if (F::is_zero(m[piv][c])) return F::zero();
        if (piv != c) {
            std::swap(m[piv], m[c]);
            negate = !negate;
        }
        det = det * m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (F::is_zero(m[r][c])) continue;
            const T f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
        }
    }
    if (negate) det = F::zero() - det;
    return det;
}

inline std::vector<long> conjugate_of(const std::vector<long>& parts) {
    if (parts.empty()) return {};
    std::vector<long> conj(static_cast<std::size_t>(parts[0]), 0);
    for (long p : parts)
        for (long j = 0; j < p; ++j) conj[static_cast<std::size_t>(j)]++;
    return conj;
}

// Schur polynomial via the smaller of the two determinantal forms:
// det[h_{l_i-i+j}] of size len(l), or det[e_{l'_i-i+j}] of size l_1.
// More parts than variables gives 0 by the usual vanishing.
template <class T>
T schur_core(const std::vector<long>& parts, const std::vector<T>& values, std::size_t pad) {
    using F = FieldOps<T>;
    if (parts.empty()) return F::one();
    const std::size_t nvars = values.size() + pad;
    if (parts.size() > nvars) return F::zero();

    const bool dual = static_cast<long>(parts.size()) > parts[0];
    const std::vector<long> rows = dual ? conjugate_of(parts) : parts;
    const std::size_t n = rows.size();
    const int kmax = static_cast<int>(rows[0] + static_cast<long>(n));

    const auto p = power_sums_core(values, pad, kmax);
    const auto series = dual ? e_from_power_sums(p, kmax, nvars) : h_from_power_sums(p, kmax);

    std::vector<std::vector<T>> m(n, std::vector<T>(n, F::zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const long idx = rows[i] - static_cast<long>(i) + static_cast<long>(j);
            if (idx >= 0 && idx <= kmax) m[i][j] = series[static_cast<std::size_t>(idx)];
        }
    return determinant_core(std::move(m));
}

// Skew Schur via det[h_{l_i - mu_j - i + j}]; zero without containment.
template <class T>
T skew_schur_core(const std::vector<long>& outer, const std::vector<long>& inner,
                  const std::vector<T>& values, std::size_t pad) {
    using F = FieldOps<T>;
    if (inner.size() > outer.size()) return F::zero();
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner[i] > outer[i]) return F::zero();
    if (outer.empty()) return F::one();

    const std::size_t n = outer.size();
    const int kmax = static_cast<int>(outer[0] + static_cast<long>(n));
    const auto p = power_sums_core(values, pad, kmax);
    const auto h = h_from_power_sums(p, kmax);

    const auto mu = [&](std::size_t j) -> long {
        return j < inner.size() ? inner[j] : 0;
    };
    std::vector<std::vector<T>> m(n, std::vector<T>(n, F::zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const long idx =
                outer[i] - mu(j) - static_cast<long>(i) + static_cast<long>(j);
            if (idx >= 0 && idx <= kmax) m[i][j] = h[static_cast<std::size_t>(idx)];
        }
    return determinant_core(std::move(m));
}

}  // namespace vklab::detail
