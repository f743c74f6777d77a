#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace vklab {

// Complex number with a separate power-of-two exponent: value = mant * 2^exp2.
// Keeps products of symmetric-function series and their determinants
// representable far beyond the double range (binomials at N,V in the hundreds
// overflow 1e308 easily).  The mantissa is kept with max(|re|,|im|) in [1,2).
struct ScaledComplex {
    std::complex<double> mant{0.0, 0.0};
    long exp2 = 0;

    ScaledComplex() = default;
    ScaledComplex(std::complex<double> m, long e) : mant(m), exp2(e) { normalize(); }

    static ScaledComplex from(std::complex<double> z) { return ScaledComplex(z, 0); }
    static ScaledComplex from(double x) { return ScaledComplex({x, 0.0}, 0); }
    static ScaledComplex zero() { return ScaledComplex(); }
    static ScaledComplex one() { return from(1.0); }

    bool is_zero() const { return mant.real() == 0.0 && mant.imag() == 0.0; }

    void normalize() {
        const double a = std::max(std::fabs(mant.real()), std::fabs(mant.imag()));
        if (a == 0.0 || !std::isfinite(a)) {
            if (!std::isfinite(a)) return;  // leave inf/nan visible to the caller
            mant = {0.0, 0.0};
            exp2 = 0;
            return;
        }
        int k = 0;
        (void)std::frexp(a, &k);  // a = f*2^k, f in [0.5,1)
        mant = {std::ldexp(mant.real(), 1 - k), std::ldexp(mant.imag(), 1 - k)};
        exp2 += k - 1;
    }

    // log2 of the modulus; -inf for zero.
    double log2_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log2(std::abs(mant)) + static_cast<double>(exp2);
    }

    std::complex<double> phase() const {
        const double a = std::abs(mant);
        return a == 0.0 ? std::complex<double>{0.0, 0.0} : mant / a;
    }

    // May overflow/underflow to inf/0; callers convert only when the value is
    // known to be in range.
    std::complex<double> to_complex() const {
        return {std::ldexp(mant.real(), static_cast<int>(exp2)),
                std::ldexp(mant.imag(), static_cast<int>(exp2))};
    }

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return ScaledComplex(a.mant * b.mant, a.exp2 + b.exp2);
    }

    friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
        return ScaledComplex(a.mant / b.mant, a.exp2 - b.exp2);
    }

    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const long d = a.exp2 - b.exp2;
        if (d > 120) return a;
        if (d < -120) return b;
        const long e = std::max(a.exp2, b.exp2);
        const auto lift = [e](const ScaledComplex& x) {
            const int s = static_cast<int>(x.exp2 - e);
            return std::complex<double>{std::ldexp(x.mant.real(), s), std::ldexp(x.mant.imag(), s)};
        };
        return ScaledComplex(lift(a) + lift(b), e);
    }

    friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
        return a + ScaledComplex(-b.mant, b.exp2);
    }

    ScaledComplex& operator+=(const ScaledComplex& o) { return *this = *this + o; }
    ScaledComplex& operator-=(const ScaledComplex& o) { return *this = *this - o; }
    ScaledComplex& operator*=(const ScaledComplex& o) { return *this = *this * o; }

    friend ScaledComplex operator*(const ScaledComplex& a, double s) {
        return ScaledComplex(a.mant * s, a.exp2);
    }
    friend ScaledComplex operator/(const ScaledComplex& a, double s) {
        return ScaledComplex(a.mant / s, a.exp2);
    }
};

}  // namespace vklab
