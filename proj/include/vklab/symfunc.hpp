#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vklab/partitions.hpp"
#include "vklab/scaled.hpp"

namespace vklab {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

// Evaluation point: an explicit list of complex values plus a count of extra
// variables equal to one.  Padding is how a finite spectrum block sits inside
// U(C^V): the identity part contributes exactly one per variable.
struct EigenList {
    std::vector<Complex> values;
    std::size_t padding_ones = 0;

    static EigenList make(std::vector<Complex> values, std::size_t padding_ones = 0);
    std::size_t total_count() const { return values.size() + padding_ones; }

    // Throws NumericalError if any |value| exceeds 1 + tol; used whenever the
    // list is meant to be the spectrum of a contraction.
    void require_contraction(double tol = 1e-10) const;
};

// Same point with exact rational coordinates (real), for the oracle backend.
struct RationalEigenList {
    std::vector<Rational> values;
    std::size_t padding_ones = 0;

    std::size_t total_count() const { return values.size() + padding_ones; }

    // Exact conversion: every double is a dyadic rational.  Throws if any
    // value has a nonzero imaginary part.
    static RationalEigenList from(const EigenList& x);
};

Rational rational_from_double(double x);
double rational_to_double(const Rational& r);

// Round-trippable decimal rendering of an exact result, for fixtures.
std::string rational_to_decimal_string(const Rational& r, unsigned digits = 30);

// --- double backend ---------------------------------------------------------

std::vector<Complex> power_sums(const EigenList& x, int kmax);
std::vector<Complex> complete_homogeneous(const EigenList& x, int kmax);
std::vector<Complex> elementary(const EigenList& x, int kmax);

// s_sig(x) by the determinantal formula on whichever of the h- or e-series
// gives the smaller determinant.  More parts than variables evaluates to 0.
Complex schur_eval(const Signature& sig, const EigenList& x);
ScaledComplex schur_eval_scaled(const Signature& sig, const EigenList& x);

// s_{outer/inner}(x); zero when inner is not contained in outer.
Complex skew_schur_eval(const Signature& outer, const Signature& inner, const EigenList& x);

// Trace of the N-th symmetric (resp. exterior) power of an operator with the
// given spectrum: h_N (resp. e_N) of the eigenvalue list.
Complex sym_power_trace(const EigenList& spectrum, long N);
ScaledComplex sym_power_trace_scaled(const EigenList& spectrum, long N);
ScaledComplex exterior_power_trace_scaled(const EigenList& spectrum, long N);

// s_sig(spectrum padded to V variables) / dim of the rank-V irreducible.
// Scaled arithmetic throughout, so V in the hundreds is fine.
Complex normalized_character(const Signature& sig, const EigenList& w_spectrum, long V);

// --- exact backend ----------------------------------------------------------

std::vector<Rational> power_sums_exact(const RationalEigenList& x, int kmax);
std::vector<Rational> complete_homogeneous_exact(const RationalEigenList& x, int kmax);
std::vector<Rational> elementary_exact(const RationalEigenList& x, int kmax);
Rational schur_eval_exact(const Signature& sig, const RationalEigenList& x);
Rational skew_schur_eval_exact(const Signature& outer, const Signature& inner,
                               const RationalEigenList& x);
Rational sym_power_trace_exact(const RationalEigenList& spectrum, long N);
Rational exterior_power_trace_exact(const RationalEigenList& spectrum, long N);
Rational normalized_character_exact(const Signature& sig, const RationalEigenList& w_spectrum,
                                    long V);

}  // namespace vklab
