#include "vklab/symfunc.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "symcore.hpp"
#include "vklab/errors.hpp"

namespace vklab {

EigenList EigenList::make(std::vector<Complex> values, std::size_t padding_ones) {
    EigenList x;
    x.values = std::move(values);
    x.padding_ones = padding_ones;
    if (x.total_count() == 0)
        throw std::invalid_argument("EigenList: at least one variable required");
    return x;
}

void EigenList::require_contraction(double tol) const {
    for (const auto& v : values)
        if (std::abs(v) > 1.0 + tol)
            throw NumericalError("spectrum entry of modulus " + std::to_string(std::abs(v)) +
                                 " exceeds the contraction bound");
}

static std::vector<ScaledComplex> to_scaled(const std::vector<Complex>& v) {
    std::vector<ScaledComplex> out;
    out.reserve(v.size());
    for (const auto& z : v) out.push_back(ScaledComplex::from(z));
    return out;
}

std::vector<Complex> power_sums(const EigenList& x, int kmax) {
    if (kmax < 0) throw std::invalid_argument("power_sums: kmax must be >= 0");
    return detail::power_sums_core(x.values, x.padding_ones, kmax);
}

std::vector<Complex> complete_homogeneous(const EigenList& x, int kmax) {
    if (kmax < 0) throw std::invalid_argument("complete_homogeneous: kmax must be >= 0");
    const auto p = detail::power_sums_core(x.values, x.padding_ones, kmax);
    return detail::h_from_power_sums(p, kmax);
}

std::vector<Complex> elementary(const EigenList& x, int kmax) {
    if (kmax < 0) throw std::invalid_argument("elementary: kmax must be >= 0");
    const auto p = detail::power_sums_core(x.values, x.padding_ones, kmax);
    return detail::e_from_power_sums(p, kmax, x.total_count());
}

ScaledComplex schur_eval_scaled(const Signature& sig, const EigenList& x) {
    return detail::schur_core(sig.parts(), to_scaled(x.values), x.padding_ones);
}

Complex schur_eval(const Signature& sig, const EigenList& x) {
    return schur_eval_scaled(sig, x).to_complex();
}

Complex skew_schur_eval(const Signature& outer, const Signature& inner, const EigenList& x) {
    return detail::skew_schur_core(outer.parts(), inner.parts(), to_scaled(x.values),
                                   x.padding_ones)
        .to_complex();
}

ScaledComplex sym_power_trace_scaled(const EigenList& spectrum, long N) {
    if (N < 0) throw std::invalid_argument("sym_power_trace: N must be >= 0");
    const auto p = detail::power_sums_core(to_scaled(spectrum.values), spectrum.padding_ones,
                                           static_cast<int>(N));
    const auto h = detail::h_from_power_sums(p, static_cast<int>(N));
    return h.back();
}

ScaledComplex exterior_power_trace_scaled(const EigenList& spectrum, long N) {
    if (N < 0) throw std::invalid_argument("exterior_power_trace: N must be >= 0");
    const auto p = detail::power_sums_core(to_scaled(spectrum.values), spectrum.padding_ones,
                                           static_cast<int>(N));
    const auto e =
        detail::e_from_power_sums(p, static_cast<int>(N), spectrum.total_count());
    return e.back();
}

Complex sym_power_trace(const EigenList& spectrum, long N) {
    return sym_power_trace_scaled(spectrum, N).to_complex();
}

Complex normalized_character(const Signature& sig, const EigenList& w_spectrum, long V) {
    if (V <= 0) throw std::invalid_argument("normalized_character: V must be positive");
    if (static_cast<long>(w_spectrum.values.size()) > V)
        throw std::invalid_argument("normalized_character: more listed eigenvalues than V");
    if (static_cast<long>(sig.length()) > V)
        throw std::invalid_argument("normalized_character: signature longer than V");

    EigenList padded = w_spectrum;
    padded.padding_ones = static_cast<std::size_t>(V) - w_spectrum.values.size();

    const ScaledComplex s = schur_eval_scaled(sig, padded);
    if (s.is_zero()) return {0.0, 0.0};
    const double log2_ratio = s.log2_abs() - weyl_log2_dimension(sig, V);
    return s.phase() * std::exp2(log2_ratio);
}

// --- exact backend ----------------------------------------------------------

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    // every finite double is m * 2^e with integer m
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5,1)
    for (int i = 0; i < 64 && m != std::floor(m); ++i) {
        m *= 2.0;
        --e;
    }
    Rational r(static_cast<long long>(m));
    if (e > 0)
        r *= Rational(boost::multiprecision::cpp_int(1) << e);
    else if (e < 0)
        r /= Rational(boost::multiprecision::cpp_int(1) << -e);
    return r;
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

std::string rational_to_decimal_string(const Rational& r, unsigned digits) {
    using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<80>>;
    std::ostringstream os;
    os << std::setprecision(static_cast<int>(digits)) << r.convert_to<Wide>();
    return os.str();
}

RationalEigenList RationalEigenList::from(const EigenList& x) {
    RationalEigenList out;
    out.padding_ones = x.padding_ones;
    out.values.reserve(x.values.size());
    for (const auto& z : x.values) {
        if (z.imag() != 0.0)
            throw std::invalid_argument("exact backend supports real spectra only");
        out.values.push_back(rational_from_double(z.real()));
    }
    return out;
}

std::vector<Rational> power_sums_exact(const RationalEigenList& x, int kmax) {
    return detail::power_sums_core(x.values, x.padding_ones, kmax);
}

std::vector<Rational> complete_homogeneous_exact(const RationalEigenList& x, int kmax) {
    const auto p = detail::power_sums_core(x.values, x.padding_ones, kmax);
    return detail::h_from_power_sums(p, kmax);
}

std::vector<Rational> elementary_exact(const RationalEigenList& x, int kmax) {
    const auto p = detail::power_sums_core(x.values, x.padding_ones, kmax);
    return detail::e_from_power_sums(p, kmax, x.total_count());
}

Rational schur_eval_exact(const Signature& sig, const RationalEigenList& x) {
    return detail::schur_core(sig.parts(), x.values, x.padding_ones);
}

Rational skew_schur_eval_exact(const Signature& outer, const Signature& inner,
                               const RationalEigenList& x) {
    return detail::skew_schur_core(outer.parts(), inner.parts(), x.values, x.padding_ones);
}

Rational sym_power_trace_exact(const RationalEigenList& spectrum, long N) {
    if (N < 0) throw std::invalid_argument("sym_power_trace_exact: N must be >= 0");
    const auto p =
        detail::power_sums_core(spectrum.values, spectrum.padding_ones, static_cast<int>(N));
    return detail::h_from_power_sums(p, static_cast<int>(N)).back();
}

Rational exterior_power_trace_exact(const RationalEigenList& spectrum, long N) {
    if (N < 0) throw std::invalid_argument("exterior_power_trace_exact: N must be >= 0");
    const auto p =
        detail::power_sums_core(spectrum.values, spectrum.padding_ones, static_cast<int>(N));
    return detail::e_from_power_sums(p, static_cast<int>(N), spectrum.total_count()).back();
}

Rational normalized_character_exact(const Signature& sig, const RationalEigenList& w_spectrum,
                                    long V) {
    if (V <= 0) throw std::invalid_argument("normalized_character_exact: V must be positive");
    RationalEigenList padded = w_spectrum;
    padded.padding_ones = static_cast<std::size_t>(V) - w_spectrum.values.size();
    const Rational s = schur_eval_exact(sig, padded);
    const BigInt dim = weyl_dimension(sig, V);
    return s / Rational(dim);
}

}  // namespace vklab
