#include "vklab/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vklab/errors.hpp"
#include "vklab/vkchar.hpp"

namespace vklab {

SphericalConfig SphericalConfig::make(Eigen::VectorXcd omega, long tensor_degree) {
    if (omega.size() == 0 || omega.norm() == 0.0)
        throw std::invalid_argument("SphericalConfig: omega must be nonzero");
    if (tensor_degree < 0)
        throw std::invalid_argument("SphericalConfig: tensor degree must be >= 0");
    SphericalConfig cfg;
    cfg.volume = omega.squaredNorm();
    cfg.omega = std::move(omega);
    cfg.tensor_degree = tensor_degree;
    return cfg;
}

std::complex<double> spherical_fn(const Eigen::MatrixXcd& w, const SphericalConfig& cfg) {
    if (w.rows() != cfg.omega.size() || w.cols() != cfg.omega.size())
        throw std::invalid_argument("spherical_fn: W must act on omega's space");
    // (W omega, omega) with the inner product linear in the first slot
    const std::complex<double> pairing = cfg.omega.dot(w * cfg.omega);
    return std::pow(pairing / cfg.volume, static_cast<double>(cfg.tensor_degree));
}

std::complex<double> e_lambda(double rate, const Eigen::MatrixXcd& w,
                              const Eigen::VectorXcd& omega) {
    if (w.rows() != omega.size() || w.cols() != omega.size())
        throw std::invalid_argument("e_lambda: W must act on omega's space");
    const std::complex<double> pairing = omega.dot(w * omega - omega);
    return std::exp(rate * pairing);
}

LimitSchedule LimitSchedule::make(std::vector<long> V_values, double density) {
    if (V_values.empty()) throw std::invalid_argument("LimitSchedule: empty V list");
    for (std::size_t i = 0; i < V_values.size(); ++i) {
        if (V_values[i] <= 0) throw std::invalid_argument("LimitSchedule: V must be positive");
        if (i + 1 < V_values.size() && V_values[i] >= V_values[i + 1])
            throw std::invalid_argument("LimitSchedule: V values must be strictly increasing");
    }
    if (!(density >= 0.0)) throw std::invalid_argument("LimitSchedule: density must be >= 0");
    LimitSchedule s;
    s.V_values = std::move(V_values);
    s.density = density;
    return s;
}

long LimitSchedule::N_of(long V) const {
    return std::lround(density * static_cast<double>(V));
}

namespace {

constexpr long kExactCheckMaxV = 64;
constexpr double kBackendAgreementTol = 1e-10;

Complex scaled_ratio(const ScaledComplex& numerator, double log2_denominator) {
    if (numerator.is_zero()) return {0.0, 0.0};
    return numerator.phase() * std::exp2(numerator.log2_abs() - log2_denominator);
}

bool spectrum_is_real(const EigenList& x) {
    for (const auto& v : x.values)
        if (v.imag() != 0.0) return false;
    return true;
}

void check_backend_agreement(ConvergenceTable& table, long V, Complex float_value,
                             const Rational& exact_value, const char* what) {
    const double ex = rational_to_double(exact_value);
    const double rel =
        std::abs(float_value - Complex{ex, 0.0}) / std::max(1.0, std::abs(ex));
    if (rel > kBackendAgreementTol) {
        std::ostringstream os;
        os << what << ": float/exact backends disagree at V=" << V << " (rel " << rel << ")";
        table.warnings.push_back(os.str());
    }
}

}  // namespace

ConvergenceTable nv_limit_experiment(const EigenList& spectrum_block,
                                     const LimitSchedule& schedule) {
    spectrum_block.require_contraction();
    const long r = static_cast<long>(spectrum_block.values.size());

    Complex limit{1.0, 0.0};
    const double d = schedule.density;
    for (const auto& a : spectrum_block.values) limit /= 1.0 + d - d * a;

    ConvergenceTable table;
    const bool exact_ok = spectrum_is_real(spectrum_block);
    for (long V : schedule.V_values) {
        if (V < r) throw std::invalid_argument("nv_limit: V smaller than the spectrum block");
        const long N = schedule.N_of(V);
        EigenList padded = spectrum_block;
        padded.padding_ones = static_cast<std::size_t>(V - r);
        const Complex value =
            scaled_ratio(sym_power_trace_scaled(padded, N), log2_binomial(N + V - 1, N));
        table.rows.push_back({V, N, value, limit, std::abs(value - limit)});
        if (exact_ok && V <= kExactCheckMaxV) {
            const Rational exact =
                nv_ratio_exact(RationalEigenList::from(spectrum_block), V, N);
            check_backend_agreement(table, V, value, exact, "nv_limit");
        }
    }
    return table;
}

ConvergenceTable exterior_limit_experiment(const EigenList& spectrum_block,
                                           const LimitSchedule& schedule) {
    spectrum_block.require_contraction();
    if (schedule.density > 1.0)
        throw std::invalid_argument("exterior_limit: density cannot exceed 1");
    const long r = static_cast<long>(spectrum_block.values.size());

    Complex limit{1.0, 0.0};
    const double d = schedule.density;
    for (const auto& a : spectrum_block.values) limit *= 1.0 - d + d * a;

    ConvergenceTable table;
    const bool exact_ok = spectrum_is_real(spectrum_block);
    for (long V : schedule.V_values) {
        if (V < r) throw std::invalid_argument("exterior_limit: V smaller than the spectrum block");
        const long N = std::min(schedule.N_of(V), V);
        EigenList padded = spectrum_block;
        padded.padding_ones = static_cast<std::size_t>(V - r);
        const Complex value =
            scaled_ratio(exterior_power_trace_scaled(padded, N), log2_binomial(V, N));
        table.rows.push_back({V, N, value, limit, std::abs(value - limit)});
        if (exact_ok && V <= kExactCheckMaxV) {
            const Rational exact =
                exterior_ratio_exact(RationalEigenList::from(spectrum_block), V, N);
            check_backend_agreement(table, V, value, exact, "exterior_limit");
        }
    }
    return table;
}

ConvergenceTable asymptotic_character_experiment(const VKParams& params,
                                                 const EigenList& spectrum_block,
                                                 const LimitSchedule& schedule) {
    spectrum_block.require_contraction();
    const auto nonzero = [](const std::vector<double>& v) {
        return std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; });
    };
    if (nonzero(params.alphas) > 3 || nonzero(params.betas) > 3)
        throw std::invalid_argument(
            "asymptotic_character: at most 3 nonzero alphas and betas supported");
    const long r = static_cast<long>(spectrum_block.values.size());

    Complex limit{1.0, 0.0};
    for (const auto& a : spectrum_block.values) limit *= vk_f_scalar(params, a);

    ConvergenceTable table;
    const bool exact_ok = spectrum_is_real(spectrum_block);
    for (long V : schedule.V_values) {
        if (V < r)
            throw std::invalid_argument("asymptotic_character: V smaller than the spectrum block");
        const Signature lambda = signature_sequence(params, V);
        const Complex value = normalized_character(lambda, spectrum_block, V);
        table.rows.push_back(
            {V, lambda.weight(), value, limit, std::abs(value - limit)});
        if (exact_ok && V <= kExactCheckMaxV) {
            const Rational exact = normalized_character_exact(
                lambda, RationalEigenList::from(spectrum_block), V);
            check_backend_agreement(table, V, value, exact, "asymptotic_character");
        }
    }
    return table;
}

Rational nv_ratio_exact(const RationalEigenList& spectrum_block, long V, long N) {
    const long r = static_cast<long>(spectrum_block.values.size());
    if (V < r) throw std::invalid_argument("nv_ratio_exact: V smaller than the spectrum block");
    RationalEigenList padded = spectrum_block;
    padded.padding_ones = static_cast<std::size_t>(V - r);
    return sym_power_trace_exact(padded, N) / Rational(binomial(N + V - 1, N));
}

Rational exterior_ratio_exact(const RationalEigenList& spectrum_block, long V, long N) {
    const long r = static_cast<long>(spectrum_block.values.size());
    if (V < r)
        throw std::invalid_argument("exterior_ratio_exact: V smaller than the spectrum block");
    RationalEigenList padded = spectrum_block;
    padded.padding_ones = static_cast<std::size_t>(V - r);
    return exterior_power_trace_exact(padded, N) / Rational(binomial(V, N));
}

ConvergenceTable e_lambda_limit_experiment(double c, double rate,
                                           const std::vector<long>& V_values,
                                           DensityNormalization normalization) {
    ConvergenceTable table;
    const double limit = std::exp(rate * c);
    for (long V : V_values) {
        if (V <= 0) throw std::invalid_argument("e_lambda_limit: V must be positive");
        const double scale = normalization == DensityNormalization::PerVolume
                                 ? static_cast<double>(V)
                                 : std::sqrt(static_cast<double>(V));
        const long N = static_cast<long>(std::floor(rate * scale));
        const double value = std::pow(1.0 + c / static_cast<double>(V), static_cast<double>(N));
        table.rows.push_back(
            {V, N, Complex{value, 0.0}, Complex{limit, 0.0}, std::abs(value - limit)});
    }
    return table;
}

}  // namespace vklab
