#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "vklab/partitions.hpp"
#include "vklab/symfunc.hpp"
#include "vklab/table.hpp"

namespace vklab {

// The fixed vector omega together with the symmetric-tensor degree; the
// volume is its squared norm, recomputed and checked at construction.
struct SphericalConfig {
    Eigen::VectorXcd omega;
    long tensor_degree = 0;
    double volume = 0.0;

    static SphericalConfig make(Eigen::VectorXcd omega, long tensor_degree);
};

// ((W omega, omega) / |omega|^2)^n: the degree-n spherical function of the
// pair (orthogonal group, stabilizer of omega).
std::complex<double> spherical_fn(const Eigen::MatrixXcd& w, const SphericalConfig& cfg);

// exp(rate * ([W - I] omega, omega)); the limit object of the spherical
// functions along an N/V schedule.
std::complex<double> e_lambda(double rate, const Eigen::MatrixXcd& w,
                              const Eigen::VectorXcd& omega);

// Joint growth schedule: volumes V with particle numbers N = round(density*V).
struct LimitSchedule {
    std::vector<long> V_values;
    double density = 0.0;

    static LimitSchedule make(std::vector<long> V_values, double density);
    long N_of(long V) const;
};

// Symmetric-power ratio Tr[S^N]/dim S^N(C^V) down the schedule against the
// product limit 1/prod(1 + d - d a_i), d = density.  Rows with V <= 64 are
// cross-checked against the exact-rational backend; disagreement beyond
// 1e-10 relative is reported in `warnings`, never silently dropped.
ConvergenceTable nv_limit_experiment(const EigenList& spectrum_block,
                                     const LimitSchedule& schedule);

// Exterior-power analogue: e_N ratio against prod(1 - d + d a_i), d <= 1.
ConvergenceTable exterior_limit_experiment(const EigenList& spectrum_block,
                                           const LimitSchedule& schedule);

// Normalized irreducible characters along the signature sequence of `params`
// against the product of the scalar character function over the spectrum.
// Only the V list of the schedule is used (the particle numbers are dictated
// by the signature statistics).
ConvergenceTable asymptotic_character_experiment(const VKParams& params,
                                                 const EigenList& spectrum_block,
                                                 const LimitSchedule& schedule);

// Exact ratios for the oracle path (V small enough for rational arithmetic).
Rational nv_ratio_exact(const RationalEigenList& spectrum_block, long V, long N);
Rational exterior_ratio_exact(const RationalEigenList& spectrum_block, long V, long N);

// Scalar convergence model of the spherical-function limit:
// value (1 + c/V)^N vs limit e^{rate*c}.  PerVolume takes N = floor(rate*V);
// PerSqrtVolume takes N = floor(rate*sqrt(V)), which drives the value to 1
// instead of the limit and is kept here to demonstrate that normalization
// does not converge.
enum class DensityNormalization { PerVolume, PerSqrtVolume };

ConvergenceTable e_lambda_limit_experiment(double c, double rate,
                                           const std::vector<long>& V_values,
                                           DensityNormalization normalization =
                                               DensityNormalization::PerVolume);

}  // namespace vklab
