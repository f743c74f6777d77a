#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "vklab/partitions.hpp"
#include "vklab/symfunc.hpp"

namespace vklab {

using Matrix = Eigen::MatrixXcd;

// Square complex matrix certified at construction to have operator norm
// <= 1 + tol.  The common currency of compressions.
struct ContractionMatrix {
    Matrix entries;
    double declared_norm_bound = 1.0;
    double measured_norm = 0.0;

    static ContractionMatrix make(Matrix entries, double tol = 1e-10);
};

// Truncated split H = H_plus (+) H_minus with the basis ordered e_1..e_P,
// f_1..f_M; the induced projection onto H_minus is diagonal 0/1 of rank M.
struct CompressionFrame {
    long dim_plus = 0;
    long dim_minus = 0;

    static CompressionFrame make(long dim_plus, long dim_minus);
    long total() const { return dim_plus + dim_minus; }
};

// f(z) = e^{gamma (z-1)} prod_k (1 - b_k + b_k z) / (1 + a_k - a_k z).
// Normalized so f(1) = 1.  Rejects |z| at or beyond the nearest pole.
Complex vk_f_scalar(const VKParams& params, Complex z);

// The same function applied to a contraction A by the holomorphic calculus:
// exp(gamma (A - I)), then per k the numerator factor and a linear solve for
// the denominator factor.  All factors commute; this fixed order is canonical.
Matrix vk_f_matrix(const VKParams& params, const ContractionMatrix& A);
Matrix vk_f_matrix(const VKParams& params, const Matrix& A, double norm_tol = 1e-10);

// det[f(W)] on the finite support block of a unitary; the identity part
// contributes f(1) = 1 and is omitted.  Throws unless all singular values of
// W are within unitary_tol of 1.
Complex character_det(const VKParams& params, const Matrix& w_block, double unitary_tol = 1e-8);

// det[f(B)] where B is the H_minus corner of W in the frame's basis, i.e. the
// compression F W F restricted to range(F).
Complex compressed_functional(const VKParams& params, const CompressionFrame& frame,
                              const Matrix& w, double norm_tol = 1e-8);

// Block embeddings in the frame's ordered basis.
Matrix embed_minus(const CompressionFrame& frame, const Matrix& u_minus);
Matrix embed_plus(const CompressionFrame& frame, const Matrix& u_plus);
Matrix minus_block(const CompressionFrame& frame, const Matrix& w);

struct PsdReport {
    double min_eigenvalue = 0.0;
    double hermiticity_defect = 0.0;
    std::size_t m = 0;
    bool pass = false;
};

// Positive-definiteness witness: G_ij = functional(g_i^{-1} g_j) must be
// Hermitian (hard failure otherwise: that indicates a bug in the functional,
// not a math failure) with min eigenvalue >= -tol * m.
PsdReport gram_psd_check(const std::function<Complex(const Matrix&)>& functional,
                         const std::vector<Matrix>& unitaries, double tol);

// Same verdict computed from an already-assembled Gram matrix.
PsdReport psd_report_from_gram(const Matrix& gram, double tol,
                               double hermitian_tol = 1e-10);

}  // namespace vklab
