#include "vklab/vkchar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "vklab/errors.hpp"

namespace vklab {

ContractionMatrix ContractionMatrix::make(Matrix entries, double tol) {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("ContractionMatrix: matrix must be square");
    ContractionMatrix c;
    c.measured_norm =
        entries.rows() == 0 ? 0.0 : entries.jacobiSvd().singularValues()(0);
    if (c.measured_norm > 1.0 + tol) {
        std::ostringstream os;
        os << "ContractionMatrix: operator norm " << c.measured_norm
           << " exceeds 1 + " << tol;
        throw NumericalError(os.str());
    }
    c.entries = std::move(entries);
    c.declared_norm_bound = 1.0 + tol;
    return c;
}

CompressionFrame CompressionFrame::make(long dim_plus, long dim_minus) {
    if (dim_plus < 0 || dim_minus <= 0)
        throw std::invalid_argument("CompressionFrame: need dim_plus >= 0, dim_minus >= 1");
    return CompressionFrame{dim_plus, dim_minus};
}

Complex vk_f_scalar(const VKParams& params, Complex z) {
    if (!params.alphas.empty()) {
        const double pole = 1.0 + 1.0 / params.alphas.front();
        if (std::abs(z) > pole)
            throw std::domain_error("vk_f_scalar: |z| beyond the nearest pole 1 + 1/alpha_1");
    }
    Complex val = std::exp(params.gamma_rate * (z - 1.0));
    for (double b : params.betas) val *= 1.0 - b + b * z;
    for (double a : params.alphas) val /= 1.0 + a - a * z;
    return val;
}

Matrix vk_f_matrix(const VKParams& params, const ContractionMatrix& A) {
    const long n = A.entries.rows();
    const Matrix id = Matrix::Identity(n, n);

    Matrix result;
    if (params.gamma_rate != 0.0) {
        const Matrix gen = params.gamma_rate * (A.entries - id);
        result = gen.exp();
    } else {
        result = id;
    }
    for (double b : params.betas) result = result * ((1.0 - b) * id + b * A.entries);
    for (double a : params.alphas) {
        // I + a(I - A) has smallest singular value >= 1 for any contraction.
        const Matrix denom = (1.0 + a) * id - a * A.entries;
        result = Eigen::PartialPivLU<Matrix>(denom).solve(result);
        if (!result.allFinite()) {
            std::ostringstream os;
            os << "vk_f_matrix: solve failed for alpha = " << a
               << "; operator norm of input was " << A.measured_norm;
            throw NumericalError(os.str());
        }
    }
    return result;
}

Matrix vk_f_matrix(const VKParams& params, const Matrix& A, double norm_tol) {
    return vk_f_matrix(params, ContractionMatrix::make(A, norm_tol));
}

Complex character_det(const VKParams& params, const Matrix& w_block, double unitary_tol) {
    if (w_block.rows() != w_block.cols())
        throw std::invalid_argument("character_det: block must be square");
    if (w_block.rows() == 0) return {1.0, 0.0};
    const auto sv = w_block.jacobiSvd().singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (std::abs(sv(i) - 1.0) > unitary_tol) {
            std::ostringstream os;
            os << "character_det: input not unitary (singular value " << sv(i) << ")";
            throw NumericalError(os.str());
        }
    return vk_f_matrix(params, ContractionMatrix::make(w_block, unitary_tol)).determinant();
}

Matrix minus_block(const CompressionFrame& frame, const Matrix& w) {
    if (w.rows() != frame.total() || w.cols() != frame.total())
        throw std::invalid_argument("frame: matrix does not match dim_plus + dim_minus");
    return w.block(frame.dim_plus, frame.dim_plus, frame.dim_minus, frame.dim_minus);
}

Matrix embed_minus(const CompressionFrame& frame, const Matrix& u_minus) {
    if (u_minus.rows() != frame.dim_minus || u_minus.cols() != frame.dim_minus)
        throw std::invalid_argument("embed_minus: block size mismatch");
    Matrix w = Matrix::Identity(frame.total(), frame.total());
    w.block(frame.dim_plus, frame.dim_plus, frame.dim_minus, frame.dim_minus) = u_minus;
    return w;
}

Matrix embed_plus(const CompressionFrame& frame, const Matrix& u_plus) {
    if (u_plus.rows() != frame.dim_plus || u_plus.cols() != frame.dim_plus)
        throw std::invalid_argument("embed_plus: block size mismatch");
    Matrix w = Matrix::Identity(frame.total(), frame.total());
    w.block(0, 0, frame.dim_plus, frame.dim_plus) = u_plus;
    return w;
}

Complex compressed_functional(const VKParams& params, const CompressionFrame& frame,
                              const Matrix& w, double norm_tol) {
    const Matrix b = minus_block(frame, w);
    ContractionMatrix c = ContractionMatrix::make(b, norm_tol);
    return vk_f_matrix(params, c).determinant();
}

PsdReport psd_report_from_gram(const Matrix& gram, double tol, double hermitian_tol) {
    const std::size_t m = static_cast<std::size_t>(gram.rows());
    PsdReport rep;
    rep.m = m;
    rep.hermiticity_defect = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
    if (rep.hermiticity_defect > hermitian_tol) {
        std::ostringstream os;
        os << "gram matrix not Hermitian: defect " << rep.hermiticity_defect;
        throw NumericalError(os.str());
    }
    const Matrix h = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.pass = rep.min_eigenvalue >= -tol * static_cast<double>(m);
    return rep;
}

PsdReport gram_psd_check(const std::function<Complex(const Matrix&)>& functional,
                         const std::vector<Matrix>& unitaries, double tol) {
    const std::size_t m = unitaries.size();
    Matrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                functional(unitaries[i].adjoint() * unitaries[j]);
    return psd_report_from_gram(gram, tol);
}

}  // namespace vklab
