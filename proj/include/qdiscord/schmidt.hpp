#ifndef QDISCORD_SCHMIDT_HPP
#define QDISCORD_SCHMIDT_HPP

#include "qdiscord/state.hpp"

namespace qdiscord {

/// psi = sqrt(major)|1_A 1_B> + sqrt(minor)|2_A 2_B>, where major >= minor are
/// the eigenvalues of either reduced state. Columns of basis_a / basis_b are
/// the Schmidt vectors |1>, |2> in the computational basis.
template <typename Real>
struct SchmidtForm {
    Real eigvalue_major;
    Real eigvalue_minor;
    Matrix2c<Real> basis_a;
    Matrix2c<Real> basis_b;

    Vector4c<Real> reconstruct() const {
        const Real weights[2] = {std::sqrt(eigvalue_major), std::sqrt(eigvalue_minor)};
        Vector4c<Real> psi = Vector4c<Real>::Zero();
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    psi(2 * i + j) += weights[k] * basis_a(i, k) * basis_b(j, k);
        return psi;
    }
};

/// Schmidt decomposition by SVD of the 2x2 coefficient matrix
/// M(i, j) = <ij|psi> = sum_k s_k u_k(i) conj(v_k(j)).
template <typename Real>
SchmidtForm<Real> schmidt(const Vector4c<Real>& psi) {
    const Real norm_dev = std::abs(psi.norm() - Real(1));
    if (!(norm_dev <= Real(kValidationTolerance)))
        throw StateError(StateErrorKind::NotNormalized, static_cast<double>(norm_dev));

    Matrix2c<Real> coeffs;
    coeffs << psi(0), psi(1), psi(2), psi(3);
    Eigen::JacobiSVD<Matrix2c<Real>> svd(coeffs, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();

    SchmidtForm<Real> form;
    const Real total = s.squaredNorm();
    form.eigvalue_major = s(0) * s(0) / total;
    form.eigvalue_minor = Real(1) - form.eigvalue_major;
    form.basis_a = svd.matrixU();
    form.basis_b = svd.matrixV().conjugate();
    return form;
}

} // namespace qdiscord

#endif // QDISCORD_SCHMIDT_HPP
