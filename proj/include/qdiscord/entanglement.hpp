#ifndef QDISCORD_ENTANGLEMENT_HPP
#define QDISCORD_ENTANGLEMENT_HPP

#include "qdiscord/state.hpp"

namespace qdiscord {

/// Eigenvalues lambda_i of R = rho (sy x sy) rho^T (sy x sy), descending.
/// `roots` holds sqrt(lambda_i), which is what the concurrence consumes.
template <typename Real>
struct SpinFlipSpectrum {
    Eigen::Matrix<Real, 4, 1> lambdas;
    Eigen::Matrix<Real, 4, 1> roots;
};

template <typename Real>
Matrix4c<Real> sigma_yy() {
    // sy x sy is real: anti-diagonal (-1, 1, 1, -1).
    Matrix4c<Real> m = Matrix4c<Real>::Zero();
    m(0, 3) = m(3, 0) = Real(-1);
    m(1, 2) = m(2, 1) = Real(1);
    return m;
}

/// sqrt(lambda_i) are the singular values of X = sqrt(rho) (sy x sy) conj(sqrt(rho)),
/// since X X^dagger = sqrt(rho) rho_tilde sqrt(rho) is similar to R. Going
/// through the SVD keeps zero roots at round-off level instead of sqrt(eps).
template <typename Real>
SpinFlipSpectrum<Real> spin_flip_spectrum(const DensityMatrix<Real>& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix4c<Real>> eig(rho.matrix());
    const Eigen::Matrix<Real, 4, 1> roots_rho = eig.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
    const Matrix4c<Real> sqrt_rho =
        eig.eigenvectors() * roots_rho.template cast<std::complex<Real>>().asDiagonal() * eig.eigenvectors().adjoint();
    const Matrix4c<Real> x = sqrt_rho * sigma_yy<Real>() * sqrt_rho.conjugate();

    Eigen::JacobiSVD<Matrix4c<Real>> svd(x);
    SpinFlipSpectrum<Real> out;
    out.roots = svd.singularValues();
    out.lambdas = out.roots.cwiseAbs2();
    return out;
}

/// max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}.
template <typename Real>
Real concurrence(const SpinFlipSpectrum<Real>& spec) {
    const auto& r = spec.roots;
    return std::clamp(r(0) - r(1) - r(2) - r(3), Real(0), Real(1));
}

template <typename Real>
Real concurrence(const DensityMatrix<Real>& rho) {
    return concurrence(spin_flip_spectrum(rho));
}

/// E = h((1 + sqrt(1 - C^2)) / 2).
template <typename Real>
Real eof_from_concurrence(Real c) {
    c = std::clamp(c, Real(0), Real(1));
    return binary_entropy((Real(1) + std::sqrt(Real(1) - c * c)) / Real(2));
}

template <typename Real>
Real eof(const DensityMatrix<Real>& rho) {
    return eof_from_concurrence(concurrence(rho));
}

} // namespace qdiscord

#endif // QDISCORD_ENTANGLEMENT_HPP
