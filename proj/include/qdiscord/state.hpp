#ifndef QDISCORD_STATE_HPP
#define QDISCORD_STATE_HPP

// Two-qubit density matrices and their spectral/entropic primitives.
//
// Everything here is templated on the real scalar so the same code paths can
// be run in long double as a precision cross-check. Basis order is fixed as
// |00>, |01>, |10>, |11> with subsystem A the left (most significant) qubit.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qdiscord/errors.hpp"

namespace qdiscord {

template <typename Real> using Complex = std::complex<Real>;
template <typename Real> using Matrix2c = Eigen::Matrix<std::complex<Real>, 2, 2>;
template <typename Real> using Matrix4c = Eigen::Matrix<std::complex<Real>, 4, 4>;
template <typename Real> using Vector2c = Eigen::Matrix<std::complex<Real>, 2, 1>;
template <typename Real> using Vector4c = Eigen::Matrix<std::complex<Real>, 4, 1>;

/// Hermiticity, trace and positivity tolerance for accepting a state.
inline constexpr double kValidationTolerance = 1e-10;
/// Eigenvalues below this are treated as exact zeros in entropies.
inline constexpr double kClipThreshold = 1e-12;

enum class Subsystem { A, B };

template <typename Real>
struct StateDiagnostics {
    Real hermitian_deviation{0};
    Real trace_deviation{0};
    Real min_eigenvalue{0};
};

/// Largest |m(i,j) - conj(m(j,i))|.
template <typename Derived>
typename Derived::RealScalar hermitian_deviation(const Eigen::MatrixBase<Derived>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
StateDiagnostics<typename Derived::RealScalar> diagnose(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Derived::RealScalar;
    using Matrix = typename Derived::PlainObject;
    StateDiagnostics<Real> d;
    d.hermitian_deviation = hermitian_deviation(m);
    d.trace_deviation = std::abs(m.trace() - typename Derived::Scalar(1));
    const Matrix herm = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

/// A validated quantum state on a Dim-dimensional space: Hermitian, unit
/// trace and positive semidefinite within kValidationTolerance.
template <typename Real, int Dim>
class QuantumState {
public:
    using Scalar = Real;
    using MatrixType = Eigen::Matrix<std::complex<Real>, Dim, Dim>;
    static constexpr int dimension = Dim;

    /// Checks the invariants in order Hermitian, trace, positivity and throws
    /// StateError for the first one that fails.
    static QuantumState validated(const MatrixType& raw) {
        const auto d = diagnose(raw);
        if (!(d.hermitian_deviation <= Real(kValidationTolerance)))
            throw StateError(StateErrorKind::NotHermitian, static_cast<double>(d.hermitian_deviation));
        if (!(d.trace_deviation <= Real(kValidationTolerance)))
            throw StateError(StateErrorKind::TraceNotOne, static_cast<double>(d.trace_deviation));
        if (!(d.min_eigenvalue >= -Real(kValidationTolerance)))
            throw StateError(StateErrorKind::NotPositive, static_cast<double>(-d.min_eigenvalue));
        return QuantumState(raw);
    }

    /// For matrices that are valid by construction (families, convex mixtures,
    /// T T^dagger). Skips the eigen-decomposition of `validated`.
    static QuantumState assume_valid(const MatrixType& m) { return QuantumState(m); }

    static QuantumState maximally_mixed() {
        return QuantumState(MatrixType::Identity() / Real(Dim));
    }

    const MatrixType& matrix() const noexcept { return m_; }
    std::complex<Real> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    Real purity() const { return m_.squaredNorm(); }

    friend bool operator==(const QuantumState& lhs, const QuantumState& rhs) { return lhs.m_ == rhs.m_; }

private:
    explicit QuantumState(const MatrixType& m) : m_(m) {}
    MatrixType m_;
};

template <typename Real> using DensityMatrix = QuantumState<Real, 4>;
template <typename Real> using ReducedState = QuantumState<Real, 2>;

using Density = DensityMatrix<double>;
using Reduced = ReducedState<double>;

template <typename Derived>
DensityMatrix<typename Derived::RealScalar> validate_state(const Eigen::MatrixBase<Derived>& raw) {
    static_assert(Derived::RowsAtCompileTime == 4 && Derived::ColsAtCompileTime == 4,
                  "two-qubit states are 4x4");
    return DensityMatrix<typename Derived::RealScalar>::validated(raw.eval());
}

/// Kronecker product of two single-qubit operators, A on the left.
template <typename Real>
Matrix4c<Real> kron(const Matrix2c<Real>& a, const Matrix2c<Real>& b) {
    Matrix4c<Real> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

template <typename Real>
ReducedState<Real> partial_trace(const DensityMatrix<Real>& rho, Subsystem keep) {
    const auto& m = rho.matrix();
    Matrix2c<Real> r;
    // Off-diagonal accumulated once and mirrored, so the result is exactly Hermitian.
    if (keep == Subsystem::A) {
        r(0, 0) = m(0, 0).real() + m(1, 1).real();
        r(1, 1) = m(2, 2).real() + m(3, 3).real();
        r(0, 1) = m(0, 2) + m(1, 3);
    } else {
        r(0, 0) = m(0, 0).real() + m(2, 2).real();
        r(1, 1) = m(1, 1).real() + m(3, 3).real();
        r(0, 1) = m(0, 1) + m(2, 3);
    }
    r(1, 0) = std::conj(r(0, 1));
    return ReducedState<Real>::assume_valid(r);
}

/// Eigenvalues of a Hermitian matrix in descending order. Values within
/// kValidationTolerance below zero are clipped to zero.
template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Derived::RowsAtCompileTime, 1>
spectrum(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Derived::RealScalar;
    using Matrix = typename Derived::PlainObject;
    const Real dev = hermitian_deviation(m);
    if (!(dev <= Real(kValidationTolerance)))
        throw StateError(StateErrorKind::NotHermitian, static_cast<double>(dev));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.eval(), Eigen::EigenvaluesOnly);
    Eigen::Matrix<Real, Derived::RowsAtCompileTime, 1> ev = solver.eigenvalues().reverse();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) < Real(0) && ev(i) >= -Real(kValidationTolerance)) ev(i) = Real(0);
    return ev;
}

template <typename Real, int Dim>
Eigen::Matrix<Real, Dim, 1> spectrum(const QuantumState<Real, Dim>& state) {
    return spectrum(state.matrix());
}

/// -sum p log2 p over a probability vector, with 0 log 0 = 0.
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::DenseBase<Derived>& probs) {
    using Real = typename Derived::Scalar;
    Real s(0);
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        const Real p = probs(i);
        if (p > Real(kClipThreshold)) s -= p * std::log2(p);
    }
    return s;
}

template <typename Real, int Dim>
Real von_neumann_entropy(const QuantumState<Real, Dim>& state) {
    const Real s = shannon_entropy(spectrum(state));
    return std::max(s, Real(0));
}

/// h(x) = -x log2 x - (1-x) log2(1-x).
template <typename Real>
Real binary_entropy(Real x) {
    constexpr Real slack = Real(1e-12);
    if (!(x >= -slack && x <= Real(1) + slack))
        throw std::domain_error("binary_entropy argument outside [0,1]");
    x = std::clamp(x, Real(0), Real(1));
    Real h(0);
    if (x > Real(0)) h -= x * std::log2(x);
    if (x < Real(1)) h -= (Real(1) - x) * std::log2(Real(1) - x);
    return h;
}

/// S_L = (4/3)(1 - Tr rho^2), in [0, 1].
template <typename Real>
Real linear_entropy(const DensityMatrix<Real>& rho) {
    const Real sl = Real(4) * (Real(1) - rho.purity()) / Real(3);
    return std::clamp(sl, Real(0), Real(1));
}

/// Conjugation by a two-qubit unitary, re-symmetrized to stay exactly Hermitian.
template <typename Real>
DensityMatrix<Real> transform(const DensityMatrix<Real>& rho, const Matrix4c<Real>& u) {
    Matrix4c<Real> m = u * rho.matrix() * u.adjoint();
    m = (m + m.adjoint()).eval() / Real(2);
    return DensityMatrix<Real>::assume_valid(m);
}

template <typename Real>
DensityMatrix<Real> projector(const Vector4c<Real>& psi) {
    const Real norm2 = psi.squaredNorm();
    if (!(std::abs(norm2 - Real(1)) <= Real(kValidationTolerance)))
        throw StateError(StateErrorKind::NotNormalized, static_cast<double>(std::abs(norm2 - Real(1))));
    Matrix4c<Real> m = psi * psi.adjoint();
    return DensityMatrix<Real>::assume_valid(m);
}

} // namespace qdiscord

#endif // QDISCORD_STATE_HPP
