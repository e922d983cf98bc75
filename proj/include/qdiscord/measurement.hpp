#ifndef QDISCORD_MEASUREMENT_HPP
#define QDISCORD_MEASUREMENT_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "qdiscord/state.hpp"

namespace qdiscord {

/// Outcomes with probability at or below this are dropped from sums.
inline constexpr double kZeroProbability = 1e-14;

/// Projective measurement on qubit B along
/// |psi> = cos(theta)|0> + e^{i phi} sin(theta)|1>, |psi_perp> = -sin(theta)|0> + e^{i phi} cos(theta)|1>.
struct MeasurementBasis {
    double theta{0.0};
    double phi{0.0};

    /// The same projector pair written with theta in [0, pi/2], phi in [0, 2 pi).
    /// Goes through the Bloch vector of |psi><psi|, so any real angles are accepted.
    MeasurementBasis canonical() const {
        const double s2 = std::sin(2.0 * theta);
        const double nx = s2 * std::cos(phi), ny = s2 * std::sin(phi), nz = std::cos(2.0 * theta);
        MeasurementBasis out;
        out.theta = 0.5 * std::acos(std::clamp(nz, -1.0, 1.0));
        double p = std::atan2(ny, nx);
        if (p < 0.0) p += 2.0 * std::numbers::pi;
        if (p >= 2.0 * std::numbers::pi) p = 0.0;
        out.phi = p;
        return out;
    }
};

template <typename Real = double>
std::array<Vector2c<Real>, 2> measurement_vectors(const MeasurementBasis& basis) {
    const Real c = std::cos(Real(basis.theta)), s = std::sin(Real(basis.theta));
    const std::complex<Real> e = std::polar(Real(1), Real(basis.phi));
    Vector2c<Real> psi, perp;
    psi << c, e * s;
    perp << -s, e * c;
    return {psi, perp};
}

/// The projector pair {B1, B2} = {|psi><psi|, |psi_perp><psi_perp|}.
template <typename Real = double>
std::pair<Matrix2c<Real>, Matrix2c<Real>> measurement_pair(double theta, double phi) {
    const auto v = measurement_vectors<Real>({theta, phi});
    return {v[0] * v[0].adjoint(), v[1] * v[1].adjoint()};
}

template <typename Real>
struct PostMeasurementOutcome {
    Real probability{0};
    /// Empty when the outcome has probability <= kZeroProbability.
    std::optional<DensityMatrix<Real>> state;

    bool zero_probability() const { return !state.has_value(); }
};

/// rho_k = (I x B_k) rho (I x B_k) / p_k on the full two-qubit space.
template <typename Real>
std::array<PostMeasurementOutcome<Real>, 2> apply_measurement(const DensityMatrix<Real>& rho,
                                                              const MeasurementBasis& basis) {
    const auto [b1, b2] = measurement_pair<Real>(basis.theta, basis.phi);
    const Matrix2c<Real> id = Matrix2c<Real>::Identity();
    std::array<PostMeasurementOutcome<Real>, 2> out;
    const Matrix2c<Real>* projs[2] = {&b1, &b2};
    for (int k = 0; k < 2; ++k) {
        const Matrix4c<Real> lift = kron<Real>(id, *projs[k]);
        Matrix4c<Real> m = lift * rho.matrix() * lift;
        m = (m + m.adjoint()).eval() / Real(2);
        const Real p = m.trace().real();
        out[k].probability = std::max(p, Real(0));
        if (p > Real(kZeroProbability)) out[k].state = DensityMatrix<Real>::assume_valid(m / p);
    }
    return out;
}

/// Unnormalized conditional state of A after outcome |v> on B:
/// (I x <v|) rho (I x |v>). Its trace is the outcome probability.
template <typename Real>
Matrix2c<Real> conditional_block(const Matrix4c<Real>& rho, const Vector2c<Real>& v) {
    Matrix2c<Real> out;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            std::complex<Real> acc(0);
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) acc += std::conj(v(j)) * rho(2 * i + j, 2 * k + l) * v(l);
            out(i, k) = acc;
        }
    return out;
}

/// p S(m / p) for an unnormalized 2x2 Hermitian PSD block m with p = Tr m,
/// via the closed-form qubit spectrum. Zero when p <= kZeroProbability.
template <typename Real>
Real weighted_qubit_entropy(Real m00, Real m11, std::complex<Real> m01) {
    const Real p = m00 + m11;
    if (!(p > Real(kZeroProbability))) return Real(0);
    const Real diff = m00 - m11;
    const Real radius = std::min(std::sqrt(diff * diff + Real(4) * std::norm(m01)) / p, Real(1));
    return p * binary_entropy((Real(1) + radius) / Real(2));
}

/// S(rho_A) - sum_k p_k S(rho_k): the information about A gained by measuring B.
template <typename Real>
Real conditional_information(const DensityMatrix<Real>& rho, const MeasurementBasis& basis) {
    const auto vs = measurement_vectors<Real>(basis);
    Real info = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    for (const auto& v : vs) {
        const Matrix2c<Real> m = conditional_block(rho.matrix(), v);
        info -= weighted_qubit_entropy(m(0, 0).real(), m(1, 1).real(), m(0, 1));
    }
    return info;
}

} // namespace qdiscord

#endif // QDISCORD_MEASUREMENT_HPP
