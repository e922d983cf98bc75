#include "qdiscord/random.hpp"

#include <random>

namespace qdiscord {

namespace {

// Box-Muller on mt19937_64 output; std::normal_distribution is not specified
// bit-for-bit across standard libraries.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    std::complex<double> complex_normal() {
        constexpr double two_pi = 6.283185307179586476925286766559;
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }

private:
    double uniform_open() {
        // 53 random bits mapped into (0, 1).
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
};

} // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Density random_state(std::uint64_t seed) {
    GaussianStream gauss(seed);
    Matrix4c<double> t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t(i, j) = gauss.complex_normal();
    Matrix4c<double> m = t * t.adjoint();
    m = (m + m.adjoint()).eval() * 0.5;
    m /= m.trace().real();
    return Density::assume_valid(m);
}

Vector4c<double> random_pure_state(std::uint64_t seed) {
    GaussianStream gauss(seed);
    Vector4c<double> v;
    for (int i = 0; i < 4; ++i) v(i) = gauss.complex_normal();
    return v.normalized();
}

Matrix2c<double> random_unitary2(std::uint64_t seed) {
    GaussianStream gauss(seed);
    Matrix2c<double> z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = gauss.complex_normal();
    Eigen::HouseholderQR<Matrix2c<double>> qr(z);
    Matrix2c<double> q = qr.householderQ();
    const Matrix2c<double> r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase freedom of QR so q is Haar distributed.
    for (int j = 0; j < 2; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

Density mix(const Density& rho, const Density& sigma, double eps) {
    Matrix4c<double> m = (1.0 - eps) * rho.matrix() + eps * sigma.matrix();
    return Density::assume_valid(m);
}

} // namespace qdiscord
