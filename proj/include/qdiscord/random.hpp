#ifndef QDISCORD_RANDOM_HPP
#define QDISCORD_RANDOM_HPP

#include <cstdint>
#include <utility>

#include "qdiscord/state.hpp"

namespace qdiscord {

/// Seed of the index-th stream derived from a base seed (splitmix64 finalizer).
/// Samples are keyed by derived seeds so any record can be regenerated alone.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// rho = T T^dagger / Tr(T T^dagger) with T a 4x4 matrix of independent
/// standard complex Gaussians. Bitwise reproducible for a fixed seed.
Density random_state(std::uint64_t seed);

/// Unit vector with independent complex Gaussian components, normalized.
Vector4c<double> random_pure_state(std::uint64_t seed);

/// Haar-random single-qubit unitary.
Matrix2c<double> random_unitary2(std::uint64_t seed);

/// Convex mixture (1 - eps) rho + eps sigma.
Density mix(const Density& rho, const Density& sigma, double eps);

} // namespace qdiscord

#endif // QDISCORD_RANDOM_HPP
