#ifndef QDISCORD_CORRELATIONS_HPP
#define QDISCORD_CORRELATIONS_HPP

#include <limits>

#include "qdiscord/entanglement.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/state.hpp"

namespace qdiscord {

/// Search settings for the maximization over measurements on B: a uniform
/// (theta, phi) grid, then Nelder-Mead refinement from the best `restarts`
/// grid maxima.
struct OptimizerConfig {
    int grid_theta = 60;
    int grid_phi = 120;
    double refine_tol = 1e-12;
    int restarts = 3;
    int max_iterations = 500;
};

struct ClassicalCorrelation {
    double value;
    MeasurementBasis basis;  // canonical argmax
};

/// max over {B_k} of S(rho_A) - sum_k p_k S(rho_k).
/// Throws OptimizerDidNotConverge if a final polish from the best point moves
/// the maximum by more than 1e-6.
ClassicalCorrelation classical_correlation(const Density& rho, const OptimizerConfig& cfg = {});

/// I = S(rho_A) + S(rho_B) - S(rho).
template <typename Real>
Real mutual_information(const DensityMatrix<Real>& rho) {
    return von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
           von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho);
}

/// All scalar measures of one state. Angles are the argmax measurement.
struct CorrelationRecord {
    static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    double mutual_info = nan;
    double classical_corr = nan;
    double discord = nan;
    double concurrence = nan;
    double eof = nan;
    double linear_entropy = nan;
    double theta_opt = nan;
    double phi_opt = nan;
};

/// Q = I - classical correlation. Only the mutual-information, classical,
/// discord and angle fields are filled.
CorrelationRecord discord_numeric(const Density& rho, const OptimizerConfig& cfg = {});

/// discord_numeric plus concurrence, EoF and linear entropy.
CorrelationRecord evaluate(const Density& rho, const OptimizerConfig& cfg = {});

} // namespace qdiscord

#endif // QDISCORD_CORRELATIONS_HPP
