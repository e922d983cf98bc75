#include "qdiscord/correlations.hpp"

#include <algorithm>

namespace qdiscord {

CorrelationRecord discord_numeric(const Density& rho, const OptimizerConfig& cfg) {
    CorrelationRecord rec;
    rec.mutual_info = mutual_information(rho);
    const auto cc = classical_correlation(rho, cfg);
    rec.classical_corr = cc.value;
    rec.discord = std::clamp(rec.mutual_info - cc.value, -1e-9, 2.0);
    rec.theta_opt = cc.basis.theta;
    rec.phi_opt = cc.basis.phi;
    return rec;
}

CorrelationRecord evaluate(const Density& rho, const OptimizerConfig& cfg) {
    CorrelationRecord rec = discord_numeric(rho, cfg);
    rec.concurrence = concurrence(rho);
    rec.eof = eof_from_concurrence(rec.concurrence);
    rec.linear_entropy = linear_entropy(rho);
    return rec;
}

} // namespace qdiscord
