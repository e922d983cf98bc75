#ifndef QDISCORD_ANALYTIC_HPP
#define QDISCORD_ANALYTIC_HPP

#include <optional>
#include <string_view>

#include "qdiscord/families.hpp"

namespace qdiscord {

/// Which argument of the max (alpha family) or min (two-parameter family)
/// produced the closed-form value.
enum class AnalyticBranch {
    ZetaIsAlpha,      // zeta = alpha
    ZetaIsTwoAlpha,   // zeta = |2 alpha - 1|
    Beta,             // single formula
    A,                // Q = a < q
    Q,                // Q = q < a
    Pimple,           // a = q within 1e-12
};

std::string_view to_string(AnalyticBranch branch);

struct AnalyticDiscordTrace {
    double value;
    std::optional<double> zeta;  // alpha family only
    std::optional<double> q;     // two-parameter family only
    AnalyticBranch branch;
};

/// x log2 x with 0 log 0 = 0.
double xlog2x(double x);

/// The q term of the two-parameter discord Q(a, b) = min{a, q}. Written as
/// sums of x log2 x, which is finite and continuous on the whole closed
/// region including the edges |b| = 1 - a and a = 1.
double two_param_q(double a, double b);

/// Closed-form discord for Alpha, Beta and TwoParam; UnsupportedFamily otherwise.
AnalyticDiscordTrace discord_analytic(const FamilyParam& p);

/// C(alpha) = max{0, 2 alpha - 1}, C(beta) = |2 beta - 1|,
/// C(a, b) = max{0, |a| - sqrt((1-a)^2 - b^2)}.
double concurrence_analytic(const FamilyParam& p);

} // namespace qdiscord

#endif // QDISCORD_ANALYTIC_HPP
