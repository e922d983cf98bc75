#include "qdiscord/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace qdiscord {

std::string_view to_string(AnalyticBranch branch) {
    switch (branch) {
    case AnalyticBranch::ZetaIsAlpha: return "zeta = alpha";
    case AnalyticBranch::ZetaIsTwoAlpha: return "zeta = |2 alpha - 1|";
    case AnalyticBranch::Beta: return "beta";
    case AnalyticBranch::A: return "a";
    case AnalyticBranch::Q: return "q";
    case AnalyticBranch::Pimple: return "a = q (pimple)";
    }
    return "unknown";
}

double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

double two_param_q(double a, double b) {
    const double s = std::min(std::sqrt(a * a + b * b), 1.0);
    const double q = 0.5 * (xlog2x(1.0 - a - b) + xlog2x(1.0 - a + b) - xlog2x(1.0 + b) - xlog2x(1.0 - b) -
                            xlog2x(1.0 + s) - xlog2x(1.0 - s)) +
                     xlog2x(a) + a + 1.0;
    return q;
}

AnalyticDiscordTrace discord_analytic(const FamilyParam& p) {
    check_range(p);
    if (const auto* v = std::get_if<Alpha>(&p)) {
        const double alpha = std::clamp(v->alpha, 0.0, 1.0);
        const double lin = std::abs(alpha), two = std::abs(2.0 * alpha - 1.0);
        const double zeta = std::max(lin, two);
        const double value = xlog2x(1.0 - alpha) + xlog2x(alpha) + (1.0 + alpha) - 0.5 * xlog2x(1.0 - zeta) -
                             0.5 * xlog2x(1.0 + zeta);
        return {std::max(value, 0.0), zeta, std::nullopt,
                lin >= two ? AnalyticBranch::ZetaIsAlpha : AnalyticBranch::ZetaIsTwoAlpha};
    }
    if (const auto* v = std::get_if<Beta>(&p)) {
        const double beta = std::clamp(v->beta, 0.0, 1.0);
        const double value = xlog2x(beta) + xlog2x(1.0 - beta) + 1.0;
        return {std::max(value, 0.0), std::nullopt, std::nullopt, AnalyticBranch::Beta};
    }
    if (const auto* v = std::get_if<TwoParam>(&p)) {
        const double a = std::clamp(v->a, 0.0, 1.0);
        const double b = std::clamp(v->b, a - 1.0, 1.0 - a);
        const double q = two_param_q(a, b);
        AnalyticBranch branch = AnalyticBranch::Pimple;
        if (std::abs(a - q) > 1e-12) branch = a < q ? AnalyticBranch::A : AnalyticBranch::Q;
        return {std::max(std::min(a, q), 0.0), std::nullopt, q, branch};
    }
    throw UnsupportedFamily(std::string("no closed-form discord for ") + std::string(name(kind_of(p))));
}

double concurrence_analytic(const FamilyParam& p) {
    check_range(p);
    if (const auto* v = std::get_if<Alpha>(&p)) return std::max(0.0, 2.0 * v->alpha - 1.0);
    if (const auto* v = std::get_if<Beta>(&p)) return std::min(std::abs(2.0 * v->beta - 1.0), 1.0);
    if (const auto* v = std::get_if<TwoParam>(&p)) {
        const double r = (1.0 - v->a) * (1.0 - v->a) - v->b * v->b;
        return std::clamp(std::abs(v->a) - std::sqrt(std::max(r, 0.0)), 0.0, 1.0);
    }
    throw UnsupportedFamily(std::string("no closed-form concurrence for ") + std::string(name(kind_of(p))));
}

} // namespace qdiscord
