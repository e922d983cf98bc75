#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qdiscord/correlations.hpp"

namespace qdiscord {

namespace {

// Conditional information as a function of the angles, with everything that
// does not depend on them hoisted out. The second conditional block is
// rho_A - first, since B1 + B2 = I.
class ConditionalObjective {
public:
    explicit ConditionalObjective(const Density& rho) : m_(rho.matrix()) {
        const Reduced rho_a = partial_trace(rho, Subsystem::A);
        entropy_a_ = von_neumann_entropy(rho_a);
        a00_ = rho_a(0, 0).real();
        a11_ = rho_a(1, 1).real();
        a01_ = rho_a(0, 1);
    }

    double operator()(double theta, double phi) const {
        const double c = std::cos(theta), s = std::sin(theta);
        const std::complex<double> e = std::polar(1.0, phi);
        const double cc = c * c, ss = s * s;
        const std::complex<double> cse = c * s * e;
        const std::complex<double> cse_conj = std::conj(cse);

        const double b00 = (cc * m_(0, 0) + cse * m_(0, 1) + cse_conj * m_(1, 0) + ss * m_(1, 1)).real();
        const double b11 = (cc * m_(2, 2) + cse * m_(2, 3) + cse_conj * m_(3, 2) + ss * m_(3, 3)).real();
        const std::complex<double> b01 = cc * m_(0, 2) + cse * m_(0, 3) + cse_conj * m_(1, 2) + ss * m_(1, 3);

        return entropy_a_ - weighted_qubit_entropy(b00, b11, b01) -
               weighted_qubit_entropy(a00_ - b00, a11_ - b11, a01_ - b01);
    }

private:
    Matrix4c<double> m_;
    double entropy_a_;
    double a00_, a11_;
    std::complex<double> a01_;
};

struct Vertex {
    double theta, phi, value;
};

// Nelder-Mead maximization over (theta, phi). The objective is defined for all
// real angles, so the simplex is unconstrained and angles are canonicalized
// only at the end.
Vertex maximize_simplex(const ConditionalObjective& f, double theta0, double phi0, double step_theta,
                        double step_phi, const OptimizerConfig& cfg) {
    std::array<Vertex, 3> s{{{theta0, phi0, f(theta0, phi0)},
                             {theta0 + step_theta, phi0, f(theta0 + step_theta, phi0)},
                             {theta0, phi0 + step_phi, f(theta0, phi0 + step_phi)}}};
    auto at = [&f](double t, double p) { return Vertex{t, p, f(t, p)}; };

    double last_best = -std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        std::sort(s.begin(), s.end(), [](const Vertex& x, const Vertex& y) { return x.value > y.value; });
        const double spread = s[0].value - s[2].value;
        const double diameter = std::max({std::hypot(s[1].theta - s[0].theta, s[1].phi - s[0].phi),
                                          std::hypot(s[2].theta - s[0].theta, s[2].phi - s[0].phi)});
        stalled = (s[0].value - last_best < cfg.refine_tol) ? stalled + 1 : 0;
        last_best = std::max(last_best, s[0].value);
        if (spread <= cfg.refine_tol && (diameter <= 1e-9 || stalled >= 25)) break;

        const double ct = 0.5 * (s[0].theta + s[1].theta), cp = 0.5 * (s[0].phi + s[1].phi);
        const Vertex reflected = at(2.0 * ct - s[2].theta, 2.0 * cp - s[2].phi);
        if (reflected.value > s[0].value) {
            const Vertex expanded = at(3.0 * ct - 2.0 * s[2].theta, 3.0 * cp - 2.0 * s[2].phi);
            s[2] = expanded.value > reflected.value ? expanded : reflected;
            continue;
        }
        if (reflected.value > s[1].value) {
            s[2] = reflected;
            continue;
        }
        const bool outside = reflected.value > s[2].value;
        const Vertex contracted = outside ? at(ct + 0.5 * (reflected.theta - ct), cp + 0.5 * (reflected.phi - cp))
                                          : at(ct + 0.5 * (s[2].theta - ct), cp + 0.5 * (s[2].phi - cp));
        if (outside ? contracted.value >= reflected.value : contracted.value > s[2].value) {
            s[2] = contracted;
            continue;
        }
        for (int k = 1; k < 3; ++k)
            s[k] = at(s[0].theta + 0.5 * (s[k].theta - s[0].theta), s[0].phi + 0.5 * (s[k].phi - s[0].phi));
    }
    return *std::max_element(s.begin(), s.end(), [](const Vertex& x, const Vertex& y) { return x.value < y.value; });
}

} // namespace

ClassicalCorrelation classical_correlation(const Density& rho, const OptimizerConfig& cfg) {
    const ConditionalObjective f(rho);
    const int nt = std::max(cfg.grid_theta, 2);
    const int np = std::max(cfg.grid_phi, 1);
    const double dt = 0.5 * std::numbers::pi / (nt - 1);
    const double dp = 2.0 * std::numbers::pi / np;

    std::vector<double> grid(static_cast<std::size_t>(nt) * np);
    auto cell = [&](int i, int j) -> double& { return grid[static_cast<std::size_t>(i) * np + j]; };
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) cell(i, j) = f(i * dt, j * dp);

    // Grid local maxima (phi periodic) first, then the remaining cells, best first.
    std::vector<std::pair<double, int>> peaks, rest;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            const double v = cell(i, j);
            bool peak = true;
            for (int di = -1; di <= 1 && peak; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di;
                    if ((di == 0 && dj == 0) || ii < 0 || ii >= nt) continue;
                    if (cell(ii, (j + dj + np) % np) > v) {
                        peak = false;
                        break;
                    }
                }
            (peak ? peaks : rest).emplace_back(v, i * np + j);
        }
    auto by_value = [](const auto& x, const auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); };
    std::sort(peaks.begin(), peaks.end(), by_value);
    std::sort(rest.begin(), rest.end(), by_value);
    peaks.insert(peaks.end(), rest.begin(), rest.end());

    const int starts = std::clamp(cfg.restarts, 1, static_cast<int>(peaks.size()));
    Vertex best{0.0, 0.0, -std::numeric_limits<double>::infinity()};
    for (int r = 0; r < starts; ++r) {
        const int idx = peaks[static_cast<std::size_t>(r)].second;
        const Vertex v = maximize_simplex(f, (idx / np) * dt, (idx % np) * dp, 0.5 * dt, 0.5 * dp, cfg);
        if (v.value > best.value) best = v;
    }

    const Vertex polished = maximize_simplex(f, best.theta, best.phi, 1e-4, 1e-4, cfg);
    if (polished.value - best.value > 1e-6)
        throw OptimizerDidNotConverge("measurement refinement moved by " + std::to_string(polished.value - best.value));
    if (polished.value > best.value) best = polished;

    ClassicalCorrelation out;
    out.basis = MeasurementBasis{best.theta, best.phi}.canonical();
    out.value = f(out.basis.theta, out.basis.phi);
    return out;
}

} // namespace qdiscord
