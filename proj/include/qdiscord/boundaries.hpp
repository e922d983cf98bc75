#ifndef QDISCORD_BOUNDARIES_HPP
#define QDISCORD_BOUNDARIES_HPP

// Boundary curves of the attainable discord region in the (EoF, Q) and
// (S_L, Q) planes, and the sampling harness that checks states against them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdiscord/correlations.hpp"
#include "qdiscord/families.hpp"

namespace qdiscord {

enum class Plane { EofQ, SlQ };

std::string_view to_string(Plane plane);
std::optional<Plane> parse_plane(std::string_view s);

/// Linear entropy at which the two-parameter envelope hands over to Werner states.
inline constexpr double kPimpleEntropy = 8.0 / 9.0;

struct CurvePoint {
    double x;
    double y;
    FamilyParam param;
    CorrelationRecord record;
};

struct CurveSegment {
    FamilyKind family;
    std::vector<CurvePoint> points;  // x strictly increasing
};

struct BoundaryCurve {
    Plane plane = Plane::EofQ;
    std::vector<CurveSegment> segments;

    double x_min() const;
    double x_max() const;
    /// Piecewise-linear value at x, or nullopt outside every segment.
    std::optional<double> interpolate(double x) const;
    std::size_t size() const;
};

/// Parameter range and resolution for sweeping one family. For TwoParam the
/// sweep runs over a at fixed b.
struct SweepSpec {
    FamilyKind family;
    Plane plane = Plane::EofQ;
    double lo;
    double hi;
    int resolution = 512;
    double fixed_b = 0.0;
};

/// Parameter ranges on which each family is monotone in the plane's x
/// coordinate. Throws UnsupportedFamily for pure states in the S_L-Q plane
/// (all at S_L = 0).
SweepSpec default_sweep(FamilyKind family, Plane plane, int resolution = 512);

/// (x, y) and the full record of one family state. Discord and concurrence
/// are closed-form for Alpha/Beta/TwoParam, h(lambda) for pure states, and
/// from the numeric optimizer for Werner states.
CurvePoint family_point(const FamilyParam& p, Plane plane, const OptimizerConfig& cfg = {});

/// Throws ParamOutOfRange for an out-of-range end point, std::invalid_argument
/// if resolution < 2 or the range is not monotone in x.
BoundaryCurve sweep_family(const SweepSpec& spec, const OptimizerConfig& cfg = {});

struct Crossing {
    double x;
    double y;
};

/// Intersection of two curves from the sign change of their interpolated
/// difference, bisected to |dx| <= 1e-6. Throws NoSignChange.
Crossing find_crossover(const BoundaryCurve& c1, const BoundaryCurve& c2);

/// Inverse of C -> EoF(C) by bisection to 1e-12.
double concurrence_for_eof(double eof);

struct BoundValue {
    double value;
    std::string_view branch;
};

/// Upper and lower discord bounds at fixed entanglement of formation.
/// Upper: alpha states, then Werner states, then pure states (Q = E), joined
/// at crossovers located on construction. Lower: beta states.
class HornBounds {
public:
    struct Crossovers {
        double alpha_werner_eof;
        double alpha_werner_discord;
        double werner_pure_eof;
        double werner_pure_discord;
    };

    explicit HornBounds(const OptimizerConfig& cfg = {});

    BoundValue upper(double eof) const;
    BoundValue lower(double eof) const;
    const Crossovers& crossovers() const { return crossovers_; }

    double alpha_branch(double eof) const;
    double werner_branch(double eof) const;
    static double pure_branch(double eof) { return eof; }
    static double beta_branch(double eof);

private:
    OptimizerConfig cfg_;
    Crossovers crossovers_{};
};

/// Upper discord bound at fixed linear entropy: the maximum of the
/// two-parameter Q(a, b) over the constant-S_L contour for S_L <= 8/9, and the
/// Werner state at xi = sqrt(1 - S_L) above.
class EntropyEnvelope {
public:
    struct Argmax {
        double value;
        double a;
        double b;
    };
    struct Junction {
        double two_param_side;
        double werner_side;
    };

    explicit EntropyEnvelope(const OptimizerConfig& cfg = {}, int scan_points = 4001);

    BoundValue upper(double linear_entropy) const;
    /// Contour maximum over the two-parameter family; requires S_L <= 8/9.
    Argmax two_param_max(double linear_entropy) const;
    double werner_value(double linear_entropy) const;
    /// Both sides of the S_L = 8/9 hand-over, reported separately.
    Junction junction() const;

private:
    OptimizerConfig cfg_;
    int scan_points_;
};

/// Horn and entropy bounds under the default optimizer settings, built once.
double horn_upper(double eof);
double horn_lower(double eof);
double entropy_upper(double linear_entropy);

struct Provenance {
    enum class Kind { Random, NearBoundary, Sweep };
    Kind kind = Kind::Random;
    std::optional<FamilyKind> family;
    double epsilon = 0.0;

    /// "random", "sweep" or "near-boundary(<family>,<epsilon>)".
    std::string label() const;
};

struct Sample {
    std::uint64_t seed;
    std::optional<FamilyParam> family;
    CorrelationRecord record;
};

struct SampleBatch {
    Provenance provenance;
    std::vector<Sample> samples;
};

/// n states from random_state(derive_seed(seed, i)), evaluated in parallel.
SampleBatch sample_random(std::size_t n, std::uint64_t seed, const OptimizerConfig& cfg = {});

/// Family parameter drawn uniformly from `seed` over the part of the family
/// that traces a boundary curve: Werner xi in [0, 1], alpha in [1/2, 1],
/// beta and lambda in [0, 1], and the whole two-parameter region.
FamilyParam draw_family_param(FamilyKind family, std::uint64_t seed);

/// (1 - eps) rho_family + eps rho_random with the family parameter and the
/// random state both keyed by the per-sample seed.
SampleBatch sample_near_boundary(FamilyKind family, std::size_t n, double epsilon, std::uint64_t seed,
                                 const OptimizerConfig& cfg = {});

/// The state a sample was evaluated on, rebuilt from its seed and parameters.
Density regenerate_state(const Sample& sample, const Provenance& provenance);

SampleBatch filter(const SampleBatch& batch, const std::function<bool(const Sample&)>& keep);

struct Offender {
    std::uint64_t seed;
    double x;
    double y;
    double bound;
    std::string branch;
};

struct RegionReport {
    std::size_t n_checked = 0;
    std::size_t n_violations = 0;
    /// Largest amount by which any record lies outside its bound (0 if none).
    double worst_violation = 0.0;
    std::vector<Offender> offenders;
};

/// Checks every record against the bounds of the plane: lower - slack <= Q <=
/// upper + slack for EoF-Q, Q <= entropy upper + slack for S_L-Q. Never throws
/// on violations; they are collected in the report.
RegionReport verify_bounds(const SampleBatch& batch, Plane plane, double slack, const HornBounds& horn,
                           const EntropyEnvelope& envelope);

/// Runs fn(i) for i in [0, n) on a pool of worker threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace qdiscord

#endif // QDISCORD_BOUNDARIES_HPP
