#include "qdiscord/boundaries.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "qdiscord/analytic.hpp"
#include "qdiscord/random.hpp"

namespace qdiscord {

std::string_view to_string(Plane plane) {
    return plane == Plane::EofQ ? "eof-q" : "sl-q";
}

std::optional<Plane> parse_plane(std::string_view s) {
    if (s == "eof-q") return Plane::EofQ;
    if (s == "sl-q") return Plane::SlQ;
    return std::nullopt;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// curves

double BoundaryCurve::x_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : segments)
        if (!s.points.empty()) m = std::min(m, s.points.front().x);
    return m;
}

double BoundaryCurve::x_max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& s : segments)
        if (!s.points.empty()) m = std::max(m, s.points.back().x);
    return m;
}

std::size_t BoundaryCurve::size() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.points.size();
    return n;
}

std::optional<double> BoundaryCurve::interpolate(double x) const {
    for (const auto& s : segments) {
        const auto& pts = s.points;
        if (pts.empty() || x < pts.front().x || x > pts.back().x) continue;
        if (pts.size() == 1) return pts.front().y;
        auto hi = std::lower_bound(pts.begin(), pts.end(), x, [](const CurvePoint& p, double v) { return p.x < v; });
        if (hi == pts.begin()) return hi->y;
        const auto lo = hi - 1;
        const double t = (x - lo->x) / (hi->x - lo->x);
        return lo->y + t * (hi->y - lo->y);
    }
    return std::nullopt;
}

SweepSpec default_sweep(FamilyKind family, Plane plane, int resolution) {
    SweepSpec spec{family, plane, 0.0, 1.0, resolution, 0.0};
    switch (family) {
    case FamilyKind::Werner:
        spec.lo = plane == Plane::EofQ ? 1.0 / 3.0 : 0.0;
        break;
    case FamilyKind::Alpha:
        spec.lo = plane == Plane::EofQ ? 0.5 : 1.0 / 3.0;
        break;
    case FamilyKind::Beta:
        spec.lo = 0.5;
        break;
    case FamilyKind::TwoParam:
        spec.lo = plane == Plane::EofQ ? 2.0 / 3.0 : 1.0 / 3.0;
        break;
    case FamilyKind::Pure:
        if (plane == Plane::SlQ) throw UnsupportedFamily("pure states all sit at S_L = 0");
        spec.hi = 0.5;
        break;
    }
    return spec;
}

CurvePoint family_point(const FamilyParam& p, Plane plane, const OptimizerConfig& cfg) {
    const Density rho = make_family(p);
    CorrelationRecord rec;
    switch (kind_of(p)) {
    case FamilyKind::Werner:
        rec = discord_numeric(rho, cfg);
        rec.concurrence = concurrence(rho);
        rec.eof = eof_from_concurrence(rec.concurrence);
        break;
    case FamilyKind::Pure: {
        const double lambda = std::get<PureSchmidt>(p).lambda;
        rec.mutual_info = mutual_information(rho);
        rec.discord = binary_entropy(lambda);
        rec.concurrence = 2.0 * std::sqrt(lambda * (1.0 - lambda));
        rec.eof = rec.discord;
        rec.classical_corr = rec.mutual_info - rec.discord;
        break;
    }
    default:
        rec.mutual_info = mutual_information(rho);
        rec.discord = discord_analytic(p).value;
        rec.concurrence = concurrence_analytic(p);
        rec.eof = eof_from_concurrence(rec.concurrence);
        rec.classical_corr = rec.mutual_info - rec.discord;
        break;
    }
    rec.linear_entropy = linear_entropy(rho);
    const double x = plane == Plane::EofQ ? rec.eof : rec.linear_entropy;
    return CurvePoint{x, rec.discord, p, rec};
}

BoundaryCurve sweep_family(const SweepSpec& spec, const OptimizerConfig& cfg) {
    if (spec.resolution < 2) throw std::invalid_argument("sweep resolution must be at least 2");
    check_range(make_param(spec.family, spec.lo, spec.fixed_b));
    check_range(make_param(spec.family, spec.hi, spec.fixed_b));

    const auto n = static_cast<std::size_t>(spec.resolution);
    std::vector<std::optional<CurvePoint>> pts(n);
    parallel_for(n, [&](std::size_t i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        const double param = i + 1 == n ? spec.hi : spec.lo + t * (spec.hi - spec.lo);
        pts[i] = family_point(make_param(spec.family, param, spec.fixed_b), spec.plane, cfg);
    });

    CurveSegment seg{spec.family, {}};
    seg.points.reserve(n);
    for (auto& p : pts) seg.points.push_back(std::move(*p));
    std::sort(seg.points.begin(), seg.points.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
    for (std::size_t i = 1; i < seg.points.size(); ++i)
        if (!(seg.points[i].x > seg.points[i - 1].x))
            throw std::invalid_argument("sweep range is not strictly monotone in x");

    BoundaryCurve curve;
    curve.plane = spec.plane;
    curve.segments.push_back(std::move(seg));
    return curve;
}

Crossing find_crossover(const BoundaryCurve& c1, const BoundaryCurve& c2) {
    const double lo = std::max(c1.x_min(), c2.x_min());
    const double hi = std::min(c1.x_max(), c2.x_max());
    if (!(lo < hi)) throw NoSignChange("curves do not overlap in x");

    std::vector<double> knots{lo, hi};
    for (const auto* c : {&c1, &c2})
        for (const auto& s : c->segments)
            for (const auto& p : s.points)
                if (p.x > lo && p.x < hi) knots.push_back(p.x);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    auto diff = [&](double x) -> std::optional<double> {
        const auto y1 = c1.interpolate(x), y2 = c2.interpolate(x);
        if (!y1 || !y2) return std::nullopt;
        return *y1 - *y2;
    };

    std::optional<std::pair<double, double>> last;  // (x, d) with d != 0
    for (double x : knots) {
        const auto d = diff(x);
        if (!d || *d == 0.0) continue;
        if (last && (last->second > 0.0) != (*d > 0.0)) {
            double a = last->first, b = x;
            const bool a_positive = last->second > 0.0;
            while (b - a > 1e-12) {
                const double m = 0.5 * (a + b);
                const auto dm = diff(m);
                if (!dm) break;
                if ((*dm > 0.0) == a_positive) a = m;
                else b = m;
            }
            const double xc = 0.5 * (a + b);
            return Crossing{xc, *c1.interpolate(xc)};
        }
        last = std::make_pair(x, *d);
    }
    throw NoSignChange("curve difference does not change sign on the overlap");
}

double concurrence_for_eof(double eof) {
    if (!(eof > 0.0)) return 0.0;
    if (eof >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (eof_from_concurrence(mid) < eof) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// horn

namespace {

double bisect_root(const std::function<double(double)>& g, double a, double b, double tol) {
    double ga = g(a);
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if ((gm > 0.0) == (ga > 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// First bracket [x_i, x_{i+1}] on a uniform grid where g changes sign.
std::pair<double, double> scan_bracket(const std::function<double(double)>& g, double lo, double hi, int steps) {
    double prev_x = lo, prev = g(lo);
    for (int i = 1; i <= steps; ++i) {
        const double x = lo + (hi - lo) * i / steps;
        const double v = g(x);
        if ((v > 0.0) != (prev > 0.0)) return {prev_x, x};
        prev_x = x;
        prev = v;
    }
    throw NoSignChange("boundary branches do not cross on the scanned interval");
}

} // namespace

HornBounds::HornBounds(const OptimizerConfig& cfg) : cfg_(cfg) {
    const auto alpha_minus_werner = [this](double e) { return alpha_branch(e) - werner_branch(e); };
    auto [a1, b1] = scan_bracket(alpha_minus_werner, 0.05, 0.95, 18);
    crossovers_.alpha_werner_eof = bisect_root(alpha_minus_werner, a1, b1, 1e-10);
    crossovers_.alpha_werner_discord = alpha_branch(crossovers_.alpha_werner_eof);

    const auto werner_minus_pure = [this](double e) { return werner_branch(e) - e; };
    auto [a2, b2] = scan_bracket(werner_minus_pure, crossovers_.alpha_werner_eof, 0.99, 20);
    crossovers_.werner_pure_eof = bisect_root(werner_minus_pure, a2, b2, 1e-10);
    crossovers_.werner_pure_discord = werner_branch(crossovers_.werner_pure_eof);
}

double HornBounds::alpha_branch(double eof) const {
    const double c = concurrence_for_eof(eof);
    return discord_analytic(Alpha{0.5 * (1.0 + c)}).value;
}

double HornBounds::werner_branch(double eof) const {
    const double c = concurrence_for_eof(eof);
    const double xi = std::min((2.0 * c + 1.0) / 3.0, 1.0);
    return discord_numeric(make_family(Werner{xi}), cfg_).discord;
}

double HornBounds::beta_branch(double eof) {
    const double c = concurrence_for_eof(eof);
    return discord_analytic(Beta{0.5 * (1.0 + c)}).value;
}

BoundValue HornBounds::upper(double eof) const {
    eof = std::clamp(eof, 0.0, 1.0);
    if (eof <= crossovers_.alpha_werner_eof) return {alpha_branch(eof), "alpha"};
    if (eof <= crossovers_.werner_pure_eof) return {werner_branch(eof), "werner"};
    return {pure_branch(eof), "pure"};
}

BoundValue HornBounds::lower(double eof) const {
    return {beta_branch(std::clamp(eof, 0.0, 1.0)), "beta"};
}

// ---------------------------------------------------------------------------
// entropy envelope

EntropyEnvelope::EntropyEnvelope(const OptimizerConfig& cfg, int scan_points)
    : cfg_(cfg), scan_points_(std::max(scan_points, 3)) {}

EntropyEnvelope::Argmax EntropyEnvelope::two_param_max(double linear_entropy) const {
    if (linear_entropy > kPimpleEntropy + 1e-12)
        throw std::invalid_argument("two-parameter family does not reach S_L above 8/9");
    // Tr rho^2 = a^2 + ((1-a)^2 + b^2)/2 = P on the contour, so
    // b^2 = 2P - 2a^2 - (1-a)^2, feasible while 0 <= b^2 <= (1-a)^2.
    // Q(a, b) is even in b, so b >= 0 suffices.
    const double purity = std::max(1.0 - 0.75 * std::max(linear_entropy, 0.0), 1.0 / 3.0);
    const double root = std::sqrt(std::max(6.0 * purity - 2.0, 0.0));
    const double lo = std::max((1.0 - root) / 3.0, 0.0);
    const double hi = std::min((1.0 + root) / 3.0, 1.0);

    auto evaluate = [purity](double a) -> std::optional<Argmax> {
        const double edge = (1.0 - a) * (1.0 - a);
        const double b2 = 2.0 * purity - 2.0 * a * a - edge;
        if (b2 < -1e-12 || b2 > edge + 1e-12) return std::nullopt;
        const double b = std::sqrt(std::clamp(b2, 0.0, edge));
        const double q = two_param_q(a, b);
        return Argmax{std::max(std::min(a, q), 0.0), a, b};
    };

    std::vector<double> candidates;
    candidates.reserve(static_cast<std::size_t>(scan_points_) + 2);
    for (int i = 0; i < scan_points_; ++i)
        candidates.push_back(i + 1 == scan_points_ ? hi : lo + (hi - lo) * i / (scan_points_ - 1));
    if (purity >= 0.5) {
        // Where the contour meets the |b| = 1 - a edge.
        const double r = std::sqrt(2.0 * purity - 1.0);
        for (double a : {(1.0 - r) / 2.0, (1.0 + r) / 2.0})
            if (a >= lo && a <= hi) candidates.push_back(a);
    }
    std::sort(candidates.begin(), candidates.end());

    std::optional<Argmax> best;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto v = evaluate(candidates[i]);
        if (v && (!best || v->value > best->value)) {
            best = v;
            best_idx = i;
        }
    }
    if (!best) throw std::logic_error("empty two-parameter contour");

    // Golden-section refinement between the feasible neighbours of the best candidate.
    double left = candidates[best_idx], right = candidates[best_idx];
    if (best_idx > 0 && evaluate(candidates[best_idx - 1])) left = candidates[best_idx - 1];
    if (best_idx + 1 < candidates.size() && evaluate(candidates[best_idx + 1])) right = candidates[best_idx + 1];
    auto value_at = [&](double a) {
        const auto v = evaluate(a);
        return v ? v->value : -std::numeric_limits<double>::infinity();
    };
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = right - ratio * (right - left), x2 = left + ratio * (right - left);
    double f1 = value_at(x1), f2 = value_at(x2);
    while (right - left > 1e-12) {
        if (f1 < f2) {
            left = x1;
            x1 = x2;
            f1 = f2;
            x2 = left + ratio * (right - left);
            f2 = value_at(x2);
        } else {
            right = x2;
            x2 = x1;
            f2 = f1;
            x1 = right - ratio * (right - left);
            f1 = value_at(x1);
        }
    }
    if (const auto refined = evaluate(0.5 * (left + right)); refined && refined->value > best->value)
        best = refined;
    return *best;
}

double EntropyEnvelope::werner_value(double linear_entropy) const {
    const double xi = std::sqrt(std::clamp(1.0 - linear_entropy, 0.0, 1.0));
    return discord_numeric(make_family(Werner{xi}), cfg_).discord;
}

BoundValue EntropyEnvelope::upper(double linear_entropy) const {
    linear_entropy = std::clamp(linear_entropy, 0.0, 1.0);
    if (linear_entropy <= kPimpleEntropy) return {two_param_max(linear_entropy).value, "twoparam"};
    return {werner_value(linear_entropy), "werner"};
}

EntropyEnvelope::Junction EntropyEnvelope::junction() const {
    return {two_param_max(kPimpleEntropy).value, werner_value(kPimpleEntropy)};
}

namespace {

const HornBounds& default_horn() {
    static const HornBounds horn;
    return horn;
}

const EntropyEnvelope& default_envelope() {
    static const EntropyEnvelope envelope;
    return envelope;
}

} // namespace

double horn_upper(double eof) { return default_horn().upper(eof).value; }
double horn_lower(double eof) { return default_horn().lower(eof).value; }
double entropy_upper(double linear_entropy) { return default_envelope().upper(linear_entropy).value; }

// ---------------------------------------------------------------------------
// sampling

std::string Provenance::label() const {
    switch (kind) {
    case Kind::Random: return "random";
    case Kind::Sweep: return "sweep";
    case Kind::NearBoundary: {
        char eps[40];
        std::snprintf(eps, sizeof eps, "%.17g", epsilon);
        return "near-boundary(" + std::string(family ? name(*family) : "unknown") + "," + eps + ")";
    }
    }
    return "unknown";
}

SampleBatch sample_random(std::size_t n, std::uint64_t seed, const OptimizerConfig& cfg) {
    SampleBatch batch;
    batch.provenance.kind = Provenance::Kind::Random;
    batch.samples.resize(n);
    parallel_for(n, [&](std::size_t i) {
        auto& s = batch.samples[i];
        s.seed = derive_seed(seed, i);
        s.record = evaluate(random_state(s.seed), cfg);
    });
    return batch;
}

FamilyParam draw_family_param(FamilyKind family, std::uint64_t seed) {
    std::mt19937_64 engine(derive_seed(seed, 0x7061726dull));
    auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    const double u = uniform();
    switch (family) {
    case FamilyKind::Werner: return Werner{u};
    case FamilyKind::Alpha: return Alpha{0.5 + 0.5 * u};
    case FamilyKind::Beta: return Beta{u};
    case FamilyKind::TwoParam: {
        const double b = (u - 1.0) + 2.0 * (1.0 - u) * uniform();
        return TwoParam{u, std::clamp(b, u - 1.0, 1.0 - u)};
    }
    case FamilyKind::Pure: return PureSchmidt{u};
    }
    return Alpha{u};
}

SampleBatch sample_near_boundary(FamilyKind family, std::size_t n, double epsilon, std::uint64_t seed,
                                 const OptimizerConfig& cfg) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ParamOutOfRange("epsilon out of range [0,1]");
    SampleBatch batch;
    batch.provenance = Provenance{Provenance::Kind::NearBoundary, family, epsilon};
    batch.samples.resize(n);
    parallel_for(n, [&](std::size_t i) {
        auto& s = batch.samples[i];
        s.seed = derive_seed(seed, i);
        s.family = draw_family_param(family, s.seed);
        s.record = evaluate(regenerate_state(s, batch.provenance), cfg);
    });
    return batch;
}

Density regenerate_state(const Sample& sample, const Provenance& provenance) {
    switch (provenance.kind) {
    case Provenance::Kind::Random: return random_state(sample.seed);
    case Provenance::Kind::NearBoundary:
        return mix(make_family(sample.family.value()), random_state(sample.seed), provenance.epsilon);
    case Provenance::Kind::Sweep: return make_family(sample.family.value());
    }
    throw std::logic_error("unknown provenance");
}

SampleBatch filter(const SampleBatch& batch, const std::function<bool(const Sample&)>& keep) {
    SampleBatch out;
    out.provenance = batch.provenance;
    std::copy_if(batch.samples.begin(), batch.samples.end(), std::back_inserter(out.samples), keep);
    return out;
}

RegionReport verify_bounds(const SampleBatch& batch, Plane plane, double slack, const HornBounds& horn,
                           const EntropyEnvelope& envelope) {
    struct Check {
        double overshoot;
        std::optional<Offender> offender;
    };
    std::vector<Check> checks(batch.samples.size());
    parallel_for(checks.size(), [&](std::size_t i) {
        const auto& s = batch.samples[i];
        const double y = s.record.discord;
        Check c{0.0, std::nullopt};
        if (plane == Plane::EofQ) {
            const double x = s.record.eof;
            const BoundValue up = horn.upper(x);
            const BoundValue lo = horn.lower(x);
            c.overshoot = std::max({y - up.value, lo.value - y, 0.0});
            if (y > up.value + slack) c.offender = Offender{s.seed, x, y, up.value, std::string(up.branch)};
            else if (y < lo.value - slack) c.offender = Offender{s.seed, x, y, lo.value, std::string(lo.branch)};
        } else {
            const double x = s.record.linear_entropy;
            const BoundValue up = envelope.upper(x);
            c.overshoot = std::max(y - up.value, 0.0);
            if (y > up.value + slack) c.offender = Offender{s.seed, x, y, up.value, std::string(up.branch)};
        }
        checks[i] = std::move(c);
    });

    RegionReport report;
    report.n_checked = checks.size();
    for (auto& c : checks) {
        report.worst_violation = std::max(report.worst_violation, c.overshoot);
        if (c.offender) report.offenders.push_back(std::move(*c.offender));
    }
    report.n_violations = report.offenders.size();
    return report;
}

} // namespace qdiscord
