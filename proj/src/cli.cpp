#include "qdiscord/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qdiscord/analytic.hpp"
#include "qdiscord/boundaries.hpp"
#include "qdiscord/io.hpp"

namespace qdiscord {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { Point, Sweep, Sample, Near, Verify, Crossover };

struct RunConfig {
    Command command = Command::Point;
    std::optional<std::string> input_path;
    std::optional<std::string> family;
    std::optional<double> param;
    std::optional<double> param2;
    std::optional<std::size_t> n;
    std::uint64_t seed = 0;
    std::optional<double> epsilon;
    std::string plane = "eof-q";
    OptimizerConfig optimizer;
    std::optional<std::string> output_path;
    std::optional<std::string> format;
    double slack = 1e-6;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--family", cfg.family, "State family")
        ->check(CLI::IsMember({"werner", "alpha", "beta", "twoparam", "pure"}));
    sub->add_option("--param", cfg.param, "First family parameter");
    sub->add_option("--param2", cfg.param2, "Second family parameter (twoparam b)");
    sub->add_option("--in", cfg.input_path, "JSON state file");
    sub->add_option("--out", cfg.output_path, "Output path (default: stdout)");
    sub->add_option("--n", cfg.n, "Sample count or curve resolution")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--epsilon", cfg.epsilon, "Near-boundary mixing weight")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--plane", cfg.plane, "Bound plane")->check(CLI::IsMember({"eof-q", "sl-q"}));
    sub->add_option("--grid-theta", cfg.optimizer.grid_theta, "Theta grid points")->check(CLI::Range(2, 100000));
    sub->add_option("--grid-phi", cfg.optimizer.grid_phi, "Phi grid points")->check(CLI::Range(1, 100000));
    sub->add_option("--restarts", cfg.optimizer.restarts, "Refinement restarts")->check(CLI::Range(1, 1000));
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--slack", cfg.slack, "Bound violation slack in bits")->check(CLI::NonNegativeNumber);
}

FamilyParam family_from(const RunConfig& cfg) {
    const FamilyKind kind = *parse_family_kind(*cfg.family);
    if (!cfg.param) throw UsageError("--param is required with --family");
    if (kind == FamilyKind::TwoParam && !cfg.param2) throw UsageError("--param2 is required for twoparam");
    FamilyParam p = make_param(kind, *cfg.param, cfg.param2.value_or(0.0));
    check_range(p);
    return p;
}

std::string want_format(const RunConfig& cfg, std::string_view fallback, std::initializer_list<std::string_view> allowed,
                        std::string_view command) {
    const std::string fmt = cfg.format.value_or(std::string(fallback));
    for (auto a : allowed)
        if (a == fmt) return fmt;
    throw UsageError("--format " + fmt + " is not supported by " + std::string(command));
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string run_point(const RunConfig& cfg) {
    if (cfg.input_path.has_value() == cfg.family.has_value())
        throw UsageError("point needs exactly one of --in or --family");
    const std::string fmt = want_format(cfg, "json", {"json", "csv"}, "point");

    std::optional<FamilyParam> family;
    std::optional<Density> rho;
    if (cfg.family) {
        family = family_from(cfg);
        rho = make_family(*family);
    } else {
        rho = read_state_file(*cfg.input_path);
    }
    const CorrelationRecord rec = evaluate(*rho, cfg.optimizer);

    if (fmt == "csv") {
        SampleBatch batch;
        batch.provenance.kind = Provenance::Kind::Sweep;
        batch.samples.push_back(Sample{cfg.seed, family, rec});
        std::ostringstream os;
        write_csv(os, batch);
        return os.str();
    }
    nlohmann::json j;
    j["command"] = "point";
    j["source"] = cfg.input_path ? *cfg.input_path : std::string("family");
    if (family) {
        j["family"] = name(kind_of(*family));
        j["param1"] = first_param(*family);
        if (auto b = second_param(*family)) j["param2"] = *b;
        const auto kind = kind_of(*family);
        if (kind == FamilyKind::Alpha || kind == FamilyKind::Beta || kind == FamilyKind::TwoParam) {
            const auto trace = discord_analytic(*family);
            j["analytic"] = {{"discord", trace.value},
                             {"concurrence", concurrence_analytic(*family)},
                             {"branch", std::string(to_string(trace.branch))}};
            if (trace.zeta) j["analytic"]["zeta"] = *trace.zeta;
            if (trace.q) j["analytic"]["q"] = *trace.q;
        }
    }
    j["record"] = to_json(rec);
    return dump(j);
}

std::string run_sweep(const RunConfig& cfg) {
    if (!cfg.family) throw UsageError("sweep needs --family");
    want_format(cfg, "csv", {"csv"}, "sweep");
    const auto kind = *parse_family_kind(*cfg.family);
    SweepSpec spec = default_sweep(kind, *parse_plane(cfg.plane), static_cast<int>(cfg.n.value_or(512)));
    if (kind == FamilyKind::TwoParam && cfg.param2) {
        spec.fixed_b = *cfg.param2;
        spec.lo = std::max(spec.lo, std::abs(spec.fixed_b));
        spec.hi = std::min(spec.hi, 1.0 - std::abs(spec.fixed_b));
    }
    const BoundaryCurve curve = sweep_family(spec, cfg.optimizer);
    std::ostringstream os;
    write_csv(os, curve);
    return os.str();
}

SampleBatch make_batch(const RunConfig& cfg, std::size_t default_n) {
    const std::size_t n = cfg.n.value_or(default_n);
    if (cfg.family)
        return sample_near_boundary(*parse_family_kind(*cfg.family), n, cfg.epsilon.value_or(1e-3), cfg.seed,
                                    cfg.optimizer);
    return sample_random(n, cfg.seed, cfg.optimizer);
}

std::string batch_csv(const SampleBatch& batch) {
    std::ostringstream os;
    write_csv(os, batch);
    return os.str();
}

std::string run_verify(const RunConfig& cfg) {
    const std::string fmt = want_format(cfg, "json", {"json", "csv"}, "verify");
    const Plane plane = *parse_plane(cfg.plane);
    const SampleBatch batch = make_batch(cfg, 10000);
    if (fmt == "csv") return batch_csv(batch);

    const HornBounds horn(cfg.optimizer);
    const EntropyEnvelope envelope(cfg.optimizer);
    nlohmann::json j;
    j["command"] = "verify";
    j["plane"] = std::string(to_string(plane));
    j["provenance"] = batch.provenance.label();
    j["seed"] = cfg.seed;
    j["n"] = batch.samples.size();
    j["slack"] = cfg.slack;
    if (plane == Plane::EofQ) {
        j.update(to_json(verify_bounds(batch, plane, cfg.slack, horn, envelope)));
    } else {
        auto below = [](const Sample& s) { return s.record.linear_entropy <= kPimpleEntropy; };
        const SampleBatch gated = filter(batch, below);
        const SampleBatch beyond = filter(batch, [&](const Sample& s) { return !below(s); });
        j.update(to_json(verify_bounds(gated, plane, cfg.slack, horn, envelope)));
        j["informational"] = to_json(verify_bounds(beyond, plane, cfg.slack, horn, envelope));
        const auto junction = envelope.junction();
        j["junction"] = {{"S_L", kPimpleEntropy},
                         {"two_param_side", junction.two_param_side},
                         {"werner_side", junction.werner_side}};
    }
    return dump(j);
}

std::string run_crossover(const RunConfig& cfg) {
    want_format(cfg, "json", {"json"}, "crossover");
    const int res = static_cast<int>(cfg.n.value_or(512));
    const auto alpha = sweep_family(default_sweep(FamilyKind::Alpha, Plane::EofQ, res), cfg.optimizer);
    const auto werner = sweep_family(default_sweep(FamilyKind::Werner, Plane::EofQ, res), cfg.optimizer);
    const auto pure = sweep_family(default_sweep(FamilyKind::Pure, Plane::EofQ, res), cfg.optimizer);
    const Crossing aw = find_crossover(alpha, werner);
    const Crossing wp = find_crossover(werner, pure);
    nlohmann::json j;
    j["command"] = "crossover";
    j["resolution"] = res;
    j["alpha_werner"] = {{"eof", aw.x}, {"discord", aw.y}};
    j["werner_pure"] = {{"eof", wp.x}, {"discord", wp.y}};
    return dump(j);
}

std::string run(const RunConfig& cfg) {
    switch (cfg.command) {
    case Command::Point: return run_point(cfg);
    case Command::Sweep: return run_sweep(cfg);
    case Command::Sample:
        want_format(cfg, "csv", {"csv"}, "sample");
        if (cfg.family) throw UsageError("sample does not take --family (use near)");
        return batch_csv(make_batch(cfg, 10000));
    case Command::Near:
        if (!cfg.family) throw UsageError("near needs --family");
        want_format(cfg, "csv", {"csv"}, "near");
        return batch_csv(make_batch(cfg, 1000));
    case Command::Verify: return run_verify(cfg);
    case Command::Crossover: return run_crossover(cfg);
    }
    throw UsageError("unknown command");
}

} // namespace

int parse_and_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Quantum discord, entanglement and correlation-boundary harness"};
    app.require_subcommand(1);
    const std::pair<const char*, Command> commands[] = {
        {"point", Command::Point},   {"sweep", Command::Sweep},   {"sample", Command::Sample},
        {"near", Command::Near},     {"verify", Command::Verify}, {"crossover", Command::Crossover},
    };
    const char* descriptions[] = {
        "Measures of one state (--family/--param or --in)",
        "Boundary curve of one family",
        "Random states (T T^dagger measure)",
        "States mixed slightly away from a boundary family",
        "Check samples against the boundary curves",
        "Locate the horn boundary crossovers",
    };
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
        add_common(sub, cfg);
        subs.push_back(sub);
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) cfg.command = commands[i].second;

    std::string result;
    try {
        result = run(cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        // ParamOutOfRange, StateError, ParseError, UnsupportedFamily and
        // optimizer failures all mean the requested input could not be evaluated.
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path, std::ios::binary);
        if (!file || !(file << result) || !file.flush()) {
            err << "io error: cannot write " << *cfg.output_path << "\n";
            return kExitIo;
        }
    } else {
        out << result;
    }
    return kExitOk;
}

} // namespace qdiscord
