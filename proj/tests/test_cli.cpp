#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qdiscord/cli.hpp"
#include "qdiscord/io.hpp"

using namespace qdiscord;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qdiscord");
    std::ostringstream out, err;
    const int code = parse_and_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qdiscord_test_cli";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("point on the alpha family") {
    const auto r = run({"point", "--family", "alpha", "--param", "0.5"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.err.empty());
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["record"]["discord"].get<double>() == Approx(0.311278).epsilon(5e-7));
    CHECK(j["record"]["eof"].get<double>() == 0.0);
    CHECK(j["analytic"]["discord"].get<double>() == Approx(0.311278).epsilon(5e-7));
    CHECK(j["family"] == "alpha");
}

TEST_CASE("out-of-range family parameters are validation errors") {
    const auto r = run({"point", "--family", "alpha", "--param", "1.5"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("alpha out of range [0,1]") != std::string::npos);
    CHECK(r.out.empty());
    CHECK(run({"point", "--family", "twoparam", "--param", "0.5", "--param2", "0.7"}).code == kExitValidation);
}

TEST_CASE("usage errors name the offending flag and write nothing") {
    const auto out = scratch("usage.json");
    const auto unknown = run({"point", "--familly", "alpha", "--out", out.string()});
    CHECK(unknown.code == kExitUsage);
    CHECK(unknown.err.find("--familly") != std::string::npos);

    const auto bad_family = run({"point", "--family", "gibbs", "--param", "0.5", "--out", out.string()});
    CHECK(bad_family.code == kExitUsage);
    CHECK(bad_family.err.find("--family") != std::string::npos);

    const auto both = run({"point", "--family", "alpha", "--param", "0.5", "--in", "x.json", "--out", out.string()});
    CHECK(both.code == kExitUsage);
    CHECK(run({"point", "--family", "alpha", "--out", out.string()}).code == kExitUsage);
    CHECK(run({"sweep", "--family", "beta", "--format", "json", "--out", out.string()}).code == kExitUsage);
    CHECK(run({"near", "--n", "2", "--out", out.string()}).code == kExitUsage);
    CHECK(run({"sample", "--n", "0", "--out", out.string()}).code == kExitUsage);
    CHECK(run({"near", "--family", "beta", "--epsilon", "2", "--out", out.string()}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("state files: bad states, missing files and unwritable outputs") {
    const auto bad = scratch("bad_state.json");
    {
        std::ofstream f(bad);
        f << "{\"rho\": [[[0.3,0],[0,0],[0,0],[0,0]],[[0,0],[0.2,0],[0,0],[0,0]],"
             "[[0,0],[0,0],[0.2,0],[0,0]],[[0,0],[0,0],[0,0],[0.2,0]]]}";
    }
    const auto r = run({"point", "--in", bad.string()});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("TraceNotOne") != std::string::npos);

    const auto garbled = scratch("garbled.json");
    std::ofstream(garbled) << "not json";
    CHECK(run({"point", "--in", garbled.string()}).code == kExitValidation);

    CHECK(run({"point", "--in", scratch("missing.json").string()}).code == kExitIo);
    const auto nowhere = (scratch("no_such_dir") / "out.json").string();
    CHECK(run({"point", "--family", "beta", "--param", "0.9", "--out", nowhere}).code == kExitIo);
}

TEST_CASE("point reads a state file and writes csv") {
    const auto state = scratch("pimple.json");
    write_state_file(make_family(TwoParam{1.0 / 3.0, 0.0}), state);
    const auto out = scratch("pimple.csv");
    REQUIRE(run({"point", "--in", state.string(), "--format", "csv", "--out", out.string()}).code == kExitOk);
    std::istringstream in(slurp(out));
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0].record.discord - 1.0 / 3.0) <= 1e-4);
    CHECK(rows[0].record.linear_entropy == Approx(8.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("identical command lines give identical bytes") {
    const std::vector<std::vector<std::string>> lines = {
        {"sample", "--n", "12", "--seed", "3"},
        {"near", "--family", "twoparam", "--n", "8", "--seed", "4", "--epsilon", "0.01"},
        {"verify", "--n", "12", "--seed", "7"},
        {"verify", "--n", "12", "--seed", "7", "--format", "csv"},
        {"sweep", "--family", "werner", "--plane", "sl-q", "--n", "16"},
    };
    for (const auto& line : lines) {
        const auto a = run(line), b = run(line);
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
    CHECK(run({"sample", "--n", "12", "--seed", "3"}).out != run({"sample", "--n", "12", "--seed", "4"}).out);
}

TEST_CASE("verify reports echo their seed and plane") {
    const auto eof = nlohmann::json::parse(run({"verify", "--n", "20", "--seed", "7"}).out);
    CHECK(eof["seed"] == 7);
    CHECK(eof["plane"] == "eof-q");
    CHECK(eof["n_checked"] == 20);
    CHECK(eof["n_violations"] == 0);
    CHECK(eof["offenders"].is_array());

    const auto sl = nlohmann::json::parse(run({"verify", "--n", "20", "--plane", "sl-q"}).out);
    CHECK(sl["seed"] == 0);
    CHECK(sl.contains("informational"));
    CHECK(sl["junction"]["two_param_side"].get<double>() == Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(sl["n_checked"].get<int>() + sl["informational"]["n_checked"].get<int>() == 20);

    const auto near = nlohmann::json::parse(run({"verify", "--family", "beta", "--n", "10", "--epsilon", "0.001"}).out);
    CHECK(near["provenance"] == "near-boundary(beta,0.001)");
}

TEST_CASE("sample and sweep produce the csv schema") {
    const auto sample = run({"sample", "--n", "5", "--seed", "1"});
    REQUIRE(sample.code == kExitOk);
    CHECK(sample.out.rfind(std::string(kCsvHeader) + "\r\n", 0) == 0);
    std::istringstream in(sample.out);
    const auto rows = read_csv(in);
    CHECK(rows.size() == 5);
    for (const auto& row : rows) CHECK(row.provenance == "random");

    std::istringstream sweep(run({"sweep", "--family", "alpha", "--n", "10"}).out);
    const auto curve = read_csv(sweep);
    CHECK(curve.size() == 10);
    CHECK(curve.front().param1 == Approx(0.5));
}

TEST_CASE("crossover command") {
    const auto r = run({"crossover", "--n", "96"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["alpha_werner"]["eof"].get<double>() - 0.620) <= 0.01);
    CHECK(std::abs(j["alpha_werner"]["discord"].get<double>() - 0.644) <= 0.01);
    CHECK(std::abs(j["werner_pure"]["eof"].get<double>() - 0.746) <= 0.01);
}

TEST_CASE("help exits cleanly") {
    const auto r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verify") != std::string::npos);
}
