#include "qdiscord/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qdiscord {

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// state files

Density parse_state_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("state file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rho")) throw ParseError("state file has no \"rho\" member");
    const auto& rows = doc["rho"];
    if (!rows.is_array() || rows.size() != 4) throw ParseError("\"rho\" must hold 4 rows");

    Matrix4c<double> m;
    for (int i = 0; i < 4; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 4) throw ParseError("each row of \"rho\" must hold 4 entries");
        for (int j = 0; j < 4; ++j) {
            const auto& z = row[static_cast<std::size_t>(j)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("each entry of \"rho\" must be [re, im]");
            m(i, j) = {z[0].get<double>(), z[1].get<double>()};
        }
    }
    return validate_state(m);
}

std::string format_state_json(const Density& rho) {
    std::string out = "{\"rho\": [";
    for (int i = 0; i < 4; ++i) {
        out += i ? ",\n  [" : "\n  [";
        for (int j = 0; j < 4; ++j) {
            if (j) out += ", ";
            out += "[" + format_number(rho(i, j).real()) + ", " + format_number(rho(i, j).imag()) + "]";
        }
        out += "]";
    }
    out += "\n]}\n";
    return out;
}

Density read_state_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open state file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state_json(buf.str());
}

void write_state_file(const Density& rho, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write state file " + path.string());
    out << format_state_json(rho);
    if (!out) throw IoError("failed writing state file " + path.string());
}

// ---------------------------------------------------------------------------
// csv

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_row(std::ostream& out, std::size_t id, std::string_view provenance, const std::optional<FamilyParam>& family,
               const std::optional<std::uint64_t>& seed, const CorrelationRecord& r) {
    std::string family_name, p1, p2;
    if (family) {
        family_name = name(kind_of(*family));
        p1 = format_number(first_param(*family));
        if (auto b = second_param(*family)) p2 = format_number(*b);
    }
    out << id << ',' << csv_field(provenance) << ',' << family_name << ',' << p1 << ',' << p2 << ','
        << (seed ? std::to_string(*seed) : std::string()) << ',' << format_number(r.linear_entropy) << ','
        << format_number(r.mutual_info) << ',' << format_number(r.classical_corr) << ','
        << format_number(r.discord) << ',' << format_number(r.concurrence) << ',' << format_number(r.eof) << ','
        << format_number(r.theta_opt) << ',' << format_number(r.phi_opt) << "\r\n";
}

std::optional<double> parse_optional_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw ParseError("bad number in CSV: " + s);
    return v;
}

double parse_double_or_nan(const std::string& s) {
    return parse_optional_double(s).value_or(std::numeric_limits<double>::quiet_NaN());
}

} // namespace

void write_csv(std::ostream& out, const SampleBatch& batch) {
    out << kCsvHeader << "\r\n";
    const std::string prov = batch.provenance.label();
    for (std::size_t i = 0; i < batch.samples.size(); ++i) {
        const auto& s = batch.samples[i];
        write_row(out, i, prov, s.family, s.seed, s.record);
    }
}

void write_csv(std::ostream& out, const BoundaryCurve& curve) {
    out << kCsvHeader << "\r\n";
    std::size_t id = 0;
    for (const auto& seg : curve.segments)
        for (const auto& p : seg.points) write_row(out, id++, "sweep", p.param, std::nullopt, p.record);
}

std::vector<std::vector<std::string>> parse_csv_rows(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    char c;
    auto end_row = [&] {
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
    };
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get(c);
            end_row();
        } else if (c == '\n') {
            end_row();
        } else {
            field += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted CSV field");
    if (any) end_row();
    return rows;
}

std::vector<CsvRecord> read_csv(std::istream& in) {
    const auto rows = parse_csv_rows(in);
    if (rows.empty()) throw ParseError("empty CSV");
    std::string header;
    for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
    if (header != kCsvHeader) throw ParseError("unexpected CSV header: " + header);

    std::vector<CsvRecord> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r];
        if (f.size() != 14) throw ParseError("CSV row " + std::to_string(r) + " has " + std::to_string(f.size()) + " fields");
        CsvRecord rec;
        rec.state_id = std::stoull(f[0]);
        rec.provenance = f[1];
        if (!f[2].empty()) {
            rec.family = parse_family_kind(f[2]);
            if (!rec.family) throw ParseError("unknown family in CSV: " + f[2]);
        }
        rec.param1 = parse_optional_double(f[3]);
        rec.param2 = parse_optional_double(f[4]);
        if (!f[5].empty()) rec.seed = std::stoull(f[5]);
        rec.record.linear_entropy = parse_double_or_nan(f[6]);
        rec.record.mutual_info = parse_double_or_nan(f[7]);
        rec.record.classical_corr = parse_double_or_nan(f[8]);
        rec.record.discord = parse_double_or_nan(f[9]);
        rec.record.concurrence = parse_double_or_nan(f[10]);
        rec.record.eof = parse_double_or_nan(f[11]);
        rec.record.theta_opt = parse_double_or_nan(f[12]);
        rec.record.phi_opt = parse_double_or_nan(f[13]);
        out.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// json

namespace {

nlohmann::json number_or_null(double v) {
    return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v);
}

} // namespace

nlohmann::json to_json(const RegionReport& report) {
    nlohmann::json offenders = nlohmann::json::array();
    for (const auto& o : report.offenders)
        offenders.push_back({{"seed", o.seed}, {"x", o.x}, {"y", o.y}, {"bound", o.bound}, {"branch", o.branch}});
    return {{"n_checked", report.n_checked},
            {"n_violations", report.n_violations},
            {"worst_violation", report.worst_violation},
            {"offenders", offenders}};
}

nlohmann::json to_json(const CorrelationRecord& r) {
    return {{"S_L", number_or_null(r.linear_entropy)},   {"mutual_info", number_or_null(r.mutual_info)},
            {"classical_corr", number_or_null(r.classical_corr)}, {"discord", number_or_null(r.discord)},
            {"concurrence", number_or_null(r.concurrence)}, {"eof", number_or_null(r.eof)},
            {"theta_opt", number_or_null(r.theta_opt)},   {"phi_opt", number_or_null(r.phi_opt)}};
}

} // namespace qdiscord
