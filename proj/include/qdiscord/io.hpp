#ifndef QDISCORD_IO_HPP
#define QDISCORD_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qdiscord/boundaries.hpp"

namespace qdiscord {

/// Column order of every CSV this library writes.
inline constexpr std::string_view kCsvHeader =
    "state_id,provenance,family,param1,param2,seed,S_L,mutual_info,classical_corr,discord,concurrence,eof,"
    "theta_opt,phi_opt";

/// %.17g; empty for NaN.
std::string format_number(double v);

/// {"rho": [[[re, im] x 4] x 4]}. Throws ParseError on malformed input and
/// StateError if the matrix is not a valid state.
Density parse_state_json(std::string_view text);
std::string format_state_json(const Density& rho);

/// Throws IoError if the file cannot be read or written.
Density read_state_file(const std::filesystem::path& path);
void write_state_file(const Density& rho, const std::filesystem::path& path);

void write_csv(std::ostream& out, const SampleBatch& batch);
void write_csv(std::ostream& out, const BoundaryCurve& curve);

/// One parsed data row; optional fields are empty cells.
struct CsvRecord {
    std::size_t state_id = 0;
    std::string provenance;
    std::optional<FamilyKind> family;
    std::optional<double> param1;
    std::optional<double> param2;
    std::optional<std::uint64_t> seed;
    CorrelationRecord record;
};

/// RFC-4180 field splitting (quoted fields, doubled quotes, CRLF or LF).
std::vector<std::vector<std::string>> parse_csv_rows(std::istream& in);

/// Parses a file produced by write_csv. Throws ParseError on a header or
/// field mismatch.
std::vector<CsvRecord> read_csv(std::istream& in);

nlohmann::json to_json(const RegionReport& report);
nlohmann::json to_json(const CorrelationRecord& record);

} // namespace qdiscord

#endif // QDISCORD_IO_HPP
