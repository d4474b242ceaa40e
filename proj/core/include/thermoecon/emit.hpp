#ifndef THERMOECON_EMIT_HPP
#define THERMOECON_EMIT_HPP

#include <string>
#include <vector>

#include "thermoecon/integrator.hpp"

namespace thermoecon {

/// CSV: one header row, one row per sample. Column order is fixed and
/// documented in the README; absent diagnostics are empty cells. With a
/// single sheet the columns are unprefixed; with several they carry an
/// s{i}_ prefix.
std::string to_csv(const RunRecord& record);
std::string csv_header(std::size_t sheet_count, bool has_econ);

/// JSON: an object with run metadata and an array of sample objects.
/// record_from_json(to_json(r)) == r.
std::string to_json(const RunRecord& record);
RunRecord record_from_json(const std::string& text);

/// Minimal self-contained SVG line charts (polyline + axes + legend),
/// one file per panel group. Returns the paths written under dir using
/// the given base name: <base>_potentials.svg, <base>_production.svg,
/// <base>_recycling.svg, <base>_intensity.svg and, when the economy is
/// present, <base>_output.svg, <base>_price.svg, <base>_investment.svg.
std::vector<std::string> emit_svg(const RunRecord& record, const std::string& dir,
                                  const std::string& base);

/// Write content to path, creating parent directories. Throws
/// std::runtime_error with the OS message on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace thermoecon

#endif  // THERMOECON_EMIT_HPP
