// Report emission shared by the command-line tool and the acceptance suite.
//
// Reports are ordered JSON objects; the wall-time field is always appended
// last so two runs with identical inputs and seed differ in at most the final
// line.  Spectra passed alongside a report are additionally written as CSV
// (one row per spectrum: name, v_1, v_2, ...) next to a file destination.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qexpand/numerics.hpp"

namespace qexpand {

using Json = nlohmann::ordered_json;

/// JSON array of the entries of a real vector.
Json spectrum_json(const RVec& v);

/// Named spectra rendered as CSV rows beside a file report.
using SpectraTable = std::vector<std::pair<std::string, RVec>>;

/**
 * @brief Appends the wall-time field and delivers the report.
 *
 * @param out "-" streams JSON to stdout; any other value names a file, and
 *        non-empty spectra are written to "<out>.csv" as well
 * @param wall_ms wall time in milliseconds, stored as the final field
 * @throws Error("BadInput") if a destination file cannot be written
 */
void write_report(Json report, const std::string& out,
                  const SpectraTable& spectra, double wall_ms);

/// The report body serialized exactly as write_report stores it, minus the
/// wall-time field; the determinism contract compares these bytes.
std::string report_bytes_without_wall_time(Json report);

}  // namespace qexpand
