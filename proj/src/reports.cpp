#include "qexpand/reports.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "qexpand/error.hpp"

namespace qexpand {

Json spectrum_json(const RVec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

void write_report(Json report, const std::string& out,
                  const SpectraTable& spectra, double wall_ms) {
  report["wall_time_ms"] = wall_ms;
  const std::string text = report.dump(2) + "\n";
  if (out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  require(file.good(), "BadInput", "cannot write report file: " + out);
  file << text;
  if (spectra.empty()) return;
  std::ostringstream csv;
  for (const auto& [name, values] : spectra) {
    csv << name;
    for (int i = 0; i < values.size(); ++i) csv << "," << values[i];
    csv << "\n";
  }
  std::ofstream csv_file(out + ".csv");
  require(csv_file.good(), "BadInput", "cannot write CSV file: " + out + ".csv");
  csv_file << csv.str();
}

std::string report_bytes_without_wall_time(Json report) {
  report.erase("wall_time_ms");
  return report.dump(2) + "\n";
}

}  // namespace qexpand
