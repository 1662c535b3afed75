#include "vlsf/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vlsf {

std::string csv_double(double value) {
  char buffer[40];
  // Shortest representation that round-trips: try increasing precision.
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(buffer, "%lf", &parsed);
    if (parsed == value || (std::isnan(parsed) && std::isnan(value))) break;
  }
  return buffer;
}

CsvFile::CsvFile(const std::filesystem::path& path, const std::string& header)
    : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
  out_ << header << '\n';
}

void CsvFile::row(const std::string& line) { out_ << line << '\n'; }

}  // namespace vlsf
