#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace vlsf {

/// Shortest round-trip decimal form of a double, period separator.
std::string csv_double(double value);

/// Line-oriented CSV emitter: header row, LF endings. Opens in binary
/// mode so the byte stream is identical across platforms.
class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& header);

  /// One preformatted row, without trailing newline.
  void row(const std::string& line);

 private:
  std::ofstream out_;
};

}  // namespace vlsf
