#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace vlsf {

/// Flat key = value configuration, one entry per line, '#' comments.
/// Keys carry explicit units (sigma_z2, p0, ...). Serialization is
/// sorted by key so a parse/serialize round trip is lossless and
/// byte-stable.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse_file(const std::filesystem::path& path);
  static KeyValueConfig parse_string(const std::string& text);

  std::string serialize() const;
  void write_file(const std::filesystem::path& path) const;

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_u64(const std::string& key, std::uint64_t value);

  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  bool operator==(const KeyValueConfig&) const = default;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace vlsf
