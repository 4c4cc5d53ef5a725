#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace arbsim::cli {

/// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& row();
  CsvTable& add(double v);
  CsvTable& add(std::uint64_t v);
  CsvTable& add(const std::string& v);

  /// `header` is written first as a comment line, without the leading "# ".
  std::string render(const std::string& header) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes through a sibling temp file and renames it into place, so a
/// failed write never leaves a partial file behind.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace arbsim::cli
