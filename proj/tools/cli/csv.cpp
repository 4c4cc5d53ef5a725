#include "cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace arbsim::cli {

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  rows_.back().reserve(columns_.size());
  return *this;
}

CsvTable& CsvTable::add(double v) { return add(format_number(v)); }

CsvTable& CsvTable::add(std::uint64_t v) { return add(std::to_string(v)); }

CsvTable& CsvTable::add(const std::string& v) {
  if (rows_.empty()) throw std::logic_error("CsvTable::add before row()");
  rows_.back().push_back(v);
  return *this;
}

std::string CsvTable::render(const std::string& header) const {
  std::string out = "# " + header + "\n";
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) {
    if (r.size() != columns_.size()) throw std::logic_error("CSV row width mismatch");
    line(r);
  }
  return out;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("cannot write '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace arbsim::cli
