#pragma once

// Deterministic CSV output: 17 significant digits so every double round-trips.

#include <filesystem>
#include <string>
#include <vector>

namespace equichord::csv {

std::string format_number(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  void add_row(std::vector<std::string> cells);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace equichord::csv
