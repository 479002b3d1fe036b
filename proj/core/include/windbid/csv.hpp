#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace windbid {

/// Shortest round-trip decimal form of a double, stable across runs.
std::string format_double(double v);

/// One parsed CSV line, split on commas (no quoting; none of our schemas
/// need it).
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a whole CSV file, header first. Throws DataError when the file
/// is missing or the header does not match `expected_header` (when
/// non-empty). Returns data rows only.
std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::string& expected_header);

double parse_double(const std::string& cell, const std::string& context);
std::int64_t parse_int(const std::string& cell, const std::string& context);

/// CSV writer with deterministic float formatting.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& header);

  void row(const std::vector<std::string>& cells);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace windbid
