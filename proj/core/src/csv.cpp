#include "windbid/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "windbid/errors.hpp"

namespace windbid {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!expected_header.empty() && line != expected_header) {
    throw DataError(path + ": unexpected header '" + line + "', want '" +
                    expected_header + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

double parse_double(const std::string& cell, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') {
    throw DataError(context + ": bad number '" + cell + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& cell, const std::string& context) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw DataError(context + ": bad integer '" + cell + "'");
  }
  return v;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& header)
    : path_(path), out_(path) {
  if (!out_) throw DataError("cannot write " + path);
  out_ << header << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << "\n";
  if (!out_) throw DataError("write failed: " + path_);
}

}  // namespace windbid
