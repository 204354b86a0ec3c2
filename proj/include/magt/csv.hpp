#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace magt {

// RFC-4180 style CSV with a header row. Numbers are formatted with "%.12g"
// so identical inputs give byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void write_row(const std::vector<std::string>& fields);

  static std::string format(double value);
  static std::string escape(const std::string& field);

 private:
  std::ostream& out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Minimal reader for the toolkit's own trace files. Rows whose first field
// starts with '#' (footer/status records) are skipped.
CsvTable read_csv(const std::string& path);

// Write `content` to `path` via a temp file + rename, so partial files never
// appear under the final name.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace magt
