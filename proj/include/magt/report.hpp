#pragma once

#include <string>
#include <vector>

namespace magt {

struct ReportOptions {
  std::string group_by;  // column name; empty = first column
};

struct ReportResult {
  std::string key_column;
  std::vector<std::string> numeric_columns;       // aggregated columns
  std::vector<std::string> keys;                  // group keys, sorted
  std::vector<std::vector<double>> means;         // [group][column]
  std::vector<std::vector<double>> stddevs;       // [group][column]
  std::vector<std::size_t> group_sizes;

  std::string table_text() const;    // aligned human-readable summary
  std::string gnuplot_data() const;  // '#'-headed whitespace columns
};

// Aggregates rows across trace files, grouped by the key column: mean and
// sample stddev of every column that is numeric in all inputs. All files
// must share the same header; a mismatch names the offending column.
ReportResult aggregate_traces(const std::vector<std::string>& paths,
                              const ReportOptions& options = {});

}  // namespace magt
