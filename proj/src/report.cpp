#include "magt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "magt/csv.hpp"
#include "magt/errors.hpp"

namespace magt {

namespace {

bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

}  // namespace

ReportResult aggregate_traces(const std::vector<std::string>& paths,
                              const ReportOptions& options) {
  if (paths.empty()) throw ConfigError("report needs at least one trace file");

  std::vector<CsvTable> tables;
  tables.reserve(paths.size());
  for (const std::string& path : paths) tables.push_back(read_csv(path));

  const std::vector<std::string>& header = tables.front().header;
  for (std::size_t f = 1; f < tables.size(); ++f) {
    const auto& other = tables[f].header;
    for (std::size_t c = 0; c < std::max(header.size(), other.size()); ++c) {
      const std::string& want = c < header.size() ? header[c] : "<none>";
      const std::string& got = c < other.size() ? other[c] : "<none>";
      if (want != got) {
        throw ConfigError("schema mismatch in " + paths[f] + ": column " +
                          std::to_string(c) + " is '" + got + "', expected '" + want + "'");
      }
    }
  }

  std::size_t key_col = 0;
  if (!options.group_by.empty()) {
    auto it = std::find(header.begin(), header.end(), options.group_by);
    if (it == header.end()) {
      throw ConfigError("group-by column '" + options.group_by + "' not found");
    }
    key_col = static_cast<std::size_t>(it - header.begin());
  }

  // A column is aggregated when every row in every file parses as a number.
  std::vector<bool> numeric(header.size(), true);
  numeric[key_col] = false;
  for (const CsvTable& t : tables) {
    for (const auto& row : t.rows) {
      if (row.size() != header.size()) {
        throw ConfigError("row width mismatch in trace file (expected " +
                          std::to_string(header.size()) + " columns)");
      }
      for (std::size_t c = 0; c < header.size(); ++c) {
        double v;
        if (numeric[c] && !parse_number(row[c], &v)) numeric[c] = false;
      }
    }
  }

  ReportResult result;
  result.key_column = header[key_col];
  std::vector<std::size_t> numeric_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (numeric[c]) {
      numeric_cols.push_back(c);
      result.numeric_columns.push_back(header[c]);
    }
  }

  struct Accum {
    std::vector<double> sum, sum_sq;
    std::size_t n = 0;
  };
  std::map<std::string, Accum> groups;
  std::vector<std::string> order;
  for (const CsvTable& t : tables) {
    for (const auto& row : t.rows) {
      const std::string& key = row[key_col];
      auto [it, inserted] = groups.try_emplace(key);
      if (inserted) {
        it->second.sum.assign(numeric_cols.size(), 0.0);
        it->second.sum_sq.assign(numeric_cols.size(), 0.0);
        order.push_back(key);
      }
      Accum& acc = it->second;
      ++acc.n;
      for (std::size_t k = 0; k < numeric_cols.size(); ++k) {
        double v = 0.0;
        parse_number(row[numeric_cols[k]], &v);
        acc.sum[k] += v;
        acc.sum_sq[k] += v * v;
      }
    }
  }

  // Numeric keys sort numerically, everything else lexicographically.
  bool keys_numeric = true;
  for (const std::string& k : order) {
    double v;
    if (!parse_number(k, &v)) { keys_numeric = false; break; }
  }
  std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    if (keys_numeric) {
      double va = 0.0, vb = 0.0;
      parse_number(a, &va);
      parse_number(b, &vb);
      if (va != vb) return va < vb;
    }
    return a < b;
  });

  for (const std::string& key : order) {
    const Accum& acc = groups.at(key);
    result.keys.push_back(key);
    result.group_sizes.push_back(acc.n);
    std::vector<double> means(numeric_cols.size(), 0.0), sds(numeric_cols.size(), 0.0);
    for (std::size_t k = 0; k < numeric_cols.size(); ++k) {
      double mean = acc.sum[k] / static_cast<double>(acc.n);
      means[k] = mean;
      if (acc.n > 1) {
        double var = (acc.sum_sq[k] - static_cast<double>(acc.n) * mean * mean) /
                     (static_cast<double>(acc.n) - 1.0);
        sds[k] = std::sqrt(std::max(var, 0.0));
      }
    }
    result.means.push_back(std::move(means));
    result.stddevs.push_back(std::move(sds));
  }
  return result;
}

std::string ReportResult::table_text() const {
  std::ostringstream out;
  out << key_column << " (n)";
  for (const std::string& c : numeric_columns) out << "  mean_" << c << "  sd_" << c;
  out << "\n";
  for (std::size_t g = 0; g < keys.size(); ++g) {
    out << keys[g] << " (" << group_sizes[g] << ")";
    for (std::size_t k = 0; k < numeric_columns.size(); ++k) {
      out << "  " << CsvWriter::format(means[g][k]) << "  " << CsvWriter::format(stddevs[g][k]);
    }
    out << "\n";
  }
  return out.str();
}

std::string ReportResult::gnuplot_data() const {
  std::ostringstream out;
  out << "# " << key_column;
  for (const std::string& c : numeric_columns) out << " mean_" << c << " sd_" << c;
  out << "\n";
  for (std::size_t g = 0; g < keys.size(); ++g) {
    out << keys[g];
    for (std::size_t k = 0; k < numeric_columns.size(); ++k) {
      out << " " << CsvWriter::format(means[g][k]) << " " << CsvWriter::format(stddevs[g][k]);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace magt
