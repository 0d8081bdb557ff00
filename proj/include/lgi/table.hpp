#pragma once

// Column-oriented result tables and their CSV / JSON writers.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lgi {

struct Column {
  std::string name;
  bool boolean = false;  ///< written as 0/1 in CSV and true/false in JSON
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  /// Provenance written into the CSV header comment and the JSON envelope.
  std::vector<std::pair<std::string, std::string>> config;

  void add_row(std::vector<double> row);
};

/// %.12g, the fixed formatting used by every writer.
std::string format_number(double v);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

enum class Format { csv, json };
Format parse_format(const std::string& s);

/// Writes to `path`, or to stdout when path is empty or "-". Throws
/// std::ios_base::failure with the path in the message on I/O errors.
void write_table(const Table& t, Format f, const std::string& path);

}  // namespace lgi
