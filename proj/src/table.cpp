#include "lgi/table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include "json.hpp"
#include <stdexcept>

namespace lgi {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row has " + std::to_string(row.size()) + " cells, table has " +
                           std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  os << '#';
  for (const auto& [key, value] : t.config) {
    os << ' ' << key << '=';
    if (value.find(' ') != std::string::npos)
      os << '"' << value << '"';
    else
      os << value;
  }
  os << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c].name;
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << (t.columns[c].boolean ? (row[c] != 0.0 ? "1" : "0") : format_number(row[c]));
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : t.config) config[key] = value;
  doc["config"] = config;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (t.columns[c].boolean)
        rec[t.columns[c].name] = row[c] != 0.0;
      else
        rec[t.columns[c].name] = std::stod(format_number(row[c]));
    }
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  os << doc.dump(2) << '\n';
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + s + "' (expected csv|json)");
}

void write_table(const Table& t, Format f, const std::string& path) {
  auto emit = [&](std::ostream& os) { f == Format::csv ? write_csv(t, os) : write_json(t, os); };
  if (path.empty() || path == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  emit(out);
  out.close();
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace lgi
