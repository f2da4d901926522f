#include "kdi/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kdi/errors.hpp"

namespace kdi {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  std::string t = s.substr(b, e - b);
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') {
    t = t.substr(1, t.size() - 2);
  }
  return t;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    cells.push_back(trim(cell));
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

double parse_cell(const std::string& cell) {
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return value;
}

std::string format_value(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

} // namespace

const CsvColumn& CsvTable::column(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.name == name) return c;
  }
  throw DataError("column '" + name + "' not found");
}

bool CsvTable::has_column(const std::string& name) const {
  return std::any_of(columns.begin(), columns.end(),
                     [&](const CsvColumn& c) { return c.name == name; });
}

CsvTable load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("'" + path + "' is empty");
  }
  CsvTable table;
  for (const auto& name : split_line(line)) {
    table.columns.push_back(CsvColumn{name, {}, 0});
  }
  if (table.columns.empty()) {
    throw DataError("'" + path + "' has no header columns");
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    ++row;
    if (cells.size() != table.columns.size()) {
      throw DataError("'" + path + "' row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(table.columns.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double v = parse_cell(cells[c]);
      if (std::isnan(v)) ++table.columns[c].nan_count;
      table.columns[c].values.push_back(v);
    }
  }
  table.n_rows = row;
  return table;
}

CsvTable load_csv(const std::string& path, const std::vector<std::string>& selector) {
  CsvTable all = load_csv(path);
  CsvTable picked;
  picked.n_rows = all.n_rows;
  for (const auto& name : selector) {
    picked.columns.push_back(all.column(name));  // throws if absent
    if (picked.columns.back().values.empty()) {
      throw DataError("column '" + name + "' in '" + path + "' is empty");
    }
  }
  return picked;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c].name;
  }
  out << '\n';
  std::size_t rows = 0;
  for (const auto& col : table.columns) {
    rows = std::max(rows, col.values.size());
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out << ',';
      const auto& vals = table.columns[c].values;
      if (r < vals.size()) out << format_value(vals[r]);
    }
    out << '\n';
  }
}

Column to_column(const CsvColumn& csv_column, const std::string& provenance) {
  Column col;
  col.name = csv_column.name;
  col.provenance = provenance;
  col.values.reserve(csv_column.values.size());
  for (double v : csv_column.values) {
    if (!std::isnan(v)) col.values.push_back(v);
  }
  if (col.values.empty()) {
    throw DataError("column '" + csv_column.name + "' is empty");
  }
  return col;
}

} // namespace kdi
