#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kdi/transform.hpp"

namespace kdi {

//! One parsed CSV column. Non-numeric or empty cells are stored as NaN
//! and counted per column; callers decide whether to warn, drop, or fail.
struct CsvColumn {
  std::string name;
  std::vector<double> values;
  std::size_t nan_count = 0;
};

struct CsvTable {
  std::vector<CsvColumn> columns;
  std::size_t n_rows = 0;

  const CsvColumn& column(const std::string& name) const;  // DataError if absent
  bool has_column(const std::string& name) const;
};

//! Parse a headered CSV. Column order is preserved. Throws DataError for
//! a missing file, ragged rows, or (with a selector) a missing column.
CsvTable load_csv(const std::string& path);
CsvTable load_csv(const std::string& path, const std::vector<std::string>& selector);

//! Write columns as CSV with shortest round-trip number formatting, so
//! load_csv(write_csv(t)) reproduces the values bit-exactly.
void write_csv(const std::string& path, const CsvTable& table);

//! Convert to a Column for fitting, dropping NaN cells (count reported
//! via the CsvColumn). Throws DataError if no finite values remain.
Column to_column(const CsvColumn& csv_column, const std::string& provenance);

} // namespace kdi
