#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace minionlab {

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double>;

enum class TableFormat { Csv, Json };

/// Column-labelled result table; CSV rows or a JSON array of one object per
/// row.  Doubles print with 17 significant digits in both formats.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  void write(std::ostream& out, TableFormat format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_cell(const Cell& cell);

}  // namespace minionlab
