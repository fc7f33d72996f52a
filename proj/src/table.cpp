#include "minionlab/table.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace minionlab {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("Table: row width must match the column count");
  rows_.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
  char buf[64];
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(*i));
    return buf;
  }
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) {
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(*u));
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(cell));
  return buf;
}

namespace {

void write_json_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out << '\\';
    out << c;
  }
  out << '"';
}

}  // namespace

void Table::write(std::ostream& out, TableFormat format) const {
  if (format == TableFormat::Csv) {
    for (std::size_t c = 0; c < columns_.size(); ++c)
      out << (c == 0 ? "" : ",") << columns_[c];
    out << "\n";
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << (c == 0 ? "" : ",") << format_cell(row[c]);
      out << "\n";
    }
    return;
  }
  out << "[\n";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << "  {";
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c != 0) out << ", ";
      write_json_string(out, columns_[c]);
      out << ": ";
      if (std::holds_alternative<std::string>(rows_[r][c]))
        write_json_string(out, std::get<std::string>(rows_[r][c]));
      else
        out << format_cell(rows_[r][c]);
    }
    out << (r + 1 == rows_.size() ? "}\n" : "},\n");
  }
  out << "]\n";
}

}  // namespace minionlab
