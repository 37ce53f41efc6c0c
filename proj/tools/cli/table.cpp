#include "table.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "retrodict/errors.hpp"
#include "retrodict/format.hpp"

namespace retrodict::cli {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw InputError("table row has the wrong number of cells");
  rows_.push_back(std::move(row));
}

std::string Table::csv() const {
  std::ostringstream out;
  CsvWriter writer(out, columns_);
  for (const auto& row : rows_) {
    std::vector<std::string> fields;
    for (const auto& cell : row) {
      fields.push_back(std::holds_alternative<double>(cell) ? format_number(std::get<double>(cell))
                                                            : std::get<std::string>(cell));
    }
    writer.row(fields);
  }
  return out.str();
}

std::string Table::json() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      out << (c ? ", " : "") << nlohmann::json(columns_[c]).dump() << ": ";
      const auto& cell = rows_[r][c];
      if (const auto* v = std::get_if<double>(&cell)) {
        out << (std::isfinite(*v) ? format_number(*v) : "\"" + format_number(*v) + "\"");
      } else {
        out << nlohmann::json(std::get<std::string>(cell)).dump();
      }
    }
    out << "}";
  }
  out << (rows_.empty() ? "]\n" : "\n]\n");
  return out.str();
}

std::string Table::render(const std::string& format) const { return format == "json" ? json() : csv(); }

}  // namespace retrodict::cli
