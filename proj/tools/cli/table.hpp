#pragma once

#include <string>
#include <variant>
#include <vector>

namespace retrodict::cli {

using Cell = std::variant<double, std::string>;

/// Rows of numbers and strings rendered as CSV or as a JSON array of objects.
/// Numbers use 17 significant digits; non-finite numbers become "inf",
/// "-inf" or "nan" (quoted in JSON).
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add(std::vector<Cell> row);
  std::size_t size() const noexcept { return rows_.size(); }

  std::string csv() const;
  std::string json() const;
  std::string render(const std::string& format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace retrodict::cli
