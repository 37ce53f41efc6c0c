#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace retrodict {

/// 17 significant digits, so every double round-trips. Non-finite values are
/// written as "inf", "-inf" and "nan".
std::string format_number(double value);

/// Parse a number written by format_number (also accepts "infinity").
double parse_number(std::string_view text);

/// Minimal CSV emitter: header once, then rows of already formatted fields.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);
  std::size_t columns() const noexcept { return columns_; }

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace retrodict
