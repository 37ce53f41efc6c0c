#include "retrodict/json_parse.hpp"

#include <algorithm>
#include <string>

#include "retrodict/errors.hpp"

namespace retrodict {

std::pair<std::size_t, std::size_t> locate_offset(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte counts from 1 and points at the byte that broke the parse.
    const auto [line, column] = locate_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string("invalid JSON: ") + e.what(), line, column);
  }
}

}  // namespace retrodict
