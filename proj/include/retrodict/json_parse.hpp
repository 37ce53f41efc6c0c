#pragma once

#include <json.hpp>
#include <string_view>

namespace retrodict {

/// Parses a JSON document; syntax errors become ParseError with the 1-based
/// line and column of the offending byte.
nlohmann::json parse_json(std::string_view text);

/// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> locate_offset(std::string_view text, std::size_t byte);

}  // namespace retrodict
