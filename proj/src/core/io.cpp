#include "retrodict/core/io.hpp"

#include <fstream>
#include <sstream>

#include "retrodict/errors.hpp"
#include "retrodict/format.hpp"
#include "retrodict/json_parse.hpp"

namespace retrodict::core {

namespace {

using nlohmann::json;

struct CsvLine {
  std::size_t number = 0;  // 1-based line in the file
  std::vector<std::string> fields;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Splits non-empty, non-comment lines into trimmed comma-separated fields.
std::vector<CsvLine> split_csv(std::string_view text) {
  std::vector<CsvLine> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const auto raw = text.substr(start, end - start);
    const auto content = trim(raw);
    if (!content.empty() && content.front() != '#') {
      CsvLine line{number, {}};
      std::size_t f = 0;
      while (true) {
        const auto comma = raw.find(',', f);
        line.fields.push_back(trim(raw.substr(f, comma == std::string_view::npos ? std::string_view::npos : comma - f)));
        if (comma == std::string_view::npos) break;
        f = comma + 1;
      }
      lines.push_back(std::move(line));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

double csv_number(const CsvLine& line, std::size_t field) {
  try {
    const double v = parse_number(line.fields[field]);
    if (!std::isfinite(v)) throw InputError("non-finite probability");
    return v;
  } catch (const InputError& e) {
    throw ParseError(e.what(), line.number, field + 1);
  }
}

// Rows of numbers under a header of target labels.
struct CsvTable {
  Labels target;
  Labels source;  // empty when rows carry no labels
  std::vector<std::vector<double>> rows;
};

CsvTable parse_table(std::string_view text) {
  const auto lines = split_csv(text);
  if (lines.empty()) throw ParseError("empty file: expected a header row of state labels", 1, 1);
  const auto& header = lines.front();
  CsvTable table;
  const bool labelled_rows = header.fields.front().empty() || header.fields.front() == "source";
  table.target.assign(header.fields.begin() + (labelled_rows ? 1 : 0), header.fields.end());
  if (table.target.empty()) throw ParseError("header row lists no state labels", header.number, 1);
  for (std::size_t i = 0; i < table.target.size(); ++i) {
    if (table.target[i].empty()) throw ParseError("empty state label", header.number, i + 1 + (labelled_rows ? 1 : 0));
  }
  const std::size_t offset = labelled_rows ? 1 : 0;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.fields.size() != table.target.size() + offset) {
      throw ParseError("expected " + std::to_string(table.target.size() + offset) + " fields, found " +
                           std::to_string(line.fields.size()),
                       line.number, std::min(line.fields.size(), table.target.size() + offset) + 1);
    }
    if (labelled_rows) table.source.push_back(line.fields.front());
    std::vector<double> row;
    for (std::size_t f = offset; f < line.fields.size(); ++f) row.push_back(csv_number(line, f));
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw ParseError("no probability rows after the header", header.number + 1, 1);
  return table;
}

Labels json_labels(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) throw ParseError(std::string("missing array '") + key + "'", 0, 0);
  Labels out;
  for (const auto& v : doc[key]) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number()) {
      out.push_back(v.dump());
    } else {
      throw ParseError(std::string("'") + key + "' must hold strings", 0, 0);
    }
  }
  return out;
}

std::vector<double> json_row(const json& row, std::size_t index) {
  if (!row.is_array()) throw ParseError("row " + std::to_string(index) + " is not an array", 0, 0);
  std::vector<double> out;
  for (const auto& v : row) {
    if (!v.is_number()) throw ParseError("row " + std::to_string(index) + " holds a non-number", 0, 0);
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return Matrix(rows.size(), cols, std::move(flat));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_json(const std::filesystem::path& path) { return path.extension() == ".json"; }

void write_labels(std::ostream& out, const Labels& labels) {
  out << '[';
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : "") << json(labels[i]).dump();
  out << ']';
}

void write_row(std::ostream& out, std::span<const double> row) {
  out << '[';
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ", " : "") << format_number(row[i]);
  out << ']';
}

}  // namespace

TransitionKernel parse_kernel_csv(std::string_view text) {
  auto table = parse_table(text);
  const std::size_t n_target = table.target.size();
  Labels source = table.source;
  if (source.empty()) source = table.rows.size() == n_target ? table.target : index_labels(table.rows.size());
  try {
    return TransitionKernel(std::move(source), std::move(table.target), to_matrix(table.rows, n_target));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

TransitionKernel parse_kernel_json(std::string_view text) {
  const auto doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("kernel JSON must be an object", 1, 1);
  auto target = json_labels(doc, "labels");
  if (!doc.contains("rows") || !doc["rows"].is_array()) throw ParseError("missing array 'rows'", 0, 0);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
    rows.push_back(json_row(doc["rows"][i], i));
    if (rows.back().size() != target.size()) {
      throw ParseError("row " + std::to_string(i) + " has " + std::to_string(rows.back().size()) +
                           " entries for " + std::to_string(target.size()) + " labels",
                       0, 0);
    }
  }
  if (rows.empty()) throw ParseError("kernel has no rows", 0, 0);
  Labels source;
  if (doc.contains("source_labels")) {
    source = json_labels(doc, "source_labels");
  } else {
    source = rows.size() == target.size() ? target : index_labels(rows.size());
  }
  std::optional<double> elapsed;
  if (doc.contains("elapsed_time") && doc["elapsed_time"].is_number()) elapsed = doc["elapsed_time"].get<double>();
  const auto cols = target.size();
  try {
    return TransitionKernel(std::move(source), std::move(target), to_matrix(rows, cols), elapsed);
  } catch (const InputError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

DiscreteDistribution parse_distribution_csv(std::string_view text) {
  auto table = parse_table(text);
  if (table.rows.size() != 1) throw ParseError("a distribution file holds exactly one row of probabilities", 0, 0);
  try {
    return DiscreteDistribution(std::move(table.target), std::move(table.rows.front()));
  } catch (const InputError& e) {
    throw ParseError(e.what(), 2, 1);
  }
}

DiscreteDistribution parse_distribution_json(std::string_view text) {
  const auto doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("distribution JSON must be an object", 1, 1);
  auto labels = json_labels(doc, "labels");
  std::vector<double> mass;
  if (doc.contains("mass")) {
    mass = json_row(doc["mass"], 0);
  } else if (doc.contains("rows") && doc["rows"].is_array() && doc["rows"].size() == 1) {
    mass = json_row(doc["rows"][0], 0);
  } else {
    throw ParseError("distribution JSON needs 'mass' or a single entry in 'rows'", 0, 0);
  }
  try {
    return DiscreteDistribution(std::move(labels), std::move(mass));
  } catch (const InputError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

TransitionKernel load_kernel(const std::filesystem::path& path) {
  const auto text = read_file(path);
  return is_json(path) ? parse_kernel_json(text) : parse_kernel_csv(text);
}

DiscreteDistribution load_distribution(const std::filesystem::path& path) {
  const auto text = read_file(path);
  return is_json(path) ? parse_distribution_json(text) : parse_distribution_csv(text);
}

std::string report_to_json(const EntropyReport& report) {
  std::ostringstream out;
  auto field = [&out](std::string_view key, double value, bool last = false) {
    out << "  \"" << key << "\": ";
    if (std::isfinite(value)) {
      out << format_number(value);
    } else {
      out << '"' << format_number(value) << '"';
    }
    out << (last ? "\n" : ",\n");
  };
  out << "{\n";
  field("s0", report.s0());
  field("st", report.st());
  field("avg_st", report.avg_st());
  field("avg_sr", report.avg_sr());
  field("mutual_info", report.mutual_info());
  const auto entries = report.kl_family().entries();
  for (std::size_t i = 0; i < entries.size(); ++i) field(entries[i].first, entries[i].second, i + 1 == entries.size());
  out << "}\n";
  return out.str();
}

void write_kernel_json(std::ostream& out, const TransitionKernel& kernel) {
  out << "{\n  \"source_labels\": ";
  write_labels(out, kernel.source_labels());
  out << ",\n  \"labels\": ";
  write_labels(out, kernel.target_labels());
  out << ",\n  \"rows\": [\n";
  for (std::size_t a = 0; a < kernel.source_size(); ++a) {
    out << "    ";
    write_row(out, kernel.row(a));
    out << (a + 1 < kernel.source_size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
}

void write_distribution_json(std::ostream& out, const DiscreteDistribution& p) {
  out << "{\n  \"labels\": ";
  write_labels(out, p.labels());
  out << ",\n  \"mass\": ";
  write_row(out, p.mass());
  out << "\n}\n";
}

}  // namespace retrodict::core
