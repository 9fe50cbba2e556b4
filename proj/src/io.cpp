#include "structctl/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace structctl {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::optional<std::size_t> to_count(std::string_view token) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::size_t require_count(std::string_view token, std::size_t line) {
  const auto value = to_count(token);
  if (!value) throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  return *value;
}

struct RawEntry {
  std::size_t row;  // 1-based
  std::size_t col;
  std::size_t line;
};

// Checks ranges, converts to 0-based and drops duplicates with a warning.
ParsedPattern assemble(std::size_t rows, std::size_t cols, const std::vector<RawEntry>& raw) {
  ParsedPattern result;
  std::vector<StructPattern::Entry> entries;
  entries.reserve(raw.size());
  std::vector<StructPattern::Entry> seen;
  for (const auto& e : raw) {
    if (e.row == 0 || e.col == 0 || e.row > rows || e.col > cols) {
      throw ParseError(e.line, "index (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                                   ") outside a " + std::to_string(rows) + "x" +
                                   std::to_string(cols) + " pattern (indices are 1-based)");
    }
    entries.emplace_back(static_cast<Index>(e.row - 1), static_cast<Index>(e.col - 1));
  }
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return entries[a] < entries[b]; });
  std::vector<StructPattern::Entry> unique;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& e = entries[order[k]];
    if (!unique.empty() && unique.back() == e) {
      result.warnings.push_back("line " + std::to_string(raw[order[k]].line) +
                                ": duplicate entry (" + std::to_string(e.first + 1) + ", " +
                                std::to_string(e.second + 1) + ") ignored");
      continue;
    }
    unique.push_back(e);
  }
  result.pattern = StructPattern(rows, cols, std::move(unique));
  return result;
}

void infer_shape(const std::vector<RawEntry>& raw, const ParseOptions& options, std::size_t& rows,
                 std::size_t& cols) {
  std::size_t max_row = 0;
  std::size_t max_col = 0;
  for (const auto& e : raw) {
    max_row = std::max(max_row, e.row);
    max_col = std::max(max_col, e.col);
  }
  if (options.square) {
    rows = cols = std::max({max_row, max_col, options.rows.value_or(0)});
  } else {
    rows = options.rows.value_or(max_row);
    cols = max_col;
  }
}

ParsedPattern parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::optional<std::size_t> rows;
  std::optional<std::size_t> cols;
  std::vector<RawEntry> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == '#' || tokens[0][0] == '%') continue;
    if (tokens[0] == "n") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'n N'");
      rows = cols = require_count(tokens[1], line_no);
      continue;
    }
    if (tokens[0] == "dims") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'dims ROWS COLS'");
      rows = require_count(tokens[1], line_no);
      cols = require_count(tokens[2], line_no);
      continue;
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'i j', got '" + std::string(line) + "'");
    raw.push_back({require_count(tokens[0], line_no), require_count(tokens[1], line_no), line_no});
  }
  std::size_t r = 0;
  std::size_t c = 0;
  if (rows) {
    r = *rows;
    c = *cols;
  } else {
    infer_shape(raw, options, r, c);
  }
  return assemble(r, c, raw);
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

ParsedPattern parse_json(std::string_view text, const ParseOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_of_byte(text, e.byte), std::string("invalid JSON: ") + e.what());
  }
  try {
    std::vector<RawEntry> raw;
    for (const auto& pair : doc.at("nonzeros")) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError(0, "nonzeros must hold [i, j] pairs");
      raw.push_back({pair[0].get<std::size_t>(), pair[1].get<std::size_t>(), 0});
    }
    std::size_t r = 0;
    std::size_t c = 0;
    if (doc.contains("n")) {
      r = c = doc["n"].get<std::size_t>();
    } else if (doc.contains("n_rows") && doc.contains("n_cols")) {
      r = doc["n_rows"].get<std::size_t>();
      c = doc["n_cols"].get<std::size_t>();
    } else {
      infer_shape(raw, options, r, c);
    }
    return assemble(r, c, raw);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed pattern JSON: ") + e.what());
  }
}

ParsedPattern parse_mtx(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  bool symmetric = false;
  std::optional<std::size_t> rows, cols, nnz;
  std::vector<RawEntry> raw;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (!header_seen) {
      if (tokens.size() < 5 || tokens[0] != "%%MatrixMarket" || tokens[1] != "matrix" ||
          tokens[2] != "coordinate") {
        throw ParseError(line_no, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'");
      }
      symmetric = tokens[4] == "symmetric" || tokens[4] == "skew-symmetric" || tokens[4] == "hermitian";
      header_seen = true;
      continue;
    }
    if (tokens.empty() || tokens[0][0] == '%') continue;
    if (!rows) {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'ROWS COLS NNZ'");
      rows = require_count(tokens[0], line_no);
      cols = require_count(tokens[1], line_no);
      nnz = require_count(tokens[2], line_no);
      continue;
    }
    if (tokens.size() < 2) throw ParseError(line_no, "expected 'i j [value]'");
    const std::size_t i = require_count(tokens[0], line_no);
    const std::size_t j = require_count(tokens[1], line_no);
    raw.push_back({i, j, line_no});
    if (symmetric && i != j) raw.push_back({j, i, line_no});
  }
  if (!header_seen) throw ParseError(0, "empty Matrix Market file");
  if (!rows) throw ParseError(line_no, "missing size line");
  const std::size_t stored = symmetric ? static_cast<std::size_t>(std::count_if(
                                             raw.begin(), raw.end(),
                                             [](const RawEntry& e) { return e.row >= e.col; }))
                                       : raw.size();
  if (stored != *nnz) {
    throw ParseError(0, "size line declares " + std::to_string(*nnz) + " entries, found " +
                            std::to_string(stored));
  }
  return assemble(*rows, *cols, raw);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

ParsedPattern parse_pattern_text(std::string_view text, PatternFormat format,
                                 const ParseOptions& options) {
  switch (format) {
    case PatternFormat::kEdgeList:
      return parse_edge_list(text, options);
    case PatternFormat::kPatternJson:
      return parse_json(text, options);
    case PatternFormat::kMatrixMarket:
      return parse_mtx(text);
  }
  throw std::invalid_argument("unknown pattern format");
}

ParsedPattern parse_pattern(const std::filesystem::path& path, PatternFormat format,
                            const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_pattern_text(buffer.str(), format, options);
}

std::string write_pattern(const StructPattern& pattern, PatternFormat format,
                          std::string_view comment) {
  std::ostringstream out;
  auto comment_lines = [&](std::string_view prefix) {
    std::size_t pos = 0;
    while (!comment.empty() && pos <= comment.size()) {
      const std::size_t end = std::min(comment.find('\n', pos), comment.size());
      out << prefix << comment.substr(pos, end - pos) << '\n';
      pos = end + 1;
    }
  };
  switch (format) {
    case PatternFormat::kEdgeList:
      comment_lines("# ");
      if (pattern.is_square()) {
        out << "n " << pattern.n_rows() << '\n';
      } else {
        out << "dims " << pattern.n_rows() << ' ' << pattern.n_cols() << '\n';
      }
      for (const auto& [r, c] : pattern.nonzeros()) out << r + 1 << ' ' << c + 1 << '\n';
      break;
    case PatternFormat::kPatternJson: {
      nlohmann::json doc;
      if (!comment.empty()) doc["comment"] = std::string(comment);
      doc["n_rows"] = pattern.n_rows();
      doc["n_cols"] = pattern.n_cols();
      doc["nonzeros"] = nlohmann::json::array();
      for (const auto& [r, c] : pattern.nonzeros()) doc["nonzeros"].push_back({r + 1, c + 1});
      out << doc.dump(2) << '\n';
      break;
    }
    case PatternFormat::kMatrixMarket:
      out << "%%MatrixMarket matrix coordinate pattern general\n";
      comment_lines("% ");
      out << pattern.n_rows() << ' ' << pattern.n_cols() << ' ' << pattern.nnz() << '\n';
      for (const auto& [r, c] : pattern.nonzeros()) out << r + 1 << ' ' << c + 1 << '\n';
      break;
  }
  return out.str();
}

PatternFormat format_from_name(std::string_view name) {
  if (name == "edgelist") return PatternFormat::kEdgeList;
  if (name == "pattern-json") return PatternFormat::kPatternJson;
  if (name == "mtx-pattern") return PatternFormat::kMatrixMarket;
  throw std::invalid_argument("unknown pattern format '" + std::string(name) +
                              "' (expected edgelist, pattern-json or mtx-pattern)");
}

std::string_view format_name(PatternFormat format) {
  switch (format) {
    case PatternFormat::kEdgeList:
      return "edgelist";
    case PatternFormat::kPatternJson:
      return "pattern-json";
    case PatternFormat::kMatrixMarket:
      return "mtx-pattern";
  }
  return "edgelist";
}

PatternFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") return PatternFormat::kPatternJson;
  if (ext == ".mtx") return PatternFormat::kMatrixMarket;
  return PatternFormat::kEdgeList;
}

}  // namespace structctl
