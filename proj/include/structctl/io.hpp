#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "structctl/pattern.hpp"

namespace structctl {

/// On-disk pattern formats. All of them use 1-based indices.
///
///   edgelist      "i j" per line: entry (i, j) is nonzero. Lines starting
///                 with '#' or '%' are comments. Optional header lines
///                 "n N" (N x N) or "dims R C"; without one the shape is
///                 inferred from the largest indices.
///   pattern-json  {"n_rows": R, "n_cols": C, "nonzeros": [[i, j], ...]};
///                 "n" may replace n_rows/n_cols for square patterns.
///   mtx-pattern   Matrix Market coordinate files; values are ignored and
///                 symmetric storage is expanded.
enum class PatternFormat { kEdgeList, kPatternJson, kMatrixMarket };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  /// 1-based line of the offending input, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ParseOptions {
  bool square = true;                 // infer N x N when no shape is declared
  std::optional<std::size_t> rows;    // row count to use when none is declared
};

struct ParsedPattern {
  StructPattern pattern;
  std::vector<std::string> warnings;  // e.g. duplicate entries that were dropped
};

ParsedPattern parse_pattern_text(std::string_view text, PatternFormat format,
                                 const ParseOptions& options = {});
ParsedPattern parse_pattern(const std::filesystem::path& path, PatternFormat format,
                            const ParseOptions& options = {});

/// `comment` lines (may be multi-line) become a provenance header where the
/// format allows one; pattern-json stores it under "comment".
std::string write_pattern(const StructPattern& pattern, PatternFormat format,
                          std::string_view comment = {});

/// "edgelist", "pattern-json" or "mtx-pattern"; throws std::invalid_argument.
PatternFormat format_from_name(std::string_view name);
std::string_view format_name(PatternFormat format);
/// By extension: .json, .mtx, anything else is an edge list.
PatternFormat format_from_path(const std::filesystem::path& path);

}  // namespace structctl
