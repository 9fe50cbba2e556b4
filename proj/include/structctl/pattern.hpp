#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace structctl {

using Index = std::uint32_t;

/// Raised when a matrix pattern has the wrong shape for an operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Zero/non-zero pattern of a (possibly rectangular) matrix.
///
/// Entries are zero-based (row, col) pairs, kept sorted row-major and
/// free of duplicates. A pattern is immutable once built.
class StructPattern {
 public:
  using Entry = std::pair<Index, Index>;

  StructPattern() = default;

  /// Throws std::out_of_range for an index outside the shape and
  /// std::invalid_argument for a repeated entry.
  StructPattern(std::size_t n_rows, std::size_t n_cols, std::vector<Entry> nonzeros);

  /// Same as the constructor but silently drops repeated entries.
  static StructPattern deduplicated(std::size_t n_rows, std::size_t n_cols,
                                    std::vector<Entry> nonzeros);

  static StructPattern identity(std::size_t n);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  bool is_square() const noexcept { return n_rows_ == n_cols_; }
  const std::vector<Entry>& nonzeros() const noexcept { return nonzeros_; }
  std::size_t nnz() const noexcept { return nonzeros_.size(); }

  bool contains(Index row, Index col) const;

  StructPattern transposed() const;

  friend bool operator==(const StructPattern&, const StructPattern&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<Entry> nonzeros_;
};

}  // namespace structctl
