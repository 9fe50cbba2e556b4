#include "structctl/pattern.hpp"

#include <algorithm>

namespace structctl {

namespace {

void check_range(std::size_t n_rows, std::size_t n_cols,
                 const std::vector<StructPattern::Entry>& nonzeros) {
  for (const auto& [r, c] : nonzeros) {
    if (r >= n_rows || c >= n_cols) {
      throw std::out_of_range("pattern entry (" + std::to_string(r) + ", " + std::to_string(c) +
                              ") outside " + std::to_string(n_rows) + "x" +
                              std::to_string(n_cols));
    }
  }
}

}  // namespace

StructPattern::StructPattern(std::size_t n_rows, std::size_t n_cols, std::vector<Entry> nonzeros)
    : n_rows_(n_rows), n_cols_(n_cols), nonzeros_(std::move(nonzeros)) {
  check_range(n_rows_, n_cols_, nonzeros_);
  std::sort(nonzeros_.begin(), nonzeros_.end());
  const auto dup = std::adjacent_find(nonzeros_.begin(), nonzeros_.end());
  if (dup != nonzeros_.end()) {
    throw std::invalid_argument("duplicate pattern entry (" + std::to_string(dup->first) + ", " +
                                std::to_string(dup->second) + ")");
  }
}

StructPattern StructPattern::deduplicated(std::size_t n_rows, std::size_t n_cols,
                                          std::vector<Entry> nonzeros) {
  std::sort(nonzeros.begin(), nonzeros.end());
  nonzeros.erase(std::unique(nonzeros.begin(), nonzeros.end()), nonzeros.end());
  return StructPattern(n_rows, n_cols, std::move(nonzeros));
}

StructPattern StructPattern::identity(std::size_t n) {
  std::vector<Entry> diag;
  diag.reserve(n);
  for (Index i = 0; i < n; ++i) diag.emplace_back(i, i);
  return StructPattern(n, n, std::move(diag));
}

bool StructPattern::contains(Index row, Index col) const {
  return std::binary_search(nonzeros_.begin(), nonzeros_.end(), Entry{row, col});
}

StructPattern StructPattern::transposed() const {
  std::vector<Entry> flipped;
  flipped.reserve(nonzeros_.size());
  for (const auto& [r, c] : nonzeros_) flipped.emplace_back(c, r);
  return StructPattern(n_cols_, n_rows_, std::move(flipped));
}

}  // namespace structctl
