#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace structctl {

struct BenchRow {
  std::size_t n = 0;
  std::size_t edges = 0;
  double seconds = 0.0;  // median analyze time (digraph build through p)
  std::size_t repeats = 0;
  std::size_t m = 0;
  std::size_t beta = 0;
  std::size_t alpha = 0;
  std::size_t p = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double exponent = 0.0;  // least-squares slope of log(seconds) against log(n)
};

/// Times the analysis on Erdos-Renyi instances with expected average
/// out-degree `average_degree`. Small sizes are repeated until they have run
/// for `min_seconds` in total. Throws std::invalid_argument on empty sizes or
/// a size below 2.
BenchResult run_bench(std::span<const std::size_t> sizes, double average_degree,
                      std::uint64_t seed, double min_seconds = 0.2);

/// Slope of the least-squares line through (log x, log y); needs two
/// distinct x values.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace structctl
