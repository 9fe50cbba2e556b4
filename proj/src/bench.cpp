#include "structctl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "structctl/digraph.hpp"
#include "structctl/generate.hpp"
#include "structctl/placement.hpp"

namespace structctl {

BenchResult run_bench(std::span<const std::size_t> sizes, double average_degree,
                      std::uint64_t seed, double min_seconds) {
  if (sizes.empty()) throw std::invalid_argument("bench: no sizes given");
  if (!(average_degree > 0.0)) throw std::invalid_argument("bench: degree must be positive");
  using Clock = std::chrono::steady_clock;
  BenchResult result;
  for (std::size_t n : sizes) {
    if (n < 2) throw std::invalid_argument("bench: sizes must be at least 2");
    GenParams params;
    params.model = RandomModel::kErdos;
    params.n = n;
    params.p_edge = std::min(1.0, average_degree / static_cast<double>(n));
    params.seed = seed + n;
    const auto pattern = gen_random(params).pattern;

    BenchRow row;
    row.n = n;
    row.edges = pattern.nnz();
    std::vector<double> samples;
    double total = 0.0;
    do {
      const auto start = Clock::now();
      const auto g = build_digraph(pattern);
      const auto summary = min_dedicated_inputs(g);
      const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
      samples.push_back(elapsed);
      total += elapsed;
      row.m = summary.m;
      row.beta = summary.beta;
      row.alpha = summary.alpha;
      row.p = summary.p;
    } while (total < min_seconds && samples.size() < 1000);
    std::sort(samples.begin(), samples.end());
    row.seconds = samples[samples.size() / 2];
    row.repeats = samples.size();
    result.rows.push_back(row);
  }
  if (result.rows.size() >= 2) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : result.rows) {
      xs.push_back(static_cast<double>(row.n));
      ys.push_back(std::max(row.seconds, 1e-9));
    }
    result.exponent = fit_loglog_slope(xs, ys);
  }
  return result;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope: need two or more paired samples");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += std::log(x[i]);
    mean_y += std::log(y[i]);
  }
  mean_x /= static_cast<double>(x.size());
  mean_y /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mean_x;
    sxy += dx * (std::log(y[i]) - mean_y);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: x values must differ");
  return sxy / sxx;
}

}  // namespace structctl
