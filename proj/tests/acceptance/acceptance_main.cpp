// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "structctl/bench.hpp"
#include "structctl/digraph.hpp"
#include "structctl/io.hpp"
#include "structctl/oracle.hpp"
#include "structctl/placement.hpp"

namespace {

using namespace structctl;
using Clock = std::chrono::steady_clock;

// Pinned thresholds.
constexpr double kGoldenBudgetMs = 10.0;
constexpr std::size_t kEquivalenceInstances = 5000;
constexpr std::size_t kEquivalenceMinN = 2;
constexpr std::size_t kEquivalenceMaxN = 8;
constexpr double kDensityLow = 0.05;
constexpr double kDensityHigh = 1.0;
constexpr double kEquivalenceBudgetSeconds = 300.0;
constexpr std::size_t kConfigSetInstances = 1000;
constexpr std::size_t kConfigSetMaxN = 6;
constexpr std::size_t kStronglyConnectedInstances = 500;
constexpr std::size_t kStronglyConnectedMaxN = 8;
constexpr std::size_t kDecompositionInstances = 1000;
constexpr std::size_t kExhaustiveStemMaxN = 5;
constexpr std::size_t kDualityInstances = 500;
constexpr std::size_t kBenchDegree = 5;
constexpr std::size_t kBenchSizes[] = {1000, 10000, 50000};
constexpr double kBenchBudgetSeconds = 60.0;
constexpr double kMaxScalingExponent = 2.0;
constexpr std::size_t kNumericInstances = 200;
constexpr std::size_t kNumericMaxN = 10;
constexpr std::size_t kNumericTrials = 5;
constexpr std::size_t kEnumerationLimit = 1000000;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("AC%d %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::vector<Vertex>> states_of(const std::vector<InputConfiguration>& configs) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& c : configs) out.push_back(c.states);
  return out;
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

const std::filesystem::path kData = STRUCTCTL_TEST_DATA;

void golden_summary() {
  const auto start = Clock::now();
  const auto parsed = parse_pattern(kData / "six_agent.el", PatternFormat::kEdgeList);
  const auto summary = min_dedicated_inputs(build_digraph(parsed.pattern));
  const double ms = seconds_since(start) * 1e3;
  const bool values = summary.m == 2 && summary.beta == 2 && summary.alpha == 1 && summary.p == 3;
  report(1, values && ms < kGoldenBudgetMs,
         fmt("six-agent example: m=%zu beta=%zu alpha=%zu p=%zu (expected 2 2 1 3), parse+analyze %.3f ms "
             "(limit %.0f ms)",
             summary.m, summary.beta, summary.alpha, summary.p, ms, kGoldenBudgetMs));
}

void golden_partitions() {
  const auto g = build_digraph(testing::six_agent());
  const auto summary = min_dedicated_inputs(g);
  const auto parts = natural_partitions(g, summary);
  // 0-based gamma indices.
  const std::vector<std::vector<Vertex>> thetas{{0, 1, 2, 4}, {4, 5}, {0, 1}};
  const auto listed = enumerate_configurations(g, summary, parts, 100);
  const std::vector<std::vector<Vertex>> configs{{0, 1, 4}, {0, 1, 5}};
  bool matrices = listed.configurations.size() == 2;
  if (matrices) {
    matrices = emit_input_matrix(listed.configurations[0], 6) ==
                   testing::pattern_1based(6, 3, {{1, 1}, {2, 2}, {5, 3}}) &&
               emit_input_matrix(listed.configurations[1], 6) ==
                   testing::pattern_1based(6, 3, {{1, 1}, {2, 2}, {6, 3}});
  }
  const bool ok = parts.thetas == thetas && states_of(listed.configurations) == configs && !listed.truncated &&
                  matrices;
  report(2, ok,
         fmt("partitions %s, configurations %s, input matrices %s",
             parts.thetas == thetas ? "match {1,2,3,5} {5,6} {1,2}" : "DIFFER",
             states_of(listed.configurations) == configs ? "exactly {1,2,5} {1,2,6}" : "DIFFER",
             matrices ? "match entry-for-entry" : "DIFFER"));
}

void minimum_equivalence() {
  Rng rng(20231);
  const auto start = Clock::now();
  std::size_t agree = 0;
  for (std::size_t k = 0; k < kEquivalenceInstances; ++k) {
    const std::size_t n = kEquivalenceMinN + k % (kEquivalenceMaxN - kEquivalenceMinN + 1);
    const double density = testing::sweep_density(k / 7, kEquivalenceInstances / 7, kDensityLow, kDensityHigh);
    const auto a = testing::random_pattern(rng, n, density);
    const auto p = min_dedicated_inputs(build_digraph(a)).p;
    if (p == oracle::brute_force_minimum(a).minimum) {
      ++agree;
    } else {
      std::printf("  mismatch: n=%zu density=%.2f fast p=%zu\n", n, density, p);
    }
  }
  const double elapsed = seconds_since(start);
  report(3, agree == kEquivalenceInstances && elapsed < kEquivalenceBudgetSeconds,
         fmt("%zu/%zu random digraphs (n %zu-%zu, density %.2f-%.2f) give p equal to brute force, %.1f s "
             "(limit %.0f s)",
             agree, kEquivalenceInstances, kEquivalenceMinN, kEquivalenceMaxN, kDensityLow, kDensityHigh,
             elapsed, kEquivalenceBudgetSeconds));
}

void configuration_equivalence() {
  Rng rng(20232);
  std::size_t agree = 0;
  std::size_t rejections = 0;
  std::size_t total_configs = 0;
  for (std::size_t k = 0; k < kConfigSetInstances; ++k) {
    const std::size_t n = 2 + k % (kConfigSetMaxN - 1);
    const auto a = testing::random_pattern(rng, n, testing::sweep_density(k / 5, kConfigSetInstances / 5));
    const auto g = build_digraph(a);
    const auto summary = min_dedicated_inputs(g);
    const auto listed = enumerate_configurations(g, summary, natural_partitions(g, summary), kEnumerationLimit);
    const auto expected = oracle::brute_force_minimum(a).configurations;
    rejections += listed.oracle_rejections;
    total_configs += expected.size();
    std::vector<std::vector<Vertex>> expected_sets(expected.begin(), expected.end());
    if (!listed.truncated && states_of(listed.configurations) == expected_sets) ++agree;
  }
  report(4, agree == kConfigSetInstances,
         fmt("%zu/%zu random digraphs (n 2-%zu) enumerate exactly the brute-force minimum sets "
             "(%zu configurations in total, %zu oracle-filter rejections)",
             agree, kConfigSetInstances, kConfigSetMaxN, total_configs, rejections));
}

void strongly_connected_shortcut() {
  Rng rng(20233);
  std::size_t agree = 0;
  std::size_t perfect = 0;
  for (std::size_t k = 0; k < kStronglyConnectedInstances; ++k) {
    const std::size_t n = 1 + k % kStronglyConnectedMaxN;
    const auto a = testing::random_strongly_connected(
        rng, n, testing::sweep_density(k / 8, kStronglyConnectedInstances / 8, 0.0, 0.3));
    const auto g = build_digraph(a);
    const std::size_t matched = testing::kuhn_matching_size(to_state_bipartite(g));
    const std::size_t expected = matched == n ? 1 : n - matched;
    perfect += matched == n;
    const auto p = min_dedicated_inputs(g).p;
    if (p == expected && p == oracle::brute_force_minimum(a).minimum) ++agree;
  }
  report(5, agree == kStronglyConnectedInstances,
         fmt("%zu/%zu strongly connected digraphs (n <= %zu; %zu with a perfect matching) have p = 1 if "
             "perfectly matched else m, confirmed by brute force",
             agree, kStronglyConnectedInstances, kStronglyConnectedMaxN, perfect));
}

void decompositions() {
  Rng rng(20234);
  std::size_t valid = 0;
  std::size_t exhaustive = 0;
  std::size_t minimal = 0;
  for (std::size_t k = 0; k < kDecompositionInstances; ++k) {
    const std::size_t n = 1 + k % 8;
    const auto g = build_digraph(testing::random_pattern(rng, n, testing::sweep_density(k / 8, kDecompositionInstances / 8, 0.05, 0.8)));
    const auto m = maximum_matching(to_state_bipartite(g));
    const auto d = stem_cycle_decomposition(g, m);
    std::vector<int> seen(n, 0);
    bool edges_ok = true;
    for (const auto& s : d.stems) {
      for (std::size_t i = 0; i + 1 < s.size(); ++i) edges_ok = edges_ok && g.has_edge(s[i], s[i + 1]);
      for (Vertex v : s) ++seen[v];
    }
    for (const auto& c : d.cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) edges_ok = edges_ok && g.has_edge(c[i], c[(i + 1) % c.size()]);
      for (Vertex v : c) ++seen[v];
    }
    std::vector<Vertex> roots;
    for (const auto& s : d.stems) roots.push_back(s.front());
    std::sort(roots.begin(), roots.end());
    const bool spanning = std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
    if (edges_ok && spanning && roots == m.right_unmatched()) ++valid;
    if (n <= kExhaustiveStemMaxN) {
      ++exhaustive;
      if (testing::exhaustive_min_stems(g) >= d.stems.size()) ++minimal;
    }
  }
  report(6, valid == kDecompositionInstances && minimal == exhaustive,
         fmt("%zu/%zu decompositions disjoint, spanning, rooted at the right-unmatched states; "
             "%zu/%zu with n <= %zu have no decomposition with fewer stems",
             valid, kDecompositionInstances, minimal, exhaustive, kExhaustiveStemMaxN));
}

void duality() {
  Rng rng(20235);
  std::size_t agree = 0;
  for (std::size_t k = 0; k < kDualityInstances; ++k) {
    const std::size_t n = 1 + k % 7;
    const auto a = testing::random_pattern(rng, n, testing::sweep_density(k / 7, kDualityInstances / 7));
    const auto design = design_outputs(a);
    const auto gt = build_digraph(a.transposed());
    const auto direct = min_dedicated_inputs(gt);
    const auto direct_parts = natural_partitions(gt, direct);
    const auto via_outputs = enumerate_configurations(gt, design.summary, design.partitions, kEnumerationLimit);
    const auto via_inputs = enumerate_configurations(gt, direct, direct_parts, kEnumerationLimit);
    const bool same_p = design.summary.p == direct.p;
    const bool same_sets = via_outputs.configurations == via_inputs.configurations;
    const bool same_pick = design.sensors == generate_configuration(gt, direct, direct_parts);
    const bool observable = oracle::is_structurally_observable(a, design.output_matrix).controllable;
    const bool shape = design.output_matrix.n_rows() == design.summary.p && design.output_matrix.n_cols() == n;
    if (same_p && same_sets && same_pick && observable && shape) ++agree;
  }
  report(7, agree == kDualityInstances,
         fmt("%zu/%zu instances: output design equals the input design on the transpose (p, configuration "
             "sets) and passes the observability oracle",
             agree, kDualityInstances));
}

void scaling() {
  const auto result = run_bench(kBenchSizes, static_cast<double>(kBenchDegree), 7);
  const auto& largest = result.rows.back();
  std::string table;
  for (const auto& row : result.rows) table += fmt(" n=%zu:%.4fs", row.n, row.seconds);
  report(8, largest.seconds < kBenchBudgetSeconds && result.exponent <= kMaxScalingExponent,
         fmt("Erdos-Renyi degree %zu,%s; fitted exponent %.2f (limit %.1f), n=%zu under %.0f s",
             kBenchDegree, table.c_str(), result.exponent, kMaxScalingExponent, largest.n, kBenchBudgetSeconds));
}

void numeric_cross_check() {
  Rng rng(20236);
  std::size_t determinate = 0;
  std::size_t agree = 0;
  std::size_t controllable = 0;
  for (std::size_t k = 0; k < kNumericInstances; ++k) {
    const std::size_t n = 1 + k % kNumericMaxN;
    const auto a = testing::random_pattern(rng, n, testing::sweep_density(k / 10, kNumericInstances / 10, 0.05, 0.7));
    std::vector<Index> inputs;
    if (k % 2 == 0) {
      const auto g = build_digraph(a);
      const auto summary = min_dedicated_inputs(g);
      inputs = generate_configuration(g, summary, natural_partitions(g, summary)).states;
      if (k % 4 == 0 && !inputs.empty()) inputs.pop_back();  // one short of the minimum
    } else {
      for (Index v = 0; v < n; ++v) {
        if (rng.bernoulli(0.3)) inputs.push_back(v);
      }
    }
    const auto b = oracle::dedicated_input_pattern(n, inputs);
    const bool verdict = oracle::is_structurally_controllable(a, b).controllable;
    controllable += verdict;
    const auto numeric = oracle::numeric_rank_check(a, b, kNumericTrials, 5000 + k);
    if (numeric.indeterminate) continue;
    ++determinate;
    if ((numeric.rank == n) == verdict) ++agree;
  }
  report(9, agree == determinate && determinate > 0,
         fmt("%zu/%zu determinate instances agree (n <= %zu, %zu trials, %zu indeterminate, %zu controllable); "
             "residual tolerance max(n, n*p)*eps, ambiguous below %.0e",
             agree, determinate, kNumericMaxN, kNumericTrials, kNumericInstances - determinate, controllable,
             oracle::kAmbiguousResidual));
}

}  // namespace

int main() {
  golden_summary();
  golden_partitions();
  minimum_equivalence();
  configuration_equivalence();
  strongly_connected_shortcut();
  decompositions();
  duality();
  scaling();
  numeric_cross_check();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
