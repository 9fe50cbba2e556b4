#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "structctl/oracle.hpp"
#include "structctl/pattern.hpp"
#include "structctl/placement.hpp"

namespace structctl {

inline constexpr const char* kReportSchema = "structctl.report";
inline constexpr int kReportVersion = 1;

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

/// Everything one CLI invocation computed. State labels are 0-based here and
/// 1-based in the rendered output.
struct AnalysisReport {
  std::string command;
  std::string mode = "inputs";  // "outputs" when computed on the transposed system
  std::size_t n = 0;
  std::size_t edge_count = 0;
  std::size_t scc_count = 0;
  std::optional<PlacementSummary> summary;
  std::optional<PartitionSet> partitions;
  std::optional<InputConfiguration> configuration;
  std::optional<std::vector<InputConfiguration>> configurations;
  std::size_t limit = 0;
  bool truncated = false;
  std::vector<StructPattern> emitted;  // B (n x p) or C (p x n) patterns
  std::optional<OracleVerdict> verdict;
  std::optional<NumericRank> numeric;
  std::vector<StageTiming> timings;
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const AnalysisReport& report, bool include_timings = true);
std::string to_text(const AnalysisReport& report);

/// "{1, 2, 5}" for 0-based states {0, 1, 4}.
std::string format_states(const std::vector<Vertex>& states);

}  // namespace structctl
