#include "structctl/report.hpp"

#include <sstream>

namespace structctl {

namespace {

nlohmann::json one_based(const std::vector<Vertex>& states) {
  auto out = nlohmann::json::array();
  for (Vertex v : states) out.push_back(v + 1);
  return out;
}

nlohmann::json pattern_json(const StructPattern& pattern) {
  nlohmann::json doc;
  doc["n_rows"] = pattern.n_rows();
  doc["n_cols"] = pattern.n_cols();
  doc["nonzeros"] = nlohmann::json::array();
  for (const auto& [r, c] : pattern.nonzeros()) doc["nonzeros"].push_back({r + 1, c + 1});
  return doc;
}

void write_matrix(std::ostringstream& out, const StructPattern& pattern) {
  for (std::size_t r = 0; r < pattern.n_rows(); ++r) {
    out << "  ";
    for (std::size_t c = 0; c < pattern.n_cols(); ++c) {
      out << (pattern.contains(static_cast<Index>(r), static_cast<Index>(c)) ? '*' : '0');
      if (c + 1 < pattern.n_cols()) out << ' ';
    }
    out << '\n';
  }
}

}  // namespace

std::string format_states(const std::vector<Vertex>& states) {
  std::string out = "{";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(states[i] + 1);
  }
  return out + "}";
}

nlohmann::json to_json(const AnalysisReport& report, bool include_timings) {
  nlohmann::json doc;
  doc["schema"] = kReportSchema;
  doc["version"] = kReportVersion;
  doc["command"] = report.command;
  doc["mode"] = report.mode;
  doc["instance"] = {{"n", report.n}, {"edges", report.edge_count}, {"sccs", report.scc_count}};
  if (report.summary) {
    const auto& s = *report.summary;
    auto non_top = nlohmann::json::array();
    for (SccId id : s.condensation.non_top_linked) non_top.push_back(one_based(s.condensation.scc_members[id]));
    doc["summary"] = {{"m", s.m},
                      {"beta", s.beta},
                      {"alpha", s.alpha},
                      {"p", s.p},
                      {"matching_size", s.matching_size},
                      {"unmatched", one_based(s.witness_matching.right_unmatched())},
                      {"assignable", one_based(s.assignable_vertices)},
                      {"non_top_linked_sccs", non_top}};
  }
  if (report.partitions) {
    auto thetas = nlohmann::json::array();
    for (const auto& theta : report.partitions->thetas) thetas.push_back(one_based(theta));
    doc["partitions"] = {{"thetas", thetas}, {"split", report.partitions->split}};
  }
  if (report.configuration) doc["configuration"] = one_based(report.configuration->states);
  if (report.configurations) {
    auto list = nlohmann::json::array();
    for (const auto& c : *report.configurations) list.push_back(one_based(c.states));
    doc["configurations"] = {{"count", report.configurations->size()},
                             {"limit", report.limit},
                             {"truncated", report.truncated},
                             {"items", list}};
  }
  if (!report.emitted.empty()) {
    auto list = nlohmann::json::array();
    for (const auto& pattern : report.emitted) list.push_back(pattern_json(pattern));
    doc[report.mode == "outputs" ? "output_matrices" : "input_matrices"] = list;
  }
  if (report.verdict) {
    doc["verdict"] = {{"controllable", report.verdict->controllable},
                      {"accessibility", report.verdict->accessibility_ok},
                      {"dilation_free", report.verdict->dilation_free}};
  }
  if (report.numeric) {
    doc["numeric_rank"] = {{"rank", report.numeric->rank},
                           {"indeterminate", report.numeric->indeterminate},
                           {"determinate_trials", report.numeric->determinate_trials}};
  }
  if (!report.warnings.empty()) doc["warnings"] = report.warnings;
  if (include_timings) {
    auto timings = nlohmann::json::object();
    for (const auto& t : report.timings) timings[t.stage] = t.milliseconds;
    doc["timings_ms"] = timings;
  }
  return doc;
}

std::string to_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "n=" << report.n << " edges=" << report.edge_count << " sccs=" << report.scc_count << '\n';
  if (report.summary) {
    const auto& s = *report.summary;
    out << "m=" << s.m << " beta=" << s.beta << " alpha=" << s.alpha << " p=" << s.p << '\n';
  }
  if (report.partitions) {
    const auto& thetas = report.partitions->thetas;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      out << "Theta" << k + 1 << " = " << format_states(thetas[k]) << '\n';
    }
  }
  const char* role = report.mode == "outputs" ? "sensors" : "inputs";
  if (report.configuration) out << role << ": " << format_states(report.configuration->states) << '\n';
  if (report.configurations) {
    out << "configurations (" << report.configurations->size() << "):\n";
    for (const auto& c : *report.configurations) out << "  " << format_states(c.states) << '\n';
    if (report.truncated) {
      out << "warning: enumeration stopped at the limit of " << report.limit
          << "; more configurations exist\n";
    }
  }
  for (const auto& pattern : report.emitted) {
    out << (report.mode == "outputs" ? "C" : "B") << " (" << pattern.n_rows() << "x"
        << pattern.n_cols() << "):\n";
    write_matrix(out, pattern);
  }
  if (report.verdict) {
    const auto& v = *report.verdict;
    out << "controllable: " << (v.controllable ? "true" : "false") << '\n';
    out << "accessibility: " << (v.accessibility_ok ? "true" : "false") << '\n';
    out << "dilation-free: " << (v.dilation_free ? "true" : "false") << '\n';
  }
  if (report.numeric) {
    out << "numeric rank: ";
    if (report.numeric->indeterminate) {
      out << "indeterminate\n";
    } else {
      out << report.numeric->rank << " of " << report.n << '\n';
    }
  }
  return out.str();
}

}  // namespace structctl
