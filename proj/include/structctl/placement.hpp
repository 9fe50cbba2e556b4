#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "structctl/digraph.hpp"
#include "structctl/matching.hpp"
#include "structctl/pattern.hpp"

namespace structctl {

/// Right-unmatched vertices placed in non-top-linked SCCs, one per SCC, that
/// are simultaneously right-unmatched in `witness`.
struct AssignableSet {
  std::vector<Vertex> vertices;  // ascending by SCC id
  Matching witness;              // maximum matching leaving all of `vertices` unmatched
};

/// Pair (index into AssignableSet::vertices, index into Condensation::non_top_linked).
using AssignmentEdge = std::pair<std::size_t, std::size_t>;

struct PlacementSummary {
  std::size_t n = 0;
  std::size_t m = 0;      // right-unmatched count of any maximum matching
  std::size_t beta = 0;   // non-top-linked SCC count
  std::size_t alpha = 0;  // maximum assignability index
  std::size_t p = 0;      // minimum number of dedicated inputs, m + beta - alpha
  std::size_t matching_size = 0;
  Matching witness_matching;
  std::vector<Vertex> assignable_vertices;
  std::vector<AssignmentEdge> assignment_edges;
  Condensation condensation;
};

/// Per-slot candidate sets. Slots [0, split) replace one right-unmatched
/// vertex of the witness matching each; slots [split, p) cover non-top-linked
/// SCCs.
struct PartitionSet {
  std::vector<std::vector<Vertex>> thetas;
  std::size_t split = 0;
  std::vector<Vertex> slot_roots;  // the witness's right-unmatched vertex for each slot < split
};

/// Dedicated-input placement: a set of states, ascending.
struct InputConfiguration {
  std::vector<Vertex> states;
  friend auto operator<=>(const InputConfiguration&, const InputConfiguration&) = default;
};

enum class ChoicePhase {
  kAssignableScc,   // an unmatched-role state that hosts a new non-top SCC
  kSccCoverage,     // any state of a non-top SCC no earlier pick covers
  kUnmatchedSlot,   // a remaining unmatched-role state
};

struct ChoiceRound {
  ChoicePhase phase;
  std::size_t round;
  std::span<const Vertex> candidates;  // ascending, never empty
};

/// Picks one of the offered candidates.
using Chooser = std::function<Vertex(const ChoiceRound&)>;

Vertex lowest_index_chooser(const ChoiceRound& round);

struct EnumerationResult {
  std::vector<InputConfiguration> configurations;  // lexicographic
  bool truncated = false;
  std::size_t oracle_rejections = 0;  // expected to stay zero
};

/// Minimum dedicated inputs for structural controllability. Throws
/// std::invalid_argument on an empty graph.
PlacementSummary min_dedicated_inputs(const SystemDigraph& g);

/// Same, starting from a caller-supplied maximum matching of the state
/// bipartite graph. Throws std::invalid_argument if it is not maximum.
PlacementSummary min_dedicated_inputs(const SystemDigraph& g, const Matching& seed);

/// Finds, for as many non-top-linked SCCs as possible, a vertex that can be a
/// stem root without shrinking the maximum matching, all at once. `m0` must
/// be a maximum matching of the state bipartite graph.
AssignableSet assignable_unmatched_in_nontop(const SystemDigraph& g, const Condensation& cond,
                                             const Matching& m0);

/// (i, j) for every non-top SCC j holding a vertex w such that, with the
/// other assignable vertices pinned unmatched, w can be unmatched without
/// shrinking the maximum matching.
std::vector<AssignmentEdge> assignment_edges(const SystemDigraph& g, const Condensation& cond,
                                             const AssignableSet& assignable);

/// Maximum matching size of B(I_V, I_S, edges).
std::size_t max_assignability_index(std::span<const AssignmentEdge> edges, std::size_t v_count,
                                    std::size_t beta);

PartitionSet natural_partitions(const SystemDigraph& g, const PlacementSummary& summary);

/// Builds one minimal configuration. `chooser` is consulted once per pick and
/// must return one of the offered candidates (std::invalid_argument otherwise).
InputConfiguration generate_configuration(const SystemDigraph& g, const PlacementSummary& summary,
                                          const PartitionSet& partitions,
                                          const Chooser& chooser = lowest_index_chooser);

/// Lists distinct minimal configurations, up to `limit` of them.
EnumerationResult enumerate_configurations(const SystemDigraph& g,
                                           const PlacementSummary& summary,
                                           const PartitionSet& partitions, std::size_t limit);

/// n x p pattern, column k actuating the k-th state in ascending order.
StructPattern emit_input_matrix(const InputConfiguration& config, std::size_t n);

/// p x n pattern, row k measuring the k-th state in ascending order.
StructPattern emit_output_matrix(const InputConfiguration& config, std::size_t n);

struct OutputDesign {
  PlacementSummary summary;  // computed on the transposed system
  PartitionSet partitions;
  InputConfiguration sensors;
  StructPattern output_matrix;
};

/// Dedicated-output placement for structural observability, via the input
/// pipeline on the transposed pattern.
OutputDesign design_outputs(const StructPattern& pattern,
                            const Chooser& chooser = lowest_index_chooser);

}  // namespace structctl
