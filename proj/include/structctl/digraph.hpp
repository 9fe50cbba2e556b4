#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "structctl/pattern.hpp"

namespace structctl {

using Vertex = Index;
using SccId = Index;

/// Directed graph over the state variables of a structured system.
///
/// An edge u -> v means state u directly influences state v. Self-loops are
/// allowed; parallel edges are not.
class SystemDigraph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  SystemDigraph() = default;
  SystemDigraph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Successors of `v`, ascending.
  std::span<const Vertex> out(Vertex v) const { return out_[v]; }
  /// Predecessors of `v`, ascending.
  std::span<const Vertex> in(Vertex v) const { return in_[v]; }

  bool has_edge(Vertex from, Vertex to) const;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t edge_count_ = 0;
};

/// SCC partition and its quotient DAG.
///
/// SCC ids are assigned in ascending order of each component's smallest
/// vertex, so ids are stable across runs.
struct Condensation {
  std::vector<SccId> scc_of;
  std::vector<std::vector<Vertex>> scc_members;  // each list ascending
  std::vector<std::pair<SccId, SccId>> dag_edges;
  std::vector<SccId> non_top_linked;  // ascending; SCCs with no incoming DAG edge

  std::size_t scc_count() const noexcept { return scc_members.size(); }
  std::size_t beta() const noexcept { return non_top_linked.size(); }
  bool is_non_top_linked(SccId id) const;
};

/// Digraph of a square pattern: A(i, j) != 0 gives the edge j -> i
/// (state j influences the derivative of state i). Throws ShapeError if the
/// pattern is not square.
SystemDigraph build_digraph(const StructPattern& pattern);

/// Inverse of build_digraph.
StructPattern to_pattern(const SystemDigraph& g);

/// Tarjan's algorithm (iterative), O(|V| + |E|).
Condensation strongly_connected_components(const SystemDigraph& g);

/// All vertices on a directed path from some source, sources included.
/// Throws std::out_of_range for a source outside the graph.
std::vector<Vertex> reachable_from(const SystemDigraph& g, std::span<const Vertex> sources);

}  // namespace structctl
