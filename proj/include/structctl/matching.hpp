#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "structctl/digraph.hpp"

namespace structctl {

inline constexpr Vertex kUnmatched = std::numeric_limits<Vertex>::max();

/// Bipartite graph B(S1, S2, E) with edges directed left -> right.
class BipartiteGraph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  BipartiteGraph() = default;
  BipartiteGraph(std::size_t left_size, std::size_t right_size, std::vector<Edge> edges);

  std::size_t left_size() const noexcept { return adj_.size(); }
  std::size_t right_size() const noexcept { return right_size_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Right neighbours of a left vertex, ascending.
  std::span<const Vertex> adjacent(Vertex left) const { return adj_[left]; }
  /// Left neighbours of a right vertex, ascending.
  std::span<const Vertex> adjacent_to_right(Vertex right) const { return radj_[right]; }

  bool has_edge(Vertex left, Vertex right) const;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<Vertex>> radj_;
  std::size_t right_size_ = 0;
  std::size_t edge_count_ = 0;
};

/// A set of vertex-disjoint bipartite edges.
class Matching {
 public:
  Matching() = default;
  Matching(std::size_t left_size, std::size_t right_size)
      : right_of_(left_size, kUnmatched), left_of_(right_size, kUnmatched) {}

  /// Builds a matching from explicit pairs. Throws std::invalid_argument if
  /// two pairs share an endpoint or an index is out of range.
  static Matching from_pairs(std::size_t left_size, std::size_t right_size,
                             std::span<const BipartiteGraph::Edge> pairs);

  std::size_t size() const noexcept { return size_; }
  Vertex right_of(Vertex left) const { return right_of_[left]; }
  Vertex left_of(Vertex right) const { return left_of_[right]; }
  bool is_right_matched(Vertex right) const { return left_of_[right] != kUnmatched; }

  /// Matched pairs ordered by left vertex.
  std::vector<BipartiteGraph::Edge> pairs() const;
  /// Right vertices covered by no pair, ascending.
  std::vector<Vertex> right_unmatched() const;

  void match(Vertex left, Vertex right);
  void unmatch_right(Vertex right);

  std::size_t left_size() const noexcept { return right_of_.size(); }
  std::size_t right_size() const noexcept { return left_of_.size(); }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Vertex> right_of_;
  std::vector<Vertex> left_of_;
  std::size_t size_ = 0;
};

/// Stems and cycles traced by the matched edges of a state matching.
struct StemCycleDecomposition {
  std::vector<std::vector<Vertex>> stems;   // first vertex is the root
  std::vector<std::vector<Vertex>> cycles;  // starts at the smallest vertex
};

/// B(X, X, E_XX): left and right copies of the states, (u, v) for u -> v.
BipartiteGraph to_state_bipartite(const SystemDigraph& g);

/// Hopcroft-Karp. Free left vertices and adjacency lists are scanned in
/// ascending order, so the result is deterministic.
Matching maximum_matching(const BipartiteGraph& bg);

/// Hopcroft-Karp started from `seed` and restricted to the graph without the
/// in-edges of every right vertex flagged in `blocked` (may be empty). Seed
/// pairs that end in a blocked vertex are dropped first. Augmenting never
/// uncovers a covered right vertex.
Matching maximum_matching(const BipartiteGraph& bg, const Matching& seed,
                          const std::vector<bool>& blocked = {});

/// Maximum matching of B(S1, S2, E \ {(., v)}): `v` is right-unmatched in the
/// result. Compare its size against |M*| to decide if `v` can be a stem root.
Matching force_unmatched(const BipartiteGraph& bg, Vertex v);

/// Multi-vertex form: every vertex in `vs` loses its in-edges. When `seed` is
/// given (a maximum matching of bg) it is reused as a warm start.
Matching force_unmatched(const BipartiteGraph& bg, std::span<const Vertex> vs,
                         const Matching* seed = nullptr);

/// {e} united with a maximum matching of the graph without e's endpoints.
/// Throws std::invalid_argument if e is not an edge.
Matching force_edge(const BipartiteGraph& bg, BipartiteGraph::Edge e);

/// Right vertices reachable from `starts` by alternating paths
/// r0 <- l1 -> m(l1) <- l2 -> m(l2) ... with respect to `m`.
///
/// If `m` is maximum and every start is right-unmatched, a right vertex x is
/// reached from start v exactly when swapping v for x (v becomes covered,
/// x uncovered, other unmatched vertices untouched) gives another maximum
/// matching. Starts are included in the result.
std::vector<bool> alternating_reach(const BipartiteGraph& bg, const Matching& m,
                                    std::span<const Vertex> starts);

/// Follows matched edges into stems (rooted at right-unmatched vertices) and
/// cycles. Throws std::invalid_argument if a pair is not a digraph edge.
StemCycleDecomposition stem_cycle_decomposition(const SystemDigraph& g, const Matching& m);

}  // namespace structctl
