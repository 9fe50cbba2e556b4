#pragma once

// Shared instances, random generators and exhaustive reference routines.
// Everything here is deliberately naive so it can serve as an independent
// check on the library.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "structctl/digraph.hpp"
#include "structctl/matching.hpp"
#include "structctl/pattern.hpp"
#include "structctl/random.hpp"

namespace structctl::testing {

using Entries = std::vector<StructPattern::Entry>;

// 1-based (row, col) pairs to a pattern.
inline StructPattern pattern_1based(std::size_t rows, std::size_t cols,
                                    std::initializer_list<std::pair<int, int>> entries) {
  Entries zero_based;
  for (auto [r, c] : entries) zero_based.emplace_back(static_cast<Index>(r - 1), static_cast<Index>(c - 1));
  return StructPattern(rows, cols, zero_based);
}

// Six-agent synchronization example: gamma_1, gamma_2 self-looped leaders
// feeding a strongly connected block {3, 4, 5, 6}.
inline StructPattern six_agent() {
  return pattern_1based(6, 6, {{1, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 4}, {4, 3}, {4, 5}, {4, 6}, {5, 4}, {6, 4}});
}

// Digraph built from "u -> v" edges, 0-based.
inline SystemDigraph digraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
  return SystemDigraph(n, std::move(edges));
}

inline SystemDigraph path3() { return digraph(3, {{0, 1}, {1, 2}}); }
inline SystemDigraph star3() { return digraph(3, {{0, 1}, {0, 2}}); }
inline SystemDigraph self_loop() { return digraph(1, {{0, 0}}); }

// Independent Bernoulli(density) per cell, self-loops included.
inline StructPattern random_pattern(Rng& rng, std::size_t n, double density) {
  Entries entries;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (rng.bernoulli(density)) entries.emplace_back(i, j);
    }
  }
  return StructPattern(n, n, entries);
}

// Random ear decomposition: a cycle over a random prefix of a shuffled
// order (a lone vertex for length one), then ears u -> new ... new -> w
// between already placed vertices, then Bernoulli extras. Every strongly
// connected digraph can arise, including ones without a perfect matching.
inline StructPattern random_strongly_connected(Rng& rng, std::size_t n, double density) {
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::set<StructPattern::Entry> cells;
  auto link = [&](Index from, Index to) { cells.emplace(to, from); };  // pattern (row, col) = (to, from)
  std::size_t placed = 1 + rng.below(n);
  if (placed > 1) {
    for (std::size_t k = 0; k < placed; ++k) link(order[k], order[(k + 1) % placed]);
  }
  while (placed < n) {
    const std::size_t length = 1 + rng.below(n - placed);
    Index prev = order[rng.below(placed)];
    const Index end = order[rng.below(placed)];
    for (std::size_t k = 0; k < length; ++k) {
      link(prev, order[placed]);
      prev = order[placed++];
    }
    link(prev, end);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (rng.bernoulli(density)) cells.emplace(i, j);
    }
  }
  return StructPattern(n, n, Entries(cells.begin(), cells.end()));
}

// Density spread evenly over [lo, hi] by trial index.
inline double sweep_density(std::size_t trial, std::size_t trials, double lo = 0.05, double hi = 1.0) {
  if (trials <= 1) return hi;
  return lo + (hi - lo) * static_cast<double>(trial % trials) / static_cast<double>(trials - 1);
}

// Every matching of a bipartite graph (including the empty one).
inline std::vector<std::vector<BipartiteGraph::Edge>> all_matchings(const BipartiteGraph& bg) {
  std::vector<std::vector<BipartiteGraph::Edge>> out;
  std::vector<BipartiteGraph::Edge> current;
  std::vector<bool> used(bg.right_size(), false);
  std::function<void(Vertex)> recurse = [&](Vertex left) {
    if (left == bg.left_size()) {
      out.push_back(current);
      return;
    }
    recurse(left + 1);
    for (Vertex r : bg.adjacent(left)) {
      if (used[r]) continue;
      used[r] = true;
      current.emplace_back(left, r);
      recurse(left + 1);
      current.pop_back();
      used[r] = false;
    }
  };
  recurse(0);
  return out;
}

inline std::vector<std::vector<BipartiteGraph::Edge>> all_maximum_matchings(const BipartiteGraph& bg) {
  auto all = all_matchings(bg);
  std::size_t best = 0;
  for (const auto& m : all) best = std::max(best, m.size());
  std::erase_if(all, [&](const auto& m) { return m.size() != best; });
  return all;
}

inline std::size_t exhaustive_matching_size(const BipartiteGraph& bg) {
  std::size_t best = 0;
  for (const auto& m : all_matchings(bg)) best = std::max(best, m.size());
  return best;
}

// Kuhn's augmenting-path matching, used where exhaustive enumeration would
// be too slow.
inline std::size_t kuhn_matching_size(const BipartiteGraph& bg) {
  std::vector<Vertex> owner(bg.right_size(), kUnmatched);
  std::vector<bool> visited;
  std::function<bool(Vertex)> augment = [&](Vertex l) {
    for (Vertex r : bg.adjacent(l)) {
      if (visited[r]) continue;
      visited[r] = true;
      if (owner[r] == kUnmatched || augment(owner[r])) {
        owner[r] = l;
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (Vertex l = 0; l < bg.left_size(); ++l) {
    visited.assign(bg.right_size(), false);
    if (augment(l)) ++size;
  }
  return size;
}

// Right vertices uncovered by a pair list.
inline std::vector<Vertex> uncovered(std::size_t right_size, const std::vector<BipartiteGraph::Edge>& pairs) {
  std::vector<bool> covered(right_size, false);
  for (auto [l, r] : pairs) covered[r] = true;
  std::vector<Vertex> out;
  for (Vertex r = 0; r < right_size; ++r) {
    if (!covered[r]) out.push_back(r);
  }
  return out;
}

// Fewest stems over every spanning decomposition of g into vertex-disjoint
// stems and cycles. Such a decomposition is a choice of at most one
// in-neighbour per vertex with no in-neighbour chosen twice; vertices
// without a chosen in-neighbour start the stems.
inline std::size_t exhaustive_min_stems(const SystemDigraph& g) {
  const std::size_t n = g.size();
  std::size_t best = n;
  std::vector<bool> used_as_pred(n, false);
  std::function<void(Vertex, std::size_t)> recurse = [&](Vertex v, std::size_t roots) {
    if (roots >= best) return;
    if (v == n) {
      best = roots;
      return;
    }
    for (Vertex u : g.in(v)) {
      if (used_as_pred[u]) continue;
      used_as_pred[u] = true;
      recurse(v + 1, roots);
      used_as_pred[u] = false;
    }
    recurse(v + 1, roots + 1);
  };
  recurse(0, 0);
  return best;
}

// Transitive closure by repeated relaxation; reach[u][v] iff a path u ~> v
// of length >= 0 exists.
inline std::vector<std::vector<bool>> closure(const SystemDigraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Vertex v = 0; v < n; ++v) {
    reach[v][v] = true;
    for (Vertex w : g.out(v)) reach[v][w] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

// Naive structural controllability with dedicated inputs at `inputs`:
// transitive closure for accessibility, exhaustive matching for full
// generic rank of [A B].
inline bool naive_controllable(const SystemDigraph& g, const std::vector<Vertex>& inputs) {
  const std::size_t n = g.size();
  const auto reach = closure(g);
  for (Vertex v = 0; v < n; ++v) {
    bool hit = false;
    for (Vertex u : inputs) hit = hit || reach[u][v];
    if (!hit) return false;
  }
  std::vector<BipartiteGraph::Edge> edges = g.edges();
  for (std::size_t k = 0; k < inputs.size(); ++k) edges.emplace_back(static_cast<Vertex>(n + k), inputs[k]);
  const BipartiteGraph bg(n + inputs.size(), n, edges);
  return exhaustive_matching_size(bg) == n;
}

// Every k-subset of {0..n-1}, lexicographic.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<Vertex>&)>& visit) {
  std::vector<Vertex> subset(k);
  std::iota(subset.begin(), subset.end(), Vertex{0});
  if (k > n) return;
  while (true) {
    visit(subset);
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

// Minimum-cardinality feasible dedicated-input sets, via naive_controllable.
inline std::vector<std::vector<Vertex>> naive_minimum_sets(const SystemDigraph& g) {
  for (std::size_t k = 1; k <= g.size(); ++k) {
    std::vector<std::vector<Vertex>> found;
    for_each_subset(g.size(), k, [&](const std::vector<Vertex>& s) {
      if (naive_controllable(g, s)) found.push_back(s);
    });
    if (!found.empty()) return found;
  }
  return {};
}

}  // namespace structctl::testing
