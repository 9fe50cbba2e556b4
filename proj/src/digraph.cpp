#include "structctl/digraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace structctl {

SystemDigraph::SystemDigraph(std::size_t n, std::vector<Edge> edges) : out_(n), in_(n) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::out_of_range("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") outside a graph of " + std::to_string(n) + " vertices");
    }
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  // `edges` was sorted by (from, to), so out_ lists are ascending; in_ lists
  // are filled in ascending `from` order as well.
  edge_count_ = edges.size();
}

bool SystemDigraph::has_edge(Vertex from, Vertex to) const {
  if (from >= size() || to >= size()) return false;
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::vector<SystemDigraph::Edge> SystemDigraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : out_[u]) result.emplace_back(u, v);
  }
  return result;
}

bool Condensation::is_non_top_linked(SccId id) const {
  return std::binary_search(non_top_linked.begin(), non_top_linked.end(), id);
}

SystemDigraph build_digraph(const StructPattern& pattern) {
  if (!pattern.is_square()) {
    throw ShapeError("system pattern must be square, got " + std::to_string(pattern.n_rows()) +
                     "x" + std::to_string(pattern.n_cols()));
  }
  std::vector<SystemDigraph::Edge> edges;
  edges.reserve(pattern.nnz());
  for (const auto& [row, col] : pattern.nonzeros()) edges.emplace_back(col, row);
  return SystemDigraph(pattern.n_rows(), std::move(edges));
}

StructPattern to_pattern(const SystemDigraph& g) {
  std::vector<StructPattern::Entry> entries;
  entries.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) entries.emplace_back(v, u);
  return StructPattern(g.size(), g.size(), std::move(entries));
}

Condensation strongly_connected_components(const SystemDigraph& g) {
  constexpr Index kUnvisited = std::numeric_limits<Index>::max();
  const std::size_t n = g.size();

  std::vector<Index> order(n, kUnvisited);
  std::vector<Index> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<Index> raw_component(n, kUnvisited);
  Index next_order = 0;
  Index raw_count = 0;

  struct Frame {
    Vertex v;
    std::size_t next_child;
  };
  std::vector<Frame> call_stack;

  for (Vertex root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    call_stack.push_back({root, 0});
    order[root] = low[root] = next_order++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const auto succ = g.out(frame.v);
      if (frame.next_child < succ.size()) {
        const Vertex w = succ[frame.next_child++];
        if (order[w] == kUnvisited) {
          order[w] = low[w] = next_order++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          low[frame.v] = std::min(low[frame.v], order[w]);
        }
        continue;
      }
      const Vertex v = frame.v;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const Vertex parent = call_stack.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == order[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_component[w] = raw_count;
        } while (w != v);
        ++raw_count;
      }
    }
  }

  // Renumber by smallest member: scanning vertices in ascending order meets
  // each component first at its smallest vertex.
  Condensation cond;
  std::vector<SccId> renumber(raw_count, kUnvisited);
  cond.scc_of.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    Index& id = renumber[raw_component[v]];
    if (id == kUnvisited) {
      id = static_cast<SccId>(cond.scc_members.size());
      cond.scc_members.emplace_back();
    }
    cond.scc_of[v] = id;
    cond.scc_members[id].push_back(v);
  }

  std::vector<bool> has_incoming(cond.scc_members.size(), false);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.out(u)) {
      const SccId a = cond.scc_of[u];
      const SccId b = cond.scc_of[v];
      if (a != b) {
        cond.dag_edges.emplace_back(a, b);
        has_incoming[b] = true;
      }
    }
  }
  std::sort(cond.dag_edges.begin(), cond.dag_edges.end());
  cond.dag_edges.erase(std::unique(cond.dag_edges.begin(), cond.dag_edges.end()),
                       cond.dag_edges.end());
  for (SccId id = 0; id < cond.scc_members.size(); ++id) {
    if (!has_incoming[id]) cond.non_top_linked.push_back(id);
  }
  return cond;
}

std::vector<Vertex> reachable_from(const SystemDigraph& g, std::span<const Vertex> sources) {
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> frontier;
  for (Vertex s : sources) {
    if (s >= g.size()) {
      throw std::out_of_range("source vertex " + std::to_string(s) + " outside a graph of " +
                              std::to_string(g.size()) + " vertices");
    }
    if (!seen[s]) {
      seen[s] = true;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    const Vertex u = frontier.back();
    frontier.pop_back();
    for (Vertex v : g.out(u)) {
      if (!seen[v]) {
        seen[v] = true;
        frontier.push_back(v);
      }
    }
  }
  std::vector<Vertex> result;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (seen[v]) result.push_back(v);
  }
  return result;
}

}  // namespace structctl
