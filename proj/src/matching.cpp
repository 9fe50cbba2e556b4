#include "structctl/matching.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace structctl {

BipartiteGraph::BipartiteGraph(std::size_t left_size, std::size_t right_size,
                               std::vector<Edge> edges)
    : adj_(left_size), radj_(right_size), right_size_(right_size) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [l, r] : edges) {
    if (l >= left_size || r >= right_size) {
      throw std::out_of_range("bipartite edge (" + std::to_string(l) + ", " + std::to_string(r) +
                              ") out of range");
    }
    adj_[l].push_back(r);
    radj_[r].push_back(l);
  }
  edge_count_ = edges.size();
}

bool BipartiteGraph::has_edge(Vertex left, Vertex right) const {
  if (left >= adj_.size()) return false;
  return std::binary_search(adj_[left].begin(), adj_[left].end(), right);
}

std::vector<BipartiteGraph::Edge> BipartiteGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (Vertex l = 0; l < adj_.size(); ++l) {
    for (Vertex r : adj_[l]) result.emplace_back(l, r);
  }
  return result;
}

Matching Matching::from_pairs(std::size_t left_size, std::size_t right_size,
                              std::span<const BipartiteGraph::Edge> pairs) {
  Matching m(left_size, right_size);
  for (const auto& [l, r] : pairs) {
    if (l >= left_size || r >= right_size) {
      throw std::invalid_argument("matched pair out of range");
    }
    if (m.right_of_[l] != kUnmatched || m.left_of_[r] != kUnmatched) {
      throw std::invalid_argument("matched pairs share a vertex at (" + std::to_string(l) + ", " +
                                  std::to_string(r) + ")");
    }
    m.match(l, r);
  }
  return m;
}

std::vector<BipartiteGraph::Edge> Matching::pairs() const {
  std::vector<BipartiteGraph::Edge> result;
  result.reserve(size_);
  for (Vertex l = 0; l < right_of_.size(); ++l) {
    if (right_of_[l] != kUnmatched) result.emplace_back(l, right_of_[l]);
  }
  return result;
}

std::vector<Vertex> Matching::right_unmatched() const {
  std::vector<Vertex> result;
  for (Vertex r = 0; r < left_of_.size(); ++r) {
    if (left_of_[r] == kUnmatched) result.push_back(r);
  }
  return result;
}

void Matching::match(Vertex left, Vertex right) {
  if (right_of_[left] != kUnmatched) {
    left_of_[right_of_[left]] = kUnmatched;
    --size_;
  }
  if (left_of_[right] != kUnmatched) {
    right_of_[left_of_[right]] = kUnmatched;
    --size_;
  }
  right_of_[left] = right;
  left_of_[right] = left;
  ++size_;
}

void Matching::unmatch_right(Vertex right) {
  const Vertex left = left_of_[right];
  if (left == kUnmatched) return;
  right_of_[left] = kUnmatched;
  left_of_[right] = kUnmatched;
  --size_;
}

BipartiteGraph to_state_bipartite(const SystemDigraph& g) {
  return BipartiteGraph(g.size(), g.size(), g.edges());
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
 public:
  HopcroftKarp(const BipartiteGraph& bg, Matching& m, const std::vector<bool>& blocked)
      : bg_(bg), m_(m), blocked_(blocked), dist_(bg.left_size()), next_(bg.left_size()) {}

  void run() {
    while (layer()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (Vertex u = 0; u < bg_.left_size(); ++u) {
        if (m_.right_of(u) == kUnmatched && dist_[u] == 0) augment_from(u);
      }
    }
  }

 private:
  bool is_blocked(Vertex r) const { return !blocked_.empty() && blocked_[r]; }

  // BFS layering from the free left vertices; returns whether a free right
  // vertex is reachable.
  bool layer() {
    std::deque<Vertex> queue;
    for (Vertex u = 0; u < bg_.left_size(); ++u) {
      if (m_.right_of(u) == kUnmatched) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    free_dist_ = kInf;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      if (dist_[u] >= free_dist_) continue;
      for (Vertex r : bg_.adjacent(u)) {
        if (is_blocked(r)) continue;
        const Vertex w = m_.left_of(r);
        if (w == kUnmatched) {
          free_dist_ = std::min(free_dist_, dist_[u] + 1);
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return free_dist_ != kInf;
  }

  // Iterative DFS along the layered graph.
  bool augment_from(Vertex root) {
    path_.clear();
    path_.push_back(root);
    while (!path_.empty()) {
      const Vertex u = path_.back();
      const auto adj = bg_.adjacent(u);
      if (next_[u] == adj.size()) {
        dist_[u] = kInf;
        path_.pop_back();
        continue;
      }
      const Vertex r = adj[next_[u]];
      if (is_blocked(r)) {
        ++next_[u];
        continue;
      }
      const Vertex w = m_.left_of(r);
      if (w == kUnmatched) {
        if (dist_[u] + 1 == free_dist_) {
          for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
            m_.match(*it, bg_.adjacent(*it)[next_[*it]]);
          }
          return true;
        }
        ++next_[u];
      } else if (dist_[w] == dist_[u] + 1) {
        path_.push_back(w);
      } else {
        ++next_[u];
      }
    }
    return false;
  }

  const BipartiteGraph& bg_;
  Matching& m_;
  const std::vector<bool>& blocked_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_;
  std::vector<Vertex> path_;
  std::size_t free_dist_ = kInf;
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& bg) {
  return maximum_matching(bg, Matching(bg.left_size(), bg.right_size()));
}

Matching maximum_matching(const BipartiteGraph& bg, const Matching& seed,
                          const std::vector<bool>& blocked) {
  if (seed.left_size() != bg.left_size() || seed.right_size() != bg.right_size()) {
    throw std::invalid_argument("seed matching does not fit the bipartite graph");
  }
  if (!blocked.empty() && blocked.size() != bg.right_size()) {
    throw std::invalid_argument("blocked mask must cover every right vertex");
  }
  Matching m = seed;
  for (const auto& [l, r] : seed.pairs()) {
    if (!bg.has_edge(l, r)) throw std::invalid_argument("seed pair is not a graph edge");
    if (!blocked.empty() && blocked[r]) m.unmatch_right(r);
  }
  HopcroftKarp(bg, m, blocked).run();
  return m;
}

Matching force_unmatched(const BipartiteGraph& bg, Vertex v) {
  const Vertex vs[] = {v};
  return force_unmatched(bg, vs);
}

Matching force_unmatched(const BipartiteGraph& bg, std::span<const Vertex> vs,
                         const Matching* seed) {
  std::vector<bool> blocked(bg.right_size(), false);
  for (Vertex v : vs) {
    if (v >= bg.right_size()) {
      throw std::out_of_range("right vertex " + std::to_string(v) + " out of range");
    }
    blocked[v] = true;
  }
  if (seed != nullptr) return maximum_matching(bg, *seed, blocked);
  return maximum_matching(bg, Matching(bg.left_size(), bg.right_size()), blocked);
}

Matching force_edge(const BipartiteGraph& bg, BipartiteGraph::Edge e) {
  const auto [el, er] = e;
  if (!bg.has_edge(el, er)) {
    throw std::invalid_argument("(" + std::to_string(el) + ", " + std::to_string(er) +
                                ") is not an edge of the bipartite graph");
  }
  std::vector<BipartiteGraph::Edge> reduced;
  for (const auto& [l, r] : bg.edges()) {
    if (l != el && r != er) reduced.emplace_back(l, r);
  }
  Matching m = maximum_matching(BipartiteGraph(bg.left_size(), bg.right_size(), std::move(reduced)));
  m.match(el, er);
  return m;
}

std::vector<bool> alternating_reach(const BipartiteGraph& bg, const Matching& m,
                                    std::span<const Vertex> starts) {
  std::vector<bool> reached(bg.right_size(), false);
  std::vector<bool> left_seen(bg.left_size(), false);
  std::vector<Vertex> frontier;
  for (Vertex s : starts) {
    if (!reached[s]) {
      reached[s] = true;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    const Vertex r = frontier.back();
    frontier.pop_back();
    for (Vertex l : bg.adjacent_to_right(r)) {
      if (left_seen[l]) continue;
      left_seen[l] = true;
      const Vertex next = m.right_of(l);
      if (next != kUnmatched && !reached[next]) {
        reached[next] = true;
        frontier.push_back(next);
      }
    }
  }
  return reached;
}

StemCycleDecomposition stem_cycle_decomposition(const SystemDigraph& g, const Matching& m) {
  const std::size_t n = g.size();
  if (m.left_size() != n || m.right_size() != n) {
    throw std::invalid_argument("matching does not fit the digraph");
  }
  for (const auto& [u, v] : m.pairs()) {
    if (!g.has_edge(u, v)) {
      throw std::invalid_argument("matched pair (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ") is not a digraph edge");
    }
  }

  StemCycleDecomposition result;
  std::vector<bool> used(n, false);
  for (Vertex root = 0; root < n; ++root) {
    if (m.is_right_matched(root)) continue;
    std::vector<Vertex> stem;
    for (Vertex v = root; v != kUnmatched; v = m.right_of(v)) {
      used[v] = true;
      stem.push_back(v);
    }
    result.stems.push_back(std::move(stem));
  }
  // Every remaining vertex has a matched predecessor and successor.
  for (Vertex start = 0; start < n; ++start) {
    if (used[start]) continue;
    std::vector<Vertex> cycle;
    Vertex v = start;
    do {
      used[v] = true;
      cycle.push_back(v);
      v = m.right_of(v);
    } while (v != start);
    result.cycles.push_back(std::move(cycle));
  }
  return result;
}

}  // namespace structctl
