#include "structctl/placement.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "structctl/oracle.hpp"

namespace structctl {

namespace {

constexpr std::size_t kNotNonTop = std::numeric_limits<std::size_t>::max();

// SCC id -> position in cond.non_top_linked, or kNotNonTop.
std::vector<std::size_t> non_top_positions(const Condensation& cond) {
  std::vector<std::size_t> pos(cond.scc_count(), kNotNonTop);
  for (std::size_t j = 0; j < cond.non_top_linked.size(); ++j) pos[cond.non_top_linked[j]] = j;
  return pos;
}

std::vector<Vertex> non_top_vertices(const Condensation& cond) {
  std::vector<Vertex> result;
  for (SccId id : cond.non_top_linked) {
    const auto& members = cond.scc_members[id];
    result.insert(result.end(), members.begin(), members.end());
  }
  std::sort(result.begin(), result.end());
  return result;
}

// The state bipartite graph plus one slack left vertex per non-top SCC,
// joined to every member of that SCC. Slack vertex n + j belongs to
// cond.non_top_linked[j]; slacks of `hosted` SCCs get no edges, and
// `blocked` right vertices get no in-edges.
//
// For any state matching M, a maximum matching here has size
// max_M (|M| + number of non-top SCCs holding an M-unmatched vertex), and
// the maximum is reached by a maximum M, so the slack part counts how many
// further SCCs can host a stem root at once.
BipartiteGraph slack_graph(const SystemDigraph& g, const Condensation& cond,
                           const std::vector<bool>& hosted, const std::vector<bool>& blocked) {
  const std::size_t n = g.size();
  std::vector<BipartiteGraph::Edge> edges;
  edges.reserve(g.edge_count() + n);
  for (const auto& [u, v] : g.edges()) {
    if (blocked.empty() || !blocked[v]) edges.emplace_back(u, v);
  }
  for (std::size_t j = 0; j < cond.non_top_linked.size(); ++j) {
    if (!hosted.empty() && hosted[j]) continue;
    for (Vertex x : cond.scc_members[cond.non_top_linked[j]]) {
      if (blocked.empty() || !blocked[x]) edges.emplace_back(static_cast<Vertex>(n + j), x);
    }
  }
  return BipartiteGraph(n + cond.non_top_linked.size(), n, std::move(edges));
}

Matching widen_left(const Matching& state, std::size_t left_size) {
  Matching wide(left_size, state.right_size());
  for (const auto& [l, r] : state.pairs()) wide.match(l, r);
  return wide;
}

std::vector<bool> walk(const SystemDigraph& d, std::span<const Vertex> sources, bool forward) {
  std::vector<bool> seen(d.size(), false);
  std::vector<Vertex> stack;
  for (Vertex s : sources) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : forward ? d.out(v) : d.in(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// States x of an unhosted SCC that some maximum matching of `h` with a
// maximum state part joins to that SCC's slack vertex s. `f` is one such
// matching. In the alternating digraph of f (unmatched edges left -> right,
// matched edges right -> left), (s, x) can enter by flipping an alternating
// cycle through it, an even path from a free right vertex, or an even path
// from a free left vertex. A path from a free slack must end at a slack,
// otherwise the state part shrinks.
std::vector<Vertex> slack_allowed_states(const BipartiteGraph& h, const Matching& f,
                                         const Condensation& cond,
                                         const std::vector<bool>& hosted,
                                         const std::vector<bool>& blocked) {
  const std::size_t n = h.right_size();
  const std::size_t lefts = h.left_size();
  const auto node = [lefts](Vertex r) { return static_cast<Vertex>(lefts + r); };

  std::vector<SystemDigraph::Edge> arcs;
  arcs.reserve(h.edge_count());
  for (Vertex l = 0; l < lefts; ++l) {
    for (Vertex r : h.adjacent(l)) {
      if (f.right_of(l) == r) {
        arcs.emplace_back(node(r), l);
      } else {
        arcs.emplace_back(l, node(r));
      }
    }
  }
  const SystemDigraph d(lefts + n, std::move(arcs));
  const Condensation comp = strongly_connected_components(d);

  std::vector<Vertex> free_state, free_slack, matched_slack, free_right;
  for (Vertex l = 0; l < lefts; ++l) {
    const bool matched = f.right_of(l) != kUnmatched;
    if (l < n) {
      if (!matched) free_state.push_back(l);
    } else if (!hosted[l - n]) {
      (matched ? matched_slack : free_slack).push_back(l);
    }
  }
  for (Vertex r = 0; r < n; ++r) {
    if (!blocked[r] && !f.is_right_matched(r)) free_right.push_back(node(r));
  }
  const auto from_free_state = walk(d, free_state, true);
  const auto from_free_slack = walk(d, free_slack, true);
  const auto to_free_right = walk(d, free_right, false);
  const auto to_matched_slack = walk(d, matched_slack, false);

  std::vector<Vertex> result;
  for (std::size_t j = 0; j < cond.non_top_linked.size(); ++j) {
    if (hosted[j]) continue;
    const auto s = static_cast<Vertex>(n + j);
    for (Vertex x : cond.scc_members[cond.non_top_linked[j]]) {
      if (blocked[x]) continue;
      const Vertex xn = node(x);
      if (f.right_of(s) == x || comp.scc_of[s] == comp.scc_of[xn] || to_free_right[xn] ||
          from_free_state[s] || (from_free_slack[s] && to_matched_slack[xn])) {
        result.push_back(x);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

PlacementSummary summarize(const SystemDigraph& g, const Matching& seed) {
  PlacementSummary s;
  s.n = g.size();
  s.condensation = strongly_connected_components(g);
  AssignableSet assignable = assignable_unmatched_in_nontop(g, s.condensation, seed);
  s.assignment_edges = assignment_edges(g, s.condensation, assignable);
  s.matching_size = seed.size();
  s.m = s.n - seed.size();
  s.beta = s.condensation.beta();
  s.alpha = max_assignability_index(s.assignment_edges, assignable.vertices.size(), s.beta);
  s.p = s.m + s.beta - s.alpha;
  s.assignable_vertices = std::move(assignable.vertices);
  s.witness_matching = std::move(assignable.witness);
  return s;
}

std::vector<bool> mask_of(std::span<const Vertex> vs, std::size_t n) {
  std::vector<bool> mask(n, false);
  for (Vertex v : vs) mask[v] = true;
  return mask;
}

std::vector<Vertex> roots_and_hosts(const std::vector<Vertex>& hosts,
                                    const std::vector<Vertex>& roots) {
  std::vector<Vertex> all = hosts;
  all.insert(all.end(), roots.begin(), roots.end());
  return all;
}

Vertex checked_choice(const Chooser& chooser, const ChoiceRound& round) {
  const Vertex pick = chooser(round);
  if (!std::binary_search(round.candidates.begin(), round.candidates.end(), pick)) {
    throw std::invalid_argument("chooser picked state " + std::to_string(pick) +
                                ", which is not among the offered candidates");
  }
  return pick;
}

}  // namespace

Vertex lowest_index_chooser(const ChoiceRound& round) { return round.candidates.front(); }

PlacementSummary min_dedicated_inputs(const SystemDigraph& g) {
  if (g.size() == 0) throw std::invalid_argument("system has no state variables");
  const BipartiteGraph bg = to_state_bipartite(g);
  return summarize(g, maximum_matching(bg));
}

PlacementSummary min_dedicated_inputs(const SystemDigraph& g, const Matching& seed) {
  if (g.size() == 0) throw std::invalid_argument("system has no state variables");
  const BipartiteGraph bg = to_state_bipartite(g);
  if (maximum_matching(bg, seed).size() != seed.size()) {
    throw std::invalid_argument("seed matching is not a maximum matching");
  }
  return summarize(g, seed);
}

AssignableSet assignable_unmatched_in_nontop(const SystemDigraph& g, const Condensation& cond,
                                             const Matching& m0) {
  const std::size_t n = g.size();
  if (m0.left_size() != n || m0.right_size() != n) {
    throw std::invalid_argument("matching does not fit the digraph");
  }
  const BipartiteGraph h = slack_graph(g, cond, {}, {});
  // Augmenting from a maximum state matching keeps every state left vertex
  // matched, so the state part of the result is still maximum.
  const Matching full = maximum_matching(h, widen_left(m0, h.left_size()));

  AssignableSet result;
  result.witness = Matching(n, n);
  for (Vertex l = 0; l < n; ++l) {
    if (full.right_of(l) != kUnmatched) result.witness.match(l, full.right_of(l));
  }
  if (result.witness.size() != m0.size()) {
    throw std::invalid_argument("starting matching is not a maximum matching");
  }
  for (std::size_t k = 0; k < cond.non_top_linked.size(); ++k) {
    const Vertex r = full.right_of(static_cast<Vertex>(n + k));
    if (r != kUnmatched) result.vertices.push_back(r);
  }
  return result;
}

std::vector<AssignmentEdge> assignment_edges(const SystemDigraph& g, const Condensation& cond,
                                             const AssignableSet& assignable) {
  const BipartiteGraph bg = to_state_bipartite(g);
  const Matching& w = assignable.witness;
  const auto& vs = assignable.vertices;
  const std::vector<bool> in_v = mask_of(vs, g.size());

  // Pinning V \ {v_i} and forcing x unmatched keeps |M*| exactly when x is
  // alternating-reachable from an unpinned unmatched vertex of the witness.
  std::vector<Vertex> base;
  for (Vertex r : w.right_unmatched()) {
    if (!in_v[r]) base.push_back(r);
  }
  const std::vector<bool> base_reach = alternating_reach(bg, w, base);
  const auto pos = non_top_positions(cond);
  const auto candidates = non_top_vertices(cond);

  std::set<AssignmentEdge> edges;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vertex start[] = {vs[i]};
    const std::vector<bool> reach = alternating_reach(bg, w, start);
    for (Vertex x : candidates) {
      if (in_v[x] && x != vs[i]) continue;
      if (reach[x] || base_reach[x]) edges.emplace(i, pos[cond.scc_of[x]]);
    }
  }
  return {edges.begin(), edges.end()};
}

std::size_t max_assignability_index(std::span<const AssignmentEdge> edges, std::size_t v_count,
                                    std::size_t beta) {
  std::vector<BipartiteGraph::Edge> bip;
  bip.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    bip.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  }
  return maximum_matching(BipartiteGraph(v_count, beta, std::move(bip))).size();
}

PartitionSet natural_partitions(const SystemDigraph& g, const PlacementSummary& summary) {
  const BipartiteGraph bg = to_state_bipartite(g);
  const Matching& w = summary.witness_matching;
  PartitionSet result;
  result.slot_roots = w.right_unmatched();
  result.split = result.slot_roots.size();
  for (Vertex root : result.slot_roots) {
    const Vertex start[] = {root};
    const std::vector<bool> reach = alternating_reach(bg, w, start);
    std::vector<Vertex> theta;
    for (Vertex x = 0; x < g.size(); ++x) {
      if (reach[x]) theta.push_back(x);
    }
    result.thetas.push_back(std::move(theta));
  }
  const auto coverage = non_top_vertices(summary.condensation);
  for (std::size_t j = result.split; j < summary.p; ++j) result.thetas.push_back(coverage);
  return result;
}

InputConfiguration generate_configuration(const SystemDigraph& g, const PlacementSummary& summary,
                                          const PartitionSet& partitions,
                                          const Chooser& chooser) {
  if (partitions.thetas.size() != summary.p || partitions.split != summary.m) {
    throw std::invalid_argument("partitions do not belong to this summary");
  }
  const std::size_t n = g.size();
  const Condensation& cond = summary.condensation;
  const BipartiteGraph bg = to_state_bipartite(g);
  const auto pos = non_top_positions(cond);

  std::vector<bool> root_candidate(n, false);
  for (std::size_t j = 0; j < partitions.split; ++j) {
    for (Vertex x : partitions.thetas[j]) root_candidate[x] = true;
  }

  std::vector<Vertex> pinned;         // unmatched-role picks
  std::vector<Vertex> coverage;       // SCC-coverage picks
  std::vector<bool> taken(n, false);
  std::vector<bool> hosted(cond.beta(), false);
  Matching current = summary.witness_matching;
  std::size_t round = 0;

  // (1)-(3): one state per assignable SCC, keeping alpha reachable. f is a
  // maximum matching of the slack graph whose state part is maximum and
  // leaves every pick unmatched, so its slack part is what is still reachable.
  std::vector<bool> blocked(n, false);
  BipartiteGraph h = slack_graph(g, cond, hosted, blocked);
  Matching f = maximum_matching(h, widen_left(current, h.left_size()));
  for (std::size_t k = 0; k < summary.alpha; ++k, ++round) {
    if (f.size() != summary.matching_size + summary.alpha - k) {
      throw std::logic_error("assignable SCC count drifted from alpha");
    }
    const auto offered = slack_allowed_states(h, f, cond, hosted, blocked);
    if (offered.empty()) throw std::logic_error("no assignable state left to pick");
    const Vertex pick = checked_choice(chooser, {ChoicePhase::kAssignableScc, round, offered});
    pinned.push_back(pick);
    taken[pick] = true;
    blocked[pick] = true;
    hosted[pos[cond.scc_of[pick]]] = true;
    current = force_unmatched(bg, pinned, &current);
    if (current.size() != summary.matching_size) {
      throw std::logic_error("assignable pick shrank the maximum matching");
    }

    // Keep the other slack pairs of f as a warm start.
    h = slack_graph(g, cond, hosted, blocked);
    Matching seed = widen_left(current, h.left_size());
    for (std::size_t j = 0; j < cond.non_top_linked.size(); ++j) {
      const auto s = static_cast<Vertex>(n + j);
      const Vertex r = f.right_of(s);
      if (hosted[j] || r == kUnmatched || blocked[r] || seed.is_right_matched(r)) continue;
      seed.match(s, r);
    }
    f = maximum_matching(h, seed);
  }

  // (4): cover each remaining non-top SCC with one of its states.
  for (SccId id : cond.non_top_linked) {
    if (hosted[pos[id]]) continue;
    const auto& members = cond.scc_members[id];
    const Vertex pick = checked_choice(chooser, {ChoicePhase::kSccCoverage, round++, members});
    coverage.push_back(pick);
    taken[pick] = true;
  }

  // (5): fill the remaining stem-root slots.
  while (pinned.size() < summary.m) {
    const std::vector<bool> pinned_mask = mask_of(pinned, n);
    std::vector<Vertex> starts;
    for (Vertex r : current.right_unmatched()) {
      if (!pinned_mask[r]) starts.push_back(r);
    }
    const std::vector<bool> reach = alternating_reach(bg, current, starts);
    std::vector<Vertex> offered;
    for (Vertex x = 0; x < n; ++x) {
      if (reach[x] && !taken[x] && root_candidate[x]) offered.push_back(x);
    }
    if (offered.empty()) throw std::logic_error("no stem root left to pick");
    const Vertex pick = checked_choice(chooser, {ChoicePhase::kUnmatchedSlot, round++, offered});
    pinned.push_back(pick);
    taken[pick] = true;
    current = force_unmatched(bg, pinned, &current);
    if (current.size() != summary.matching_size) {
      throw std::logic_error("stem root pick shrank the maximum matching");
    }
  }

  InputConfiguration config;
  config.states = pinned;
  config.states.insert(config.states.end(), coverage.begin(), coverage.end());
  std::sort(config.states.begin(), config.states.end());
  return config;
}

EnumerationResult enumerate_configurations(const SystemDigraph& g,
                                           const PlacementSummary& summary,
                                           const PartitionSet& partitions, std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("enumeration limit must be at least 1");
  if (partitions.thetas.size() != summary.p || partitions.split != summary.m) {
    throw std::invalid_argument("partitions do not belong to this summary");
  }
  const std::size_t n = g.size();
  const Condensation& cond = summary.condensation;
  const BipartiteGraph bg = to_state_bipartite(g);
  const auto pos = non_top_positions(cond);
  const std::size_t beta = cond.beta();

  std::vector<bool> root_candidate(n, false);
  for (std::size_t j = 0; j < partitions.split; ++j) {
    for (Vertex x : partitions.thetas[j]) root_candidate[x] = true;
  }

  std::set<std::vector<Vertex>> found;
  bool stop = false;
  std::vector<Vertex> hosts;
  std::vector<Vertex> roots;
  std::vector<bool> hosted(beta, false);
  std::vector<bool> blocked(n, false);  // hosts and roots picked so far

  // One state in each non-top SCC left unhosted by the stem roots.
  auto cover = [&]() {
    std::vector<const std::vector<Vertex>*> open;
    for (std::size_t j = 0; j < beta; ++j) {
      if (!hosted[j]) open.push_back(&cond.scc_members[cond.non_top_linked[j]]);
    }
    std::vector<std::size_t> digit(open.size(), 0);
    while (!stop) {
      std::vector<Vertex> config = hosts;
      config.insert(config.end(), roots.begin(), roots.end());
      for (std::size_t k = 0; k < open.size(); ++k) config.push_back((*open[k])[digit[k]]);
      std::sort(config.begin(), config.end());
      found.insert(std::move(config));
      if (found.size() > limit) {
        stop = true;
        return;
      }
      std::size_t k = 0;
      while (k < open.size() && ++digit[k] == open[k]->size()) digit[k++] = 0;
      if (k == open.size()) return;
    }
  };

  // With the hosts fixed, the remaining stem roots are the bases of a
  // matroid over `spare`: sets R such that hosts + R is the unmatched set of
  // a maximum matching. Bases are listed in ascending order; y extends the
  // current prefix iff it can join the pinned set and the pinned set plus
  // every spare state from y on still has full rank.
  std::vector<Vertex> spare;

  // Shared across the search: a maximum matching leaving every pick
  // unmatched. A child's matching still fits its parent, so siblings reuse it
  // as a warm start.
  Matching current = summary.witness_matching;

  // Full rank test: some maximum matching leaves `blocked` unmatched and
  // covers every state outside blocked and spare[from..].
  auto full_rank = [&](std::size_t from) {
    std::vector<bool> outside = blocked;  // rights that may stay unmatched
    for (std::size_t i = from; i < spare.size(); ++i) outside[spare[i]] = true;
    const auto required = static_cast<std::size_t>(std::count(outside.begin(), outside.end(), false));
    const Matching covering = maximum_matching(bg, current, outside);
    if (covering.size() != required) return false;
    return maximum_matching(bg, covering, blocked).size() == summary.matching_size;
  };

  // First position in [floor, spare.size()] where full_rank fails, given that
  // it holds below floor.
  auto rank_bound = [&](std::size_t floor) {
    std::size_t lo = floor, hi = floor, step = 1;
    while (hi < spare.size() && full_rank(hi)) {
      lo = hi + 1;
      hi = std::min(spare.size(), hi + step);
      step *= 2;
    }
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (full_rank(mid)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  };

  auto extend_roots = [&](auto&& self, std::size_t next, std::size_t floor) -> void {
    if (stop) return;
    if (hosts.size() + roots.size() == summary.m) {
      cover();
      return;
    }
    std::vector<Vertex> starts;
    for (Vertex r : current.right_unmatched()) {
      if (!blocked[r]) starts.push_back(r);
    }
    const std::size_t bound = rank_bound(std::max(floor, next));
    std::vector<std::size_t> picks;
    {
      const std::vector<bool> reach = alternating_reach(bg, current, starts);
      for (std::size_t i = next; i < bound; ++i) {
        if (reach[spare[i]]) picks.push_back(i);
      }
    }
    for (std::size_t i : picks) {
      if (stop) return;
      const Vertex y = spare[i];
      roots.push_back(y);
      blocked[y] = true;
      current = force_unmatched(bg, roots_and_hosts(hosts, roots), &current);
      if (current.size() != summary.matching_size) {
        throw std::logic_error("stem root pick shrank the maximum matching");
      }
      self(self, i + 1, bound);
      blocked[y] = false;
      roots.pop_back();
    }
  };

  auto start_roots = [&]() {
    spare.clear();
    for (Vertex v = 0; v < n; ++v) {
      const std::size_t j = pos[cond.scc_of[v]];
      if (blocked[v] || !root_candidate[v] || (j != kNotNonTop && !hosted[j])) continue;
      spare.push_back(v);
    }
    extend_roots(extend_roots, 0, 0);
  };

  // Hosts, one SCC at a time: either give non-top SCC j a stem root or skip
  // it. f is a maximum matching of the slack graph over the SCCs not yet
  // dropped whose state part is maximum; its slack part counts the hosts
  // still reachable.
  std::vector<bool> dropped(beta, false);  // hosted or skipped
  Matching f;
  auto refresh_slack = [&]() {
    const BipartiteGraph h = slack_graph(g, cond, dropped, blocked);
    Matching seed = widen_left(current, h.left_size());
    if (f.left_size() == h.left_size()) {
      for (std::size_t j = 0; j < beta; ++j) {
        const auto s = static_cast<Vertex>(n + j);
        const Vertex r = f.right_of(s);
        if (dropped[j] || r == kUnmatched || blocked[r] || seed.is_right_matched(r)) continue;
        seed.match(s, r);
      }
    }
    f = maximum_matching(h, seed);
    return f.size() - summary.matching_size;
  };

  auto extend_hosts = [&](auto&& self, std::size_t j) -> void {
    if (stop) return;
    if (hosts.size() == summary.alpha) {
      start_roots();
      return;
    }
    if (j == beta) throw std::logic_error("ran out of SCCs before reaching alpha");
    std::vector<Vertex> picks;
    {
      const BipartiteGraph h = slack_graph(g, cond, dropped, blocked);
      for (Vertex x : slack_allowed_states(h, f, cond, dropped, blocked)) {
        if (cond.scc_of[x] == cond.non_top_linked[j]) picks.push_back(x);
      }
    }
    for (Vertex x : picks) {
      if (stop) return;
      hosts.push_back(x);
      blocked[x] = true;
      hosted[j] = dropped[j] = true;
      current = force_unmatched(bg, roots_and_hosts(hosts, roots), &current);
      if (current.size() != summary.matching_size ||
          refresh_slack() != summary.alpha - hosts.size()) {
        throw std::logic_error("host pick left alpha unreachable");
      }
      self(self, j + 1);
      hosted[j] = dropped[j] = false;
      blocked[x] = false;
      hosts.pop_back();
    }
    if (stop) return;
    dropped[j] = true;
    if (refresh_slack() == summary.alpha - hosts.size()) self(self, j + 1);
    dropped[j] = false;
  };

  refresh_slack();
  extend_hosts(extend_hosts, 0);

  EnumerationResult result;
  result.truncated = stop;
  const StructPattern a = to_pattern(g);
  for (const auto& states : found) {
    if (result.configurations.size() == limit) break;
    const OracleVerdict verdict = oracle::is_structurally_controllable(
        a, oracle::dedicated_input_pattern(g.size(), states));
    if (!verdict.controllable) {
      ++result.oracle_rejections;
      continue;
    }
    result.configurations.push_back({states});
  }
  return result;
}

StructPattern emit_input_matrix(const InputConfiguration& config, std::size_t n) {
  std::vector<Vertex> states = config.states;
  std::sort(states.begin(), states.end());
  std::vector<StructPattern::Entry> entries;
  for (std::size_t k = 0; k < states.size(); ++k) {
    entries.emplace_back(states[k], static_cast<Index>(k));
  }
  return StructPattern(n, states.size(), std::move(entries));
}

StructPattern emit_output_matrix(const InputConfiguration& config, std::size_t n) {
  return emit_input_matrix(config, n).transposed();
}

OutputDesign design_outputs(const StructPattern& pattern, const Chooser& chooser) {
  const SystemDigraph dual = build_digraph(pattern.transposed());
  OutputDesign design;
  design.summary = min_dedicated_inputs(dual);
  design.partitions = natural_partitions(dual, design.summary);
  design.sensors = generate_configuration(dual, design.summary, design.partitions, chooser);
  design.output_matrix = emit_output_matrix(design.sensors, pattern.n_rows());
  return design;
}

}  // namespace structctl
