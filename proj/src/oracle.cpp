#include "structctl/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "structctl/random.hpp"

namespace structctl::oracle {

namespace {

constexpr Index kFree = std::numeric_limits<Index>::max();

void check_pair(const StructPattern& a, const StructPattern& b) {
  if (!a.is_square()) throw ShapeError("A must be square");
  if (b.n_rows() != a.n_rows()) {
    throw ShapeError("B has " + std::to_string(b.n_rows()) + " rows, A has " +
                     std::to_string(a.n_rows()));
  }
}

// Kuhn's augmenting-path matching; kept separate from the Hopcroft-Karp
// used by the placement code.
class SimpleMatcher {
 public:
  explicit SimpleMatcher(const std::vector<std::vector<Index>>& sources_of)
      : sources_of_(sources_of) {}

  // Size of a maximum matching that covers targets, where target t may be
  // matched to any source listed in sources_of[t].
  std::size_t run(std::size_t source_count) {
    owner_.assign(source_count, kFree);
    std::size_t size = 0;
    for (Index t = 0; t < sources_of_.size(); ++t) {
      visited_.assign(source_count, false);
      if (try_cover(t)) ++size;
    }
    return size;
  }

 private:
  bool try_cover(Index t) {
    for (Index s : sources_of_[t]) {
      if (visited_[s]) continue;
      visited_[s] = true;
      if (owner_[s] == kFree || try_cover(owner_[s])) {
        owner_[s] = t;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<Index>>& sources_of_;
  std::vector<Index> owner_;
  std::vector<bool> visited_;
};

}  // namespace

StructPattern dedicated_input_pattern(std::size_t n, std::span<const Index> states) {
  std::vector<StructPattern::Entry> entries;
  for (std::size_t k = 0; k < states.size(); ++k) {
    entries.emplace_back(states[k], static_cast<Index>(k));
  }
  return StructPattern(n, states.size(), std::move(entries));
}

namespace {

struct FeedLists {
  std::vector<std::vector<Index>> feeders;  // state -> states and inputs feeding it
  std::vector<std::vector<Index>> fed;      // vertex -> states it feeds
};

// Vertices 0..n-1 are states, n..n+p-1 inputs. A(i, j) feeds state i from
// state j; B(i, k) feeds state i from input k.
FeedLists feed_lists(const StructPattern& a, const StructPattern& b) {
  const std::size_t n = a.n_rows();
  FeedLists lists{std::vector<std::vector<Index>>(n),
                  std::vector<std::vector<Index>>(n + b.n_cols())};
  for (const auto& [i, j] : a.nonzeros()) lists.feeders[i].push_back(j);
  for (const auto& [i, k] : b.nonzeros()) lists.feeders[i].push_back(static_cast<Index>(n + k));
  for (Index i = 0; i < n; ++i) {
    for (Index src : lists.feeders[i]) lists.fed[src].push_back(i);
  }
  return lists;
}

bool all_states_accessible(const FeedLists& lists, std::size_t n) {
  const std::size_t total = lists.fed.size();
  std::vector<bool> seen(total, false);
  std::vector<Index> queue;
  for (std::size_t k = n; k < total; ++k) {
    seen[k] = true;
    queue.push_back(static_cast<Index>(k));
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Index next : lists.fed[queue[head]]) {
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return std::all_of(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(n),
                     [](bool s) { return s; });
}

bool no_dilation(const FeedLists& lists, std::size_t n) {
  return SimpleMatcher(lists.feeders).run(lists.fed.size()) == n;
}

}  // namespace

OracleVerdict is_structurally_controllable(const StructPattern& a, const StructPattern& b) {
  check_pair(a, b);
  const FeedLists lists = feed_lists(a, b);
  OracleVerdict verdict;
  verdict.accessibility_ok = all_states_accessible(lists, a.n_rows());
  verdict.dilation_free = no_dilation(lists, a.n_rows());
  verdict.controllable = verdict.accessibility_ok && verdict.dilation_free;
  return verdict;
}

OracleVerdict is_structurally_observable(const StructPattern& a, const StructPattern& c) {
  if (c.n_cols() != a.n_rows()) {
    throw ShapeError("C has " + std::to_string(c.n_cols()) + " columns, A has " +
                     std::to_string(a.n_rows()) + " rows");
  }
  return is_structurally_controllable(a.transposed(), c.transposed());
}

NumericRank numeric_rank_check(const StructPattern& a, const StructPattern& b, std::size_t trials,
                               std::uint64_t seed) {
  check_pair(a, b);
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  const auto n = static_cast<Eigen::Index>(a.n_rows());
  const auto p = static_cast<Eigen::Index>(b.n_cols());
  const double tol = static_cast<double>(std::max(n, n * p)) * std::numeric_limits<double>::epsilon();

  Rng rng(seed);
  NumericRank result;
  for (std::size_t t = 0; t < trials; ++t) {
    Eigen::MatrixXd am = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd bm = Eigen::MatrixXd::Zero(n, p);
    for (const auto& [i, j] : a.nonzeros()) am(i, j) = 0.5 + rng.uniform();
    for (const auto& [i, k] : b.nonzeros()) bm(i, k) = 0.5 + rng.uniform();

    std::vector<Eigen::VectorXd> basis;
    bool ambiguous = false;
    std::vector<Eigen::VectorXd> candidates;
    for (Eigen::Index k = 0; k < p; ++k) candidates.emplace_back(bm.col(k));

    for (Eigen::Index step = 0; step < n && !candidates.empty() &&
                                static_cast<Eigen::Index>(basis.size()) < n;
         ++step) {
      std::vector<Eigen::VectorXd> fresh;
      for (Eigen::VectorXd v : candidates) {
        const double norm = v.norm();
        if (norm == 0.0) continue;
        v /= norm;
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& q : basis) v -= q.dot(v) * q;
        }
        const double residual = v.norm();
        if (residual > tol && residual < kAmbiguousResidual) ambiguous = true;
        if (residual > tol && static_cast<Eigen::Index>(basis.size()) < n) {
          basis.emplace_back(v / residual);
          fresh.push_back(basis.back());
        }
      }
      candidates.clear();
      for (const auto& q : fresh) candidates.emplace_back(am * q);
    }
    if (ambiguous) continue;
    ++result.determinate_trials;
    result.rank = std::max(result.rank, basis.size());
  }
  result.indeterminate = result.determinate_trials == 0;
  return result;
}

BruteForceResult brute_force_minimum(const StructPattern& a, std::size_t max_n) {
  if (!a.is_square()) throw ShapeError("A must be square");
  const std::size_t n = a.n_rows();
  if (n > max_n) {
    throw std::invalid_argument("brute force is capped at n = " + std::to_string(max_n) +
                                " (got " + std::to_string(n) +
                                "); use the placement pipeline for larger systems");
  }
  BruteForceResult result;
  if (n == 0) return result;

  for (std::size_t k = 1; k <= n; ++k) {
    // Lexicographic k-subsets of 0..n-1.
    std::vector<Index> subset(k);
    for (Index i = 0; i < k; ++i) subset[i] = i;
    while (true) {
      // Accessibility is the cheaper test, so it goes first.
      const FeedLists lists = feed_lists(a, dedicated_input_pattern(n, subset));
      if (all_states_accessible(lists, n) && no_dilation(lists, n)) {
        result.configurations.push_back(subset);
      }

      std::size_t i = k;
      while (i > 0 && subset[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    if (!result.configurations.empty()) {
      result.minimum = k;
      return result;
    }
  }
  return result;
}

}  // namespace structctl::oracle
