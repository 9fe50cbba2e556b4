#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "structctl/pattern.hpp"

// Verification routines. Nothing here depends on the digraph, matching or
// placement code, so the placement results can be checked against it.
namespace structctl {

struct OracleVerdict {
  bool controllable = false;
  bool accessibility_ok = false;
  bool dilation_free = false;
  std::optional<std::size_t> numeric_rank;
};

struct NumericRank {
  std::size_t rank = 0;          // max over determinate trials
  bool indeterminate = false;    // no trial gave a clean rank decision
  std::size_t determinate_trials = 0;
};

struct BruteForceResult {
  std::size_t minimum = 0;
  std::vector<std::vector<Index>> configurations;  // every feasible set of that size, lexicographic
};

namespace oracle {

/// Candidate vectors whose residual (relative to their own norm) falls
/// between the rank tolerance and this bound make a trial indeterminate.
inline constexpr double kAmbiguousResidual = 1e-6;

/// n x |states| pattern with one nonzero per column at the given state.
StructPattern dedicated_input_pattern(std::size_t n, std::span<const Index> states);

/// Structural controllability of (A, B): every state reachable from an input
/// in D(A, B), and a matching of B(X u U, X) covering every state. Throws
/// ShapeError on a dimension mismatch.
OracleVerdict is_structurally_controllable(const StructPattern& a, const StructPattern& b);

/// Observability of (A, C) through the transposed pair (A^T, C^T).
OracleVerdict is_structurally_observable(const StructPattern& a, const StructPattern& c);

/// Dimension of the Krylov space spanned by [B, AB, ..., A^(n-1) B] for
/// random nonzeros drawn uniformly from [0.5, 1.5], maximised over `trials`.
///
/// The space is grown by block Arnoldi with twice-applied modified
/// Gram-Schmidt. Each candidate vector is normalised before
/// orthogonalisation, so its largest singular value is 1 and a candidate
/// counts as new when its residual exceeds max(n, n*p) * machine epsilon.
NumericRank numeric_rank_check(const StructPattern& a, const StructPattern& b, std::size_t trials,
                               std::uint64_t seed);

/// Smallest number of dedicated inputs, found by trying every subset in
/// increasing size. Throws std::invalid_argument when n exceeds `max_n`.
BruteForceResult brute_force_minimum(const StructPattern& a, std::size_t max_n = 12);

}  // namespace oracle
}  // namespace structctl
