#include "structctl/generate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "structctl/random.hpp"

namespace structctl {

namespace {

using Entries = std::vector<StructPattern::Entry>;

// Bernoulli(p) over cells [0, total), visiting only the hits.
template <typename Visit>
void sample_cells(Rng& rng, std::uint64_t total, double p, Visit visit) {
  if (p <= 0.0 || total == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t k = 0; k < total; ++k) visit(k);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t k = 0;
  while (true) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(total - k)) return;
    k += static_cast<std::uint64_t>(skip);
    visit(k);
    if (++k >= total) return;
  }
}

Entries erdos(std::size_t n, double p, Rng& rng) {
  Entries entries;
  sample_cells(rng, static_cast<std::uint64_t>(n) * n, p, [&](std::uint64_t k) {
    entries.emplace_back(static_cast<Index>(k / n), static_cast<Index>(k % n));
  });
  return entries;
}

Entries banded(std::size_t n, std::size_t bandwidth, double p, Rng& rng) {
  Entries entries;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > bandwidth ? i - bandwidth : 0;
    const std::size_t hi = std::min(n - 1, i + bandwidth);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (rng.bernoulli(p)) entries.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
    }
  }
  return entries;
}

Entries scale_free(std::size_t n, std::size_t degree, Rng& rng) {
  Entries entries;
  // Each state appears once per incident link plus once for itself, so the
  // attachment probability is proportional to degree + 1.
  std::vector<Index> urn{0};
  for (std::size_t t = 1; t < n; ++t) {
    std::vector<Index> targets;
    const std::size_t links = std::min(degree, t);
    while (targets.size() < links) {
      const Index pick = urn[rng.below(urn.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) targets.push_back(pick);
    }
    for (Index s : targets) {
      const auto v = static_cast<Index>(t);
      if (rng.bernoulli(0.5)) {
        entries.emplace_back(v, s);
      } else {
        entries.emplace_back(s, v);
      }
      urn.push_back(s);
      urn.push_back(v);
    }
    urn.push_back(static_cast<Index>(t));
  }
  return entries;
}

}  // namespace

GeneratedPattern gen_random(const GenParams& params) {
  if (params.n == 0) throw std::invalid_argument("gen_random: n must be at least 1");
  if (!(params.p_edge >= 0.0 && params.p_edge <= 1.0)) {
    throw std::invalid_argument("gen_random: p_edge must lie in [0, 1]");
  }
  if (params.model == RandomModel::kScaleFree && params.degree == 0) {
    throw std::invalid_argument("gen_random: scale-free degree must be at least 1");
  }
  Rng rng(params.seed);
  Entries entries;
  std::ostringstream provenance;
  provenance << "generated by structctl gen: model=" << model_name(params.model)
             << " n=" << params.n;
  switch (params.model) {
    case RandomModel::kErdos:
      entries = erdos(params.n, params.p_edge, rng);
      provenance << " p_edge=" << params.p_edge;
      break;
    case RandomModel::kScaleFree:
      entries = scale_free(params.n, params.degree, rng);
      provenance << " degree=" << params.degree;
      break;
    case RandomModel::kBanded:
      entries = banded(params.n, params.bandwidth, params.p_edge, rng);
      provenance << " bandwidth=" << params.bandwidth << " p_edge=" << params.p_edge;
      break;
  }
  provenance << " seed=" << params.seed;
  return {StructPattern::deduplicated(params.n, params.n, std::move(entries)), provenance.str()};
}

RandomModel model_from_name(std::string_view name) {
  if (name == "erdos") return RandomModel::kErdos;
  if (name == "scalefree") return RandomModel::kScaleFree;
  if (name == "banded") return RandomModel::kBanded;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected erdos, scalefree or banded)");
}

std::string_view model_name(RandomModel model) {
  switch (model) {
    case RandomModel::kErdos:
      return "erdos";
    case RandomModel::kScaleFree:
      return "scalefree";
    case RandomModel::kBanded:
      return "banded";
  }
  return "erdos";
}

}  // namespace structctl
