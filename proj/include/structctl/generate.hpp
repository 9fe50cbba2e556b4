#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "structctl/pattern.hpp"

namespace structctl {

enum class RandomModel {
  kErdos,      // every ordered pair, self-loops included, independently with p_edge
  kScaleFree,  // preferential attachment, `degree` links per new state, random orientation
  kBanded,     // pairs with |i - j| <= bandwidth, each with p_edge
};

struct GenParams {
  RandomModel model = RandomModel::kErdos;
  std::size_t n = 0;
  double p_edge = 0.1;
  std::size_t degree = 2;
  std::size_t bandwidth = 1;
  std::uint64_t seed = 0;
};

struct GeneratedPattern {
  StructPattern pattern;
  std::string provenance;  // one line describing the model, parameters and seed
};

/// Deterministic for fixed parameters. Throws std::invalid_argument on n == 0,
/// p_edge outside [0, 1] or degree == 0 for the scale-free model.
GeneratedPattern gen_random(const GenParams& params);

RandomModel model_from_name(std::string_view name);  // erdos, scalefree, banded
std::string_view model_name(RandomModel model);

}  // namespace structctl
