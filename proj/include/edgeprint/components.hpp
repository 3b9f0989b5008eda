#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgeprint/edges.hpp"

namespace edgeprint {

inline constexpr int kDefaultMinComponent = 5;

/// 8-connected labeling. labels are 0 for background and 1..component_count
/// otherwise, numbered in raster order of each component's first pixel.
struct LabeledMap {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  int component_count = 0;
  std::vector<std::size_t> sizes;  // sizes[label - 1]

  std::int32_t at(int row, int col) const {
    return labels[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t size_of(std::int32_t label) const { return sizes[label - 1]; }
};

/// Two-pass labeling with union-find equivalence resolution.
LabeledMap label8(const EdgeMap& edges);

/// Keeps pixels of components with at least min_size pixels.
EdgeMap filter_small(const LabeledMap& labeled, std::size_t min_size);

/// Number of 8-connected components with at least min_size pixels.
std::size_t edginess(const EdgeMap& edges, std::size_t min_size);

}  // namespace edgeprint
