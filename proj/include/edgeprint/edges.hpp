#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgeprint/image.hpp"

namespace edgeprint {

/// 3x3 integer weights, row-major. Applied as a correlation (no flip).
using Kernel3 = std::array<int, 9>;

inline constexpr Kernel3 kSobelX = {-1, 0, 1, -2, 0, 2, -1, 0, 1};
inline constexpr Kernel3 kSobelY = {-1, -2, -1, 0, 0, 0, 1, 2, 1};
inline constexpr Kernel3 kLaplacian = {0, 1, 0, 1, -4, 1, 0, 1, 0};
inline constexpr Kernel3 kLoG = {0, -1, 0, -1, 4, -1, 0, -1, 0};
inline constexpr Kernel3 kIdentity = {0, 0, 0, 0, 1, 0, 0, 0, 0};

/// Per-pixel operator response with the source image's dimensions.
struct ResponseMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * width + col];
  }
  friend bool operator==(const ResponseMap&, const ResponseMap&) = default;
};

/// Binary edge image; nonzero byte marks an edge pixel.
struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  EdgeMap() = default;
  EdgeMap(int w, int h) : width(w), height(h), bits(std::size_t(w) * h, 0) {}

  bool at(int row, int col) const {
    return bits[static_cast<std::size_t>(row) * width + col] != 0;
  }
  void set(int row, int col, bool edge = true) {
    bits[static_cast<std::size_t>(row) * width + col] = edge ? 1 : 0;
  }
  std::size_t count() const;

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;
};

enum class EdgeOperator { Sobel, Laplacian, LoG };

std::string_view to_string(EdgeOperator op);
/// Accepts "sobel", "laplacian", "log".
EdgeOperator parse_edge_operator(std::string_view name);

inline constexpr double kDefaultThresholdK = 4.0;

/// Correlation with replicate-edge padding. Rows are split across OpenMP
/// threads for large images. Requires an image of at least 3x3.
ResponseMap convolve3(const GrayImage& image, const Kernel3& kernel);

/// sqrt(gx^2 + gy^2) with the kSobelX / kSobelY kernels.
ResponseMap sobel_magnitude(const GrayImage& image);

/// Signed 4-neighbour Laplacian.
ResponseMap laplacian_response(const GrayImage& image);

/// |kLoG correlation|; the 3x3 LoG approximation.
ResponseMap log_response(const GrayImage& image);

ResponseMap operator_response(const GrayImage& image, EdgeOperator op);

/// k * mean(|response|).
double auto_threshold(const ResponseMap& response,
                      double k = kDefaultThresholdK);

/// Edge iff |response| > threshold.
EdgeMap threshold_edges(const ResponseMap& response, double threshold);

/// Response, then auto threshold when none is given, then threshold_edges.
EdgeMap detect_edges(const GrayImage& image, EdgeOperator op,
                     std::optional<double> threshold = std::nullopt,
                     double threshold_k = kDefaultThresholdK);

namespace serial {

// Single-threaded reference kernels. Kept for tests and benchmarks.
ResponseMap convolve3(const GrayImage& image, const Kernel3& kernel);
ResponseMap sobel_magnitude(const GrayImage& image);

}  // namespace serial

}  // namespace edgeprint
