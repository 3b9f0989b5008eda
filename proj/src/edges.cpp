#include "edgeprint/edges.hpp"

#include <algorithm>
#include <cmath>

#include "edgeprint/errors.hpp"

namespace edgeprint {

namespace {

// Below this many pixels the OpenMP fork costs more than it saves.
constexpr long kParallelMinPixels = 1 << 14;

void require_3x3(const GrayImage& image) {
  if (image.width() < 3 || image.height() < 3) {
    throw PreconditionError("edge operators need an image of at least 3x3, got " +
                            std::to_string(image.width()) + "x" +
                            std::to_string(image.height()));
  }
}

ResponseMap blank_response(const GrayImage& image) {
  return {image.width(), image.height(),
          std::vector<double>(image.size(), 0.0)};
}

// Correlation of one output row. above/here/below point at clamped source rows.
inline void correlate_row(const std::uint8_t* above, const std::uint8_t* here,
                          const std::uint8_t* below, int width,
                          const Kernel3& k, int* out) {
  const std::uint8_t* rows[3] = {above, here, below};
  for (int c = 0; c < width; ++c) {
    const int cl = c > 0 ? c - 1 : 0;
    const int cr = c + 1 < width ? c + 1 : width - 1;
    int acc = 0;
    for (int i = 0; i < 3; ++i) {
      const std::uint8_t* src = rows[i];
      acc += k[3 * i] * src[cl] + k[3 * i + 1] * src[c] + k[3 * i + 2] * src[cr];
    }
    out[c] = acc;
  }
}

template <typename RowFn>
void for_each_row(const GrayImage& image, RowFn&& fn) {
  const int h = image.height();
  const int w = image.width();
  const std::uint8_t* base = image.pixels().data();
  const bool parallel = static_cast<long>(w) * h >= kParallelMinPixels;
  #pragma omp parallel for schedule(static) if (parallel)
  for (int r = 0; r < h; ++r) {
    const std::uint8_t* above = base + static_cast<std::size_t>(r > 0 ? r - 1 : 0) * w;
    const std::uint8_t* here = base + static_cast<std::size_t>(r) * w;
    const std::uint8_t* below =
        base + static_cast<std::size_t>(r + 1 < h ? r + 1 : h - 1) * w;
    fn(r, above, here, below);
  }
}

ResponseMap map_abs(ResponseMap response) {
  for (double& v : response.values) v = std::abs(v);
  return response;
}

}  // namespace

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(
      std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }));
}

std::string_view to_string(EdgeOperator op) {
  switch (op) {
    case EdgeOperator::Sobel: return "sobel";
    case EdgeOperator::Laplacian: return "laplacian";
    case EdgeOperator::LoG: return "log";
  }
  return "unknown";
}

EdgeOperator parse_edge_operator(std::string_view name) {
  if (name == "sobel") return EdgeOperator::Sobel;
  if (name == "laplacian") return EdgeOperator::Laplacian;
  if (name == "log") return EdgeOperator::LoG;
  throw PreconditionError("unknown edge operator '" + std::string(name) +
                          "' (expected sobel, laplacian or log)");
}

ResponseMap convolve3(const GrayImage& image, const Kernel3& kernel) {
  require_3x3(image);
  ResponseMap out = blank_response(image);
  const int w = image.width();
  for_each_row(image, [&](int r, const std::uint8_t* above,
                          const std::uint8_t* here, const std::uint8_t* below) {
    std::vector<int> row(static_cast<std::size_t>(w));
    correlate_row(above, here, below, w, kernel, row.data());
    std::copy(row.begin(), row.end(),
              out.values.begin() + static_cast<std::ptrdiff_t>(r) * w);
  });
  return out;
}

ResponseMap sobel_magnitude(const GrayImage& image) {
  require_3x3(image);
  ResponseMap out = blank_response(image);
  const int w = image.width();
  for_each_row(image, [&](int r, const std::uint8_t* above,
                          const std::uint8_t* here, const std::uint8_t* below) {
    std::vector<int> gx(static_cast<std::size_t>(w));
    std::vector<int> gy(static_cast<std::size_t>(w));
    correlate_row(above, here, below, w, kSobelX, gx.data());
    correlate_row(above, here, below, w, kSobelY, gy.data());
    double* dst = out.values.data() + static_cast<std::size_t>(r) * w;
    for (int c = 0; c < w; ++c) {
      dst[c] = std::sqrt(static_cast<double>(gx[c]) * gx[c] +
                         static_cast<double>(gy[c]) * gy[c]);
    }
  });
  return out;
}

ResponseMap laplacian_response(const GrayImage& image) {
  return convolve3(image, kLaplacian);
}

ResponseMap log_response(const GrayImage& image) {
  return map_abs(convolve3(image, kLoG));
}

ResponseMap operator_response(const GrayImage& image, EdgeOperator op) {
  switch (op) {
    case EdgeOperator::Sobel: return sobel_magnitude(image);
    case EdgeOperator::Laplacian: return laplacian_response(image);
    case EdgeOperator::LoG: return log_response(image);
  }
  throw PreconditionError("unknown edge operator");
}

double auto_threshold(const ResponseMap& response, double k) {
  if (response.values.empty()) {
    throw PreconditionError("auto_threshold needs a non-empty response");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw PreconditionError("threshold multiplier must be positive and finite");
  }
  double sum = 0.0;
  for (double v : response.values) sum += std::abs(v);
  return k * (sum / static_cast<double>(response.values.size()));
}

EdgeMap threshold_edges(const ResponseMap& response, double threshold) {
  if (std::isnan(threshold)) {
    throw PreconditionError("threshold must not be NaN");
  }
  EdgeMap edges(response.width, response.height);
  for (std::size_t i = 0; i < response.values.size(); ++i) {
    edges.bits[i] = std::abs(response.values[i]) > threshold ? 1 : 0;
  }
  return edges;
}

EdgeMap detect_edges(const GrayImage& image, EdgeOperator op,
                     std::optional<double> threshold, double threshold_k) {
  const ResponseMap response = operator_response(image, op);
  const double t = threshold ? *threshold : auto_threshold(response, threshold_k);
  return threshold_edges(response, t);
}

namespace serial {

ResponseMap convolve3(const GrayImage& image, const Kernel3& kernel) {
  require_3x3(image);
  ResponseMap out = blank_response(image);
  const int h = image.height();
  const int w = image.width();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      int acc = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        const int sr = std::clamp(r + dr, 0, h - 1);
        for (int dc = -1; dc <= 1; ++dc) {
          const int sc = std::clamp(c + dc, 0, w - 1);
          acc += kernel[(dr + 1) * 3 + (dc + 1)] * image.at(sr, sc);
        }
      }
      out.values[static_cast<std::size_t>(r) * w + c] = acc;
    }
  }
  return out;
}

ResponseMap sobel_magnitude(const GrayImage& image) {
  const ResponseMap gx = serial::convolve3(image, kSobelX);
  ResponseMap out = serial::convolve3(image, kSobelY);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = std::sqrt(gx.values[i] * gx.values[i] +
                              out.values[i] * out.values[i]);
  }
  return out;
}

}  // namespace serial

}  // namespace edgeprint
