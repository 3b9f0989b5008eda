#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgeprint {

/// 8-bit grayscale image, row-major. Width and height are always positive.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::uint8_t at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  std::uint8_t& at(int row, int col) {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// rows x cols partition of an image into near-equal rectangles.
struct RegionGrid {
  int rows = 2;
  int cols = 2;

  int region_count() const noexcept { return rows * cols; }

  /// 4 -> 2x2, 8 -> 2x4, 16 -> 4x4.
  static RegionGrid from_region_count(int count);
  /// Parses "RxC", e.g. "2x4".
  static RegionGrid parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const RegionGrid&, const RegionGrid&) = default;
};

struct RegionView {
  int row = 0;  // top-left pixel
  int col = 0;
  int width = 0;
  int height = 0;
  int index = 0;  // row-major ordinal; for 2x2: LT=0, RT=1, LB=2, RB=3

  friend bool operator==(const RegionView&, const RegionView&) = default;
};

/// Row-major region views tiling the image. When a dimension is not divisible
/// by the grid, the trailing regions on that axis are one pixel larger.
std::vector<RegionView> partition(const GrayImage& image, RegionGrid grid);

GrayImage crop(const GrayImage& image, const RegionView& region);

GrayImage transpose(const GrayImage& image);

/// Conventional two-letter name for 2x2 regions (LT, RT, LB, RB); otherwise
/// "R<row>C<col>".
std::string region_name(RegionGrid grid, int index);

}  // namespace edgeprint
