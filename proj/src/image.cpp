#include "edgeprint/image.hpp"

#include <charconv>

#include "edgeprint/errors.hpp"

namespace edgeprint {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw PreconditionError("image dimensions must be positive, got " +
                            std::to_string(width) + "x" +
                            std::to_string(height));
  }
}

// Start offset of slot i when `extent` pixels are split into `parts` slots and
// the remainder goes to the trailing slots.
int slot_start(int extent, int parts, int i) {
  const int base = extent / parts;
  const int extra = extent % parts;
  const int first_big = parts - extra;
  return i * base + (i > first_big ? i - first_big : 0);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw PreconditionError("pixel buffer holds " +
                            std::to_string(pixels_.size()) + " values, expected " +
                            std::to_string(static_cast<std::size_t>(width) * height));
  }
}

RegionGrid RegionGrid::from_region_count(int count) {
  switch (count) {
    case 4: return {2, 2};
    case 8: return {2, 4};
    case 16: return {4, 4};
    default:
      throw PreconditionError("no standard grid for " + std::to_string(count) +
                              " regions (expected 4, 8 or 16)");
  }
}

RegionGrid RegionGrid::parse(std::string_view text) {
  const auto x = text.find('x');
  auto parse_int = [&](std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  RegionGrid grid{};
  if (x == std::string_view::npos || !parse_int(text.substr(0, x), grid.rows) ||
      !parse_int(text.substr(x + 1), grid.cols) || grid.rows < 1 ||
      grid.cols < 1) {
    throw PreconditionError("invalid grid '" + std::string(text) +
                            "', expected RxC with R,C >= 1");
  }
  return grid;
}

std::string RegionGrid::to_string() const {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

std::vector<RegionView> partition(const GrayImage& image, RegionGrid grid) {
  if (grid.rows < 1 || grid.cols < 1) {
    throw PreconditionError("grid must have at least one row and column");
  }
  if (image.width() < grid.cols || image.height() < grid.rows) {
    throw PreconditionError(
        "cannot partition " + std::to_string(image.width()) + "x" +
        std::to_string(image.height()) + " image into " + grid.to_string() +
        " regions");
  }
  std::vector<RegionView> views;
  views.reserve(grid.region_count());
  for (int r = 0; r < grid.rows; ++r) {
    const int top = slot_start(image.height(), grid.rows, r);
    const int bottom = slot_start(image.height(), grid.rows, r + 1);
    for (int c = 0; c < grid.cols; ++c) {
      const int left = slot_start(image.width(), grid.cols, c);
      const int right = slot_start(image.width(), grid.cols, c + 1);
      views.push_back({top, left, right - left, bottom - top,
                       r * grid.cols + c});
    }
  }
  return views;
}

GrayImage crop(const GrayImage& image, const RegionView& region) {
  if (region.row < 0 || region.col < 0 || region.width <= 0 ||
      region.height <= 0 || region.row + region.height > image.height() ||
      region.col + region.width > image.width()) {
    throw PreconditionError("region lies outside the image");
  }
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(region.width) * region.height);
  for (int r = 0; r < region.height; ++r) {
    const auto row = image.pixels().subspan(
        static_cast<std::size_t>(region.row + r) * image.width() + region.col,
        region.width);
    out.insert(out.end(), row.begin(), row.end());
  }
  return GrayImage(region.width, region.height, std::move(out));
}

GrayImage transpose(const GrayImage& image) {
  GrayImage out(image.height(), image.width());
  for (int r = 0; r < image.height(); ++r)
    for (int c = 0; c < image.width(); ++c) out.at(c, r) = image.at(r, c);
  return out;
}

std::string region_name(RegionGrid grid, int index) {
  if (grid.rows == 2 && grid.cols == 2) {
    static constexpr const char* kNames[] = {"LT", "RT", "LB", "RB"};
    return kNames[index];
  }
  return "R" + std::to_string(index / grid.cols) + "C" +
         std::to_string(index % grid.cols);
}

}  // namespace edgeprint
