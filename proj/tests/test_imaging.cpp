#include <doctest.h>

#include <random>
#include <string>

#include "edgeprint/errors.hpp"
#include "edgeprint/image.hpp"
#include "edgeprint/pgm.hpp"
#include "oracles.hpp"

using namespace edgeprint;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
  return {s.begin(), s.end()};
}

PgmErrorCode pgm_error(const std::vector<std::uint8_t>& bytes) {
  try {
    load_pgm(bytes);
  } catch (const PgmParseError& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return PgmErrorCode::BadMagic;
}

}  // namespace

TEST_CASE("GrayImage rejects bad dimensions and buffer sizes") {
  CHECK_THROWS_AS(GrayImage(0, 4), PreconditionError);
  CHECK_THROWS_AS(GrayImage(3, -1), PreconditionError);
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>(3)), PreconditionError);
}

TEST_CASE("load_pgm decodes P5") {
  auto bytes = bytes_of("P5 2 2 255\n");
  bytes.insert(bytes.end(), {0, 255, 128, 7});
  const GrayImage img = load_pgm(bytes);
  CHECK(img.width() == 2);
  CHECK(img.height() == 2);
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(0, 1) == 255);
  CHECK(img.at(1, 0) == 128);
  CHECK(img.at(1, 1) == 7);
}

TEST_CASE("load_pgm decodes P2 and skips comments") {
  const GrayImage one = load_pgm(bytes_of("P2 1 1 255 42"));
  CHECK(one.width() == 1);
  CHECK(one.at(0, 0) == 42);

  const GrayImage commented =
      load_pgm(bytes_of("P2\n# a comment\n2 1 # trailing\n255\n3 # x\n 4\n"));
  CHECK(commented.at(0, 0) == 3);
  CHECK(commented.at(0, 1) == 4);
}

TEST_CASE("load_pgm reports distinct errors with offsets") {
  CHECK(pgm_error(bytes_of("P6 1 1 255\n\x01")) == PgmErrorCode::BadMagic);
  CHECK(pgm_error(bytes_of("")) == PgmErrorCode::BadMagic);
  CHECK(pgm_error(bytes_of("P5 1 1 65535\n\x01\x01")) == PgmErrorCode::BadMaxval);
  CHECK(pgm_error(bytes_of("P5 0 4 255\n")) == PgmErrorCode::BadDimensions);
  CHECK(pgm_error(bytes_of("P5 4 -2 255\n")) == PgmErrorCode::BadDimensions);
  CHECK(pgm_error(bytes_of("P5 4 ")) == PgmErrorCode::BadHeader);
  CHECK(pgm_error(bytes_of("P2 2 1 255 7")) == PgmErrorCode::Truncated);
  CHECK(pgm_error(bytes_of("P2 1 1 100 101")) == PgmErrorCode::BadSample);

  // 384x284 header with only 10 raster bytes.
  auto truncated = bytes_of("P5\n384 284\n255\n");
  const std::size_t header = truncated.size();
  truncated.resize(header + 10, 9);
  try {
    load_pgm(truncated);
    FAIL("expected truncation");
  } catch (const PgmParseError& e) {
    CHECK(e.code() == PgmErrorCode::Truncated);
    CHECK(e.offset() == header + 10);
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("save_pgm writes the canonical P5 header") {
  const auto bytes = save_pgm(GrayImage(1, 1, std::uint8_t{0}));
  auto expected = bytes_of("P5\n1 1\n255\n");
  expected.push_back(0);
  CHECK(bytes == expected);

  const auto big = save_pgm(GrayImage(384, 284));
  const std::string head(big.begin(), big.begin() + 15);
  CHECK(head == "P5\n384 284\n255\n");
  CHECK(big.size() == 15 + 384u * 284u);
}

TEST_CASE("PGM round-trip is the identity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = oracle::random_image(rng, 16, 16);
    CHECK(load_pgm(save_pgm(img)) == img);
  }
  // P5 with comments decodes and re-encodes to the same raster.
  auto with_comment = bytes_of("P5\n# made by hand\n2 1\n255\n");
  with_comment.insert(with_comment.end(), {10, 20});
  const GrayImage img = load_pgm(with_comment);
  const auto canonical = save_pgm(img);
  CHECK(load_pgm(canonical) == img);
  CHECK(save_pgm(load_pgm(canonical)) == canonical);
}

TEST_CASE("partition splits 384x284 into four 192x142 regions") {
  const auto views = partition(GrayImage(384, 284), {2, 2});
  REQUIRE(views.size() == 4);
  for (const auto& v : views) {
    CHECK(v.width == 192);
    CHECK(v.height == 142);
  }
  CHECK(views[1].col == 192);  // RT
  CHECK(views[2].row == 142);  // LB
  CHECK(region_name({2, 2}, 0) == "LT");
  CHECK(region_name({2, 2}, 1) == "RT");
  CHECK(region_name({2, 2}, 2) == "LB");
  CHECK(region_name({2, 2}, 3) == "RB");
}

TEST_CASE("partition gives remainder pixels to trailing regions") {
  const auto views = partition(GrayImage(5, 5), {2, 2});
  CHECK(views[0].width == 2);
  CHECK(views[1].width == 3);
  CHECK(views[0].height == 2);
  CHECK(views[2].height == 3);

  const auto strips = partition(GrayImage(10, 3), {1, 4});
  CHECK(strips[0].width == 2);
  CHECK(strips[1].width == 2);
  CHECK(strips[2].width == 3);
  CHECK(strips[3].width == 3);
}

TEST_CASE("partition with a 1x1 grid is the whole image") {
  const GrayImage img(7, 9);
  const auto views = partition(img, {1, 1});
  REQUIRE(views.size() == 1);
  CHECK(views[0] == RegionView{0, 0, 7, 9, 0});
  CHECK(crop(img, views[0]) == img);
}

TEST_CASE("partition rejects grids larger than the image") {
  CHECK_THROWS_AS(partition(GrayImage(3, 3), {4, 4}), PreconditionError);
  CHECK_THROWS_AS(partition(GrayImage(3, 3), {0, 1}), PreconditionError);
}

TEST_CASE("partition tiles every pixel exactly once") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 40);
    const int h = 1 + static_cast<int>(rng() % 40);
    const RegionGrid grid{1 + static_cast<int>(rng() % h % 5),
                          1 + static_cast<int>(rng() % w % 5)};
    const auto views = partition(GrayImage(w, h), grid);
    REQUIRE(static_cast<int>(views.size()) == grid.region_count());
    std::vector<int> hits(static_cast<std::size_t>(w) * h, 0);
    int min_w = w, max_w = 0, min_h = h, max_h = 0;
    for (std::size_t i = 0; i < views.size(); ++i) {
      const auto& v = views[i];
      CHECK(v.index == static_cast<int>(i));
      min_w = std::min(min_w, v.width);
      max_w = std::max(max_w, v.width);
      min_h = std::min(min_h, v.height);
      max_h = std::max(max_h, v.height);
      for (int r = v.row; r < v.row + v.height; ++r)
        for (int c = v.col; c < v.col + v.width; ++c)
          ++hits[static_cast<std::size_t>(r) * w + c];
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int n) { return n == 1; }));
    CHECK(max_w - min_w <= 1);
    CHECK(max_h - min_h <= 1);
  }
}

TEST_CASE("RegionGrid parsing and standard counts") {
  CHECK(RegionGrid::from_region_count(4) == RegionGrid{2, 2});
  CHECK(RegionGrid::from_region_count(8) == RegionGrid{2, 4});
  CHECK(RegionGrid::from_region_count(16) == RegionGrid{4, 4});
  CHECK_THROWS_AS(RegionGrid::from_region_count(6), PreconditionError);
  CHECK(RegionGrid::parse("4x2") == RegionGrid{4, 2});
  CHECK(RegionGrid::parse("2x4").to_string() == "2x4");
  CHECK_THROWS_AS(RegionGrid::parse("2by2"), PreconditionError);
  CHECK_THROWS_AS(RegionGrid::parse("0x2"), PreconditionError);
  CHECK_THROWS_AS(RegionGrid::parse("2x"), PreconditionError);
}
