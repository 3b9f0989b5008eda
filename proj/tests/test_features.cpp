#include <doctest.h>

#include <random>

#include "edgeprint/errors.hpp"
#include "edgeprint/features.hpp"
#include "oracles.hpp"

using namespace edgeprint;

namespace {

void hline(GrayImage& img, int row, int c0, int c1, std::uint8_t v = 0) {
  for (int c = c0; c <= c1; ++c) img.at(row, c) = v;
}

// Three separated strokes inside LT, one inside RB.
GrayImage four_stroke_fixture() {
  GrayImage img(40, 40, std::uint8_t{200});
  hline(img, 3, 4, 14);
  hline(img, 8, 4, 14);
  hline(img, 13, 4, 14);
  hline(img, 30, 25, 35);
  return img;
}

ExtractionConfig exact_config() {
  ExtractionConfig cfg;
  cfg.threshold = 0.0;
  cfg.min_component = 1;
  return cfg;
}

GalleryErrorCode gallery_error(const std::string& text, std::size_t* line = nullptr) {
  try {
    load_gallery(text);
  } catch (const GalleryParseError& e) {
    if (line) *line = e.line();
    return e.code();
  }
  FAIL("expected a gallery parse error");
  return GalleryErrorCode::MalformedRow;
}

}  // namespace

TEST_CASE("constant image extracts to zeros") {
  const FeatureVector f = extract(GrayImage(64, 48, std::uint8_t{77}), ExtractionConfig{});
  CHECK(f.values == std::vector<std::int64_t>{0, 0, 0, 0});
}

TEST_CASE("fixture strokes are counted per region in LT, RT, LB, RB order") {
  const GrayImage img = four_stroke_fixture();
  const ExtractionConfig cfg = exact_config();
  // The oracle agrees on each region's edge map.
  const auto regions = partition(img, cfg.grid);
  std::vector<std::int64_t> oracle_counts;
  for (const auto& region : regions) {
    const EdgeMap e = detect_edges(crop(img, region), EdgeOperator::Sobel, 0.0);
    oracle_counts.push_back(static_cast<std::int64_t>(oracle::flood_fill(e).sizes.size()));
  }
  CHECK(oracle_counts == std::vector<std::int64_t>{3, 0, 0, 1});
  CHECK(extract(img, cfg).values == std::vector<std::int64_t>{3, 0, 0, 1});
}

TEST_CASE("384x284 image gives one value per region") {
  std::mt19937_64 rng(67);
  const GrayImage img = oracle::random_image(rng, 384, 284);
  ExtractionConfig cfg;
  CHECK(extract(img, cfg).size() == 4);
  cfg.grid = {2, 4};
  CHECK(extract(img, cfg).size() == 8);
  cfg.grid = {4, 4};
  CHECK(extract(img, cfg).size() == 16);
}

TEST_CASE("extract over a 1x1 grid is whole-image edginess") {
  std::mt19937_64 rng(71);
  for (EdgeOperator op : {EdgeOperator::Sobel, EdgeOperator::Laplacian, EdgeOperator::LoG}) {
    const GrayImage img = oracle::random_image(rng, 30, 25);
    ExtractionConfig cfg;
    cfg.op = op;
    cfg.grid = {1, 1};
    const auto want = edginess(detect_edges(img, op, std::nullopt, cfg.threshold_k),
                               static_cast<std::size_t>(cfg.min_component));
    CHECK(extract(img, cfg).values == std::vector<std::int64_t>{static_cast<std::int64_t>(want)});
  }
}

TEST_CASE("editing one region leaves the others unchanged") {
  std::mt19937_64 rng(73);
  ExtractionConfig cfg;
  cfg.grid = {2, 4};
  for (int trial = 0; trial < 10; ++trial) {
    const GrayImage base = oracle::random_image(rng, 64, 40);
    const auto views = partition(base, cfg.grid);
    const auto& target = views[rng() % views.size()];
    GrayImage edited = base;
    for (int r = target.row + 2; r < target.row + target.height - 2; ++r)
      for (int c = target.col + 2; c < target.col + target.width - 2; ++c)
        edited.at(r, c) = static_cast<std::uint8_t>(rng() & 0xff);
    const auto a = extract(base, cfg).values;
    const auto b = extract(edited, cfg).values;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (static_cast<int>(i) != target.index) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("extract is deterministic and reports the failing region") {
  std::mt19937_64 rng(79);
  const GrayImage img = oracle::random_image(rng, 50, 50);
  CHECK(extract(img, ExtractionConfig{}) == extract(img, ExtractionConfig{}));

  ExtractionConfig tiny;
  tiny.grid = {4, 4};
  try {
    extract(GrayImage(10, 10), tiny);
    FAIL("expected a too-small region");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("region 0") != std::string::npos);
  }
}

TEST_CASE("config validation and fingerprints") {
  ExtractionConfig cfg;
  CHECK(cfg.fingerprint() ==
        "operator=sobel threshold=auto threshold_k=4 min_component=5 grid=2x2");
  cfg.threshold = 12.5;
  cfg.op = EdgeOperator::LoG;
  cfg.grid = {4, 4};
  CHECK(ExtractionConfig::parse_fingerprint(cfg.fingerprint()) == cfg);

  ExtractionConfig bad;
  bad.threshold_k = 0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  bad = {};
  bad.min_component = 0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  CHECK_THROWS_AS(ExtractionConfig::parse_fingerprint("operator=sobel"), PreconditionError);
}

TEST_CASE("enroll appends under the class id") {
  const Gallery empty{ExtractionConfig{}};
  const GrayImage img = four_stroke_fixture();
  const Gallery one = enroll(empty, "c1", img);
  CHECK(empty.empty());
  CHECK(one.class_count() == 1);
  CHECK(one.sample_count() == 1);

  const Gallery twice = enroll(one, "c1", img);
  REQUIRE(twice.classes().at("c1").size() == 2);
  CHECK(twice.classes().at("c1")[0] == twice.classes().at("c1")[1]);

  Gallery g{ExtractionConfig{}};
  for (int c = 0; c < 10; ++c)
    for (int s = 0; s < 6; ++s) g = enroll(std::move(g), "c" + std::to_string(c), img);
  CHECK(g.class_count() == 10);
  CHECK(g.sample_count() == 60);

  CHECK_THROWS_AS(enroll(empty, "bad,id", img), PreconditionError);
  CHECK_THROWS_AS(enroll(empty, "", img), PreconditionError);
  CHECK_THROWS_AS(enroll(empty, "two words", img), PreconditionError);
}

TEST_CASE("Gallery::add refuses foreign features") {
  Gallery g{ExtractionConfig{}};
  FeatureVector f{{1, 2, 3, 4}, "operator=log threshold=auto threshold_k=4 min_component=5 grid=2x2"};
  CHECK_THROWS_AS(g.add("a", f), ConfigMismatchError);
  f.fingerprint = g.fingerprint();
  f.values.pop_back();
  CHECK_THROWS_AS(g.add("a", f), ConfigMismatchError);
}

TEST_CASE("gallery text format is canonical") {
  std::mt19937_64 rng(83);
  const Gallery g = oracle::random_gallery(rng, 10, 6, {2, 2});
  const std::string text = save_gallery(g);
  CHECK(text.rfind("edgeprint-gallery v1\nconfig operator=sobel threshold=auto "
                   "threshold_k=4 min_component=5 grid=2x2\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2 + 60);
  CHECK(text.find("\nk0,0,") != std::string::npos);
  CHECK(text.find("\nk9,5,") != std::string::npos);

  const Gallery back = load_gallery(text);
  CHECK(back == g);
  CHECK(save_gallery(back) == text);

  CHECK_THROWS_AS(save_gallery(Gallery{ExtractionConfig{}}), PreconditionError);
}

TEST_CASE("gallery loader errors carry codes and line numbers") {
  const std::string config =
      "config operator=sobel threshold=auto threshold_k=4 min_component=5 grid=2x2\n";
  std::size_t line = 0;
  CHECK(gallery_error("edgeprint-gallery v2\n" + config + "a,0,1,2,3,4\n", &line) ==
        GalleryErrorCode::VersionMismatch);
  CHECK(line == 1);
  CHECK(gallery_error("edgeprint-gallery v1\nconfig operator=canny\n", &line) ==
        GalleryErrorCode::BadConfig);
  CHECK(line == 2);
  CHECK(gallery_error("edgeprint-gallery v1\n" + config + "a,0,1,2,3,4\na,1,1,2,3\n", &line) ==
        GalleryErrorCode::InconsistentFeatures);
  CHECK(line == 4);
  CHECK(gallery_error("edgeprint-gallery v1\n" + config + "a,0,1,x,3,4\n", &line) ==
        GalleryErrorCode::MalformedRow);
  CHECK(line == 3);
  CHECK(gallery_error("edgeprint-gallery v1\n" + config + "a,1,1,2,3,4\n", &line) ==
        GalleryErrorCode::MalformedRow);
  CHECK(gallery_error("edgeprint-gallery v1\n" + config + "a,0,1,-2,3,4\n") ==
        GalleryErrorCode::MalformedRow);
  CHECK(gallery_error("edgeprint-gallery v1\n" + config) == GalleryErrorCode::MalformedRow);
}
