#include <doctest.h>

#include <algorithm>
#include <set>

#include "edgeprint/corpus_io.hpp"
#include "edgeprint/errors.hpp"
#include "edgeprint/evaluation.hpp"
#include "edgeprint/synth.hpp"
#include "oracles.hpp"

using namespace edgeprint;

namespace {

SynthSpec small_spec() {
  SynthSpec s;
  s.class_count = 4;
  s.samples_per_class = 4;
  s.width = 128;
  s.height = 96;
  s.band_rows = 2;
  s.band_cols = 2;
  s.max_lines = 3;
  s.min_class_separation = 2;
  s.session_strokes = 1;
  s.seed = 5;
  return s;
}

SynthSpec clean(SynthSpec s) {
  s.orientation_jitter = 0;
  s.endpoint_jitter = 0;
  s.dropout = 0;
  s.clutter_strokes = 0;
  s.noise_amplitude = 0;
  s.contrast_jitter = 0;
  s.session_strokes = 0;
  return s;
}

}  // namespace

TEST_CASE("split partitions each class deterministically") {
  const std::map<std::string, std::size_t> counts{{"a", 12}, {"b", 12}};
  const auto s = split(counts, {6, 6, 9});
  for (const auto& [id, cs] : s) {
    CHECK(cs.train.size() == 6);
    CHECK(cs.test.size() == 6);
    std::set<std::size_t> all(cs.train.begin(), cs.train.end());
    all.insert(cs.test.begin(), cs.test.end());
    CHECK(all.size() == 12);
  }
  CHECK(split(counts, {6, 6, 9}) == s);
  CHECK(split(counts, {6, 6, 10}) != s);
  // A class's split does not depend on which other classes are present.
  CHECK(split({{"b", 12}}, {6, 6, 9}).at("b") == s.at("b"));

  CHECK_THROWS_AS(split(counts, {7, 6, 9}), PreconditionError);
  CHECK_THROWS_AS(split(counts, {0, 6, 9}), PreconditionError);
  try {
    split({{"short", 3}}, {2, 2, 1});
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("short") != std::string::npos);
  }
}

TEST_CASE("synthetic corpus is seeded and well formed") {
  const SynthSpec spec = small_spec();
  const auto a = generate_synthetic(spec);
  const auto b = generate_synthetic(spec);
  REQUIRE(a.size() == 16);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].image == b[i].image);
  CHECK(a[0].class_id == "c00");
  CHECK(a[15].class_id == "c03");
  CHECK(a[15].sample_index == 3);

  SynthSpec other = spec;
  other.seed = 6;
  CHECK(generate_synthetic(other)[0].image != a[0].image);

  // Expected line densities differ between every pair of classes.
  std::set<int> totals;
  for (const auto& layout : synth_class_layouts(spec)) {
    int t = 0;
    for (int n : layout) t += n;
    totals.insert(t);
  }
  CHECK(totals.size() == static_cast<std::size_t>(spec.class_count));
}

TEST_CASE("sessions split samples into equal blocks") {
  const SynthSpec spec = benchmark_synth_spec();
  CHECK(synth_session(spec, 0) == 0);
  CHECK(synth_session(spec, 5) == 0);
  CHECK(synth_session(spec, 6) == 1);
  CHECK(synth_session(spec, 11) == 1);
}

TEST_CASE("without noise or jitter all samples of a class coincide") {
  const auto samples = generate_synthetic(clean(small_spec()));
  for (const auto& s : samples) {
    const auto& first = *std::find_if(samples.begin(), samples.end(),
                                      [&](const SynthSample& x) { return x.class_id == s.class_id; });
    CHECK(s.image == first.image);
  }
}

TEST_CASE("clean synthetic strokes are counted one component each") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SynthSpec spec = clean(small_spec());
    spec.seed = seed;
    spec.samples_per_class = 1;
    for (const auto& s : generate_synthetic(spec)) {
      const EdgeMap e = detect_edges(s.image, EdgeOperator::Sobel, 0.0);
      CHECK(oracle::flood_fill(e).sizes.size() == static_cast<std::size_t>(s.line_count));
      ExtractionConfig cfg;
      cfg.threshold = 0.0;
      cfg.min_component = 1;
      cfg.grid = {1, 1};
      CHECK(extract(s.image, cfg).values[0] == s.line_count);
    }
  }
}

TEST_CASE("synth parameter validation") {
  SynthSpec s = small_spec();
  s.class_count = 1;
  CHECK_THROWS_AS(s.validate(), PreconditionError);
  s = small_spec();
  s.width = 20;
  CHECK_THROWS_AS(s.validate(), PreconditionError);
  s = small_spec();
  s.max_lines = 9;
  CHECK_THROWS_AS(s.validate(), PreconditionError);
}

TEST_CASE("evaluate scores a separated corpus perfectly") {
  const Corpus corpus = to_corpus(generate_synthetic(clean(small_spec())));
  const EvalResult r = evaluate(corpus, {2, 2, 3}, ExtractionConfig{});
  CHECK(r.per_test.size() == 8);
  CHECK(r.r_stage1 == 1.0);
  CHECK(r.r_stage2 == 1.0);
  CHECK(r.rng_id == std::string(kSplitRngId));
}

TEST_CASE("rates follow the per-test rows exactly") {
  const Corpus corpus = to_corpus(generate_synthetic(small_spec()));
  for (EdgeOperator op : default_sweep_operators()) {
    ExtractionConfig cfg;
    cfg.op = op;
    const EvalResult r = evaluate(corpus, {2, 2, 4}, cfg);
    std::size_t c1 = 0, c2 = 0;
    for (const auto& t : r.per_test) {
      c1 += t.stage1 == t.class_id;
      c2 += t.stage2 == t.class_id;
    }
    CHECK(r.r_stage1 == static_cast<double>(c1) / r.per_test.size());
    CHECK(r.r_stage2 == static_cast<double>(c2) / r.per_test.size());
    CHECK(std::is_sorted(r.per_test.begin(), r.per_test.end(),
                         [](const TestOutcome& a, const TestOutcome& b) {
                           return std::tie(a.class_id, a.sample_index) <
                                  std::tie(b.class_id, b.sample_index);
                         }));
  }
}

TEST_CASE("enrollment order does not change the result") {
  Corpus corpus = to_corpus(generate_synthetic(small_spec()));
  const EvalResult a = evaluate(corpus, {2, 2, 8}, ExtractionConfig{});
  std::reverse(corpus.begin(), corpus.end());
  const EvalResult b = evaluate(corpus, {2, 2, 8}, ExtractionConfig{});
  CHECK(a.per_test == b.per_test);
  CHECK(a.r_stage1 == b.r_stage1);
  CHECK(a.r_stage2 == b.r_stage2);
}

TEST_CASE("evaluate rejects unusable corpora") {
  CHECK_THROWS_AS(evaluate(Corpus{}, {1, 1, 1}, ExtractionConfig{}), PreconditionError);
  Corpus corpus = to_corpus(generate_synthetic(small_spec()));
  CHECK_THROWS_AS(evaluate(corpus, {3, 2, 1}, ExtractionConfig{}), PreconditionError);
  corpus.push_back(corpus.front());
  CHECK_THROWS_AS(evaluate(corpus, {1, 1, 1}, ExtractionConfig{}), PreconditionError);

  Corpus tiny{{"a", 0, GrayImage(4, 4)}, {"a", 1, GrayImage(4, 4)},
              {"b", 0, GrayImage(4, 4)}, {"b", 1, GrayImage(4, 4)}};
  try {
    evaluate(tiny, {1, 1, 1}, ExtractionConfig{});
    FAIL("expected a too-small image");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
    CHECK(std::string(e.what()).find("class 'a' sample") != std::string::npos);
  }
}

TEST_CASE("sweep covers every grid and operator") {
  const Corpus corpus = to_corpus(generate_synthetic(small_spec()));
  const auto cells = sweep(corpus, {2, 2, 1}, ExtractionConfig{}, default_sweep_grids(),
                           default_sweep_operators());
  REQUIRE(cells.size() == 9);
  CHECK(cells[0].grid == RegionGrid{2, 2});
  CHECK(cells[0].op == EdgeOperator::Sobel);
  CHECK(cells[8].grid == RegionGrid{4, 4});
  CHECK(cells[8].op == EdgeOperator::LoG);
  for (const auto& c : cells) {
    CHECK(c.result.r_stage1 >= 0.0);
    CHECK(c.result.r_stage1 <= 1.0);
    CHECK(c.result.config.grid == c.grid);
  }
  const std::string table = format_sweep(cells);
  CHECK(table.find("grid,operator,r_stage1,r_stage2,n_test\n2x2,sobel,") != std::string::npos);
  const auto again = sweep(corpus, {2, 2, 1}, ExtractionConfig{}, default_sweep_grids(),
                           default_sweep_operators());
  CHECK(format_sweep(again) == table);
}
