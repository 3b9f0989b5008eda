#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edgeprint/features.hpp"
#include "edgeprint/image.hpp"

namespace edgeprint {

struct SplitSpec {
  int n_train = 6;
  int n_test = 6;
  std::uint64_t seed = 1;
};

/// Positions into a class's samples (ordered by sample index).
struct ClassSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  friend bool operator==(const ClassSplit&, const ClassSplit&) = default;
};

/// Identifier of the shuffle used by split(), recorded with every result.
inline constexpr const char* kSplitRngId =
    "mt19937_64(splitmix64(seed^fnv1a64(class_id)))+fisher-yates-mod";

/// Seeded per-class shuffle; first n_train go to train, next n_test to test.
/// Each class is shuffled from its own stream keyed by the class id.
std::map<std::string, ClassSplit> split(
    const std::map<std::string, std::size_t>& samples_per_class,
    const SplitSpec& spec);

struct LabeledImage {
  std::string class_id;
  int sample_index = 0;
  GrayImage image;
};

using Corpus = std::vector<LabeledImage>;

struct TestOutcome {
  std::string class_id;
  int sample_index = 0;
  std::string stage1;
  std::string stage2;

  friend bool operator==(const TestOutcome&, const TestOutcome&) = default;
};

struct EvalResult {
  std::vector<TestOutcome> per_test;  // sorted by class id, sample index
  double r_stage1 = 0.0;
  double r_stage2 = 0.0;
  ExtractionConfig config;
  SplitSpec split;
  std::string rng_id = kSplitRngId;
};

/// Enrolls the training split, identifies every test sample with both
/// stages and reports the correct-identification rates. Feature extraction
/// and identification run in parallel; results do not depend on it.
EvalResult evaluate(const Corpus& corpus, const SplitSpec& spec,
                    const ExtractionConfig& config);

struct SweepCell {
  RegionGrid grid;
  EdgeOperator op = EdgeOperator::Sobel;
  EvalResult result;
};

std::vector<RegionGrid> default_sweep_grids();
std::vector<EdgeOperator> default_sweep_operators();

/// evaluate() for every (grid, operator) pair, grids outermost.
std::vector<SweepCell> sweep(const Corpus& corpus, const SplitSpec& spec,
                             const ExtractionConfig& base,
                             const std::vector<RegionGrid>& grids,
                             const std::vector<EdgeOperator>& operators);

/// Aligned table followed by a "grid,operator,r_stage1,r_stage2,n_test"
/// block.
std::string format_sweep(const std::vector<SweepCell>& cells);

/// Summary plus one line per test sample.
std::string format_evaluation(const EvalResult& result);

}  // namespace edgeprint
