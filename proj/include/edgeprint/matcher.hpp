#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgeprint/features.hpp"

namespace edgeprint {

/// Sum of |u_i - t_i|. Both vectors must carry the same fingerprint and
/// length, otherwise ConfigMismatchError.
std::int64_t city_block(const FeatureVector& u, const FeatureVector& t);

struct SampleDistance {
  std::size_t sample_index = 0;
  std::int64_t distance = 0;

  friend bool operator==(const SampleDistance&, const SampleDistance&) = default;
};

struct ClassDistance {
  std::string class_id;
  double mean_distance = 0.0;  // arithmetic mean of per_sample
  std::vector<SampleDistance> per_sample;

  friend bool operator==(const ClassDistance&, const ClassDistance&) = default;
};

/// Average city-block distance from u to each sample of one class. The
/// denominator is the sample count N.
ClassDistance class_distance(const FeatureVector& u,
                             std::span<const FeatureVector> samples,
                             std::string class_id = {});

/// Closest sample of a stage-2 candidate class.
struct CandidateBest {
  std::string class_id;
  std::size_t sample_index = 0;
  std::int64_t distance = 0;

  friend bool operator==(const CandidateBest&, const CandidateBest&) = default;
};

struct MatchReport {
  std::vector<ClassDistance> ranked;  // ascending mean, then class id
  std::string stage1_class;
  std::vector<std::string> stage2_candidates;  // up to two stage-1 leaders
  std::vector<CandidateBest> stage2_best;      // parallel to candidates
  std::string stage2_class;                    // empty after stage 1 only

  friend bool operator==(const MatchReport&, const MatchReport&) = default;
};

/// Ranks every class by mean distance. stage2_candidates is filled, but
/// stage2_class is left empty.
MatchReport identify_stage1(const FeatureVector& u, const Gallery& gallery);

/// Stage 1, then the minimum single-sample distance within the two leading
/// classes decides. Ties go to the class with the smaller mean, then the
/// smaller id. With one class, stage 2 repeats stage 1.
MatchReport identify_two_stage(const FeatureVector& u, const Gallery& gallery);

/// Name of the averaging convention recorded alongside reported means.
inline constexpr const char* kMeanConvention = "arithmetic-mean-over-N";

/// JSON report with ranked classes, per-sample distances and both decisions.
std::string report_to_json(const MatchReport& report);

}  // namespace edgeprint
