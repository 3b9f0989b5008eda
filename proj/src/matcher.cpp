#include "edgeprint/matcher.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

#include "edgeprint/errors.hpp"

namespace edgeprint {

std::int64_t city_block(const FeatureVector& u, const FeatureVector& t) {
  if (u.fingerprint != t.fingerprint) {
    throw ConfigMismatchError("incomparable features: '" + u.fingerprint +
                              "' vs '" + t.fingerprint + "'");
  }
  if (u.values.size() != t.values.size()) {
    throw ConfigMismatchError("incomparable features: lengths " +
                              std::to_string(u.values.size()) + " and " +
                              std::to_string(t.values.size()));
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const std::int64_t d = u.values[i] - t.values[i];
    sum += d < 0 ? -d : d;
  }
  return sum;
}

ClassDistance class_distance(const FeatureVector& u,
                             std::span<const FeatureVector> samples,
                             std::string class_id) {
  if (samples.empty()) {
    throw PreconditionError("class '" + class_id + "' has no samples");
  }
  ClassDistance out;
  out.class_id = std::move(class_id);
  out.per_sample.reserve(samples.size());
  std::int64_t total = 0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const std::int64_t d = city_block(u, samples[j]);
    out.per_sample.push_back({j, d});
    total += d;
  }
  out.mean_distance =
      static_cast<double>(total) / static_cast<double>(samples.size());
  return out;
}

MatchReport identify_stage1(const FeatureVector& u, const Gallery& gallery) {
  if (gallery.empty()) throw PreconditionError("gallery is empty");
  if (u.fingerprint != gallery.fingerprint()) {
    throw ConfigMismatchError("probe config '" + u.fingerprint +
                              "' does not match gallery config '" +
                              gallery.fingerprint() + "'");
  }
  MatchReport report;
  report.ranked.reserve(gallery.class_count());
  for (const auto& [class_id, samples] : gallery.classes()) {
    report.ranked.push_back(class_distance(u, samples, class_id));
  }
  // Classes arrive in id order, so a stable sort on the mean alone keeps
  // the lexicographic tie-break.
  std::stable_sort(report.ranked.begin(), report.ranked.end(),
                   [](const ClassDistance& a, const ClassDistance& b) {
                     return a.mean_distance < b.mean_distance;
                   });
  report.stage1_class = report.ranked.front().class_id;
  const std::size_t leaders = std::min<std::size_t>(2, report.ranked.size());
  for (std::size_t i = 0; i < leaders; ++i) {
    report.stage2_candidates.push_back(report.ranked[i].class_id);
  }
  return report;
}

MatchReport identify_two_stage(const FeatureVector& u, const Gallery& gallery) {
  MatchReport report = identify_stage1(u, gallery);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < report.stage2_candidates.size(); ++i) {
    const ClassDistance& cd = report.ranked[i];
    const auto closest = std::min_element(
        cd.per_sample.begin(), cd.per_sample.end(),
        [](const SampleDistance& a, const SampleDistance& b) {
          return a.distance < b.distance;
        });
    report.stage2_best.push_back(
        {cd.class_id, closest->sample_index, closest->distance});
    // Candidates are in rank order; strict < keeps the better-ranked class
    // on ties.
    if (closest->distance < best) {
      best = closest->distance;
      report.stage2_class = cd.class_id;
    }
  }
  return report;
}

std::string report_to_json(const MatchReport& report) {
  nlohmann::ordered_json j;
  j["mean_convention"] = kMeanConvention;
  auto& ranked = j["ranked"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.ranked.size(); ++i) {
    const ClassDistance& cd = report.ranked[i];
    nlohmann::ordered_json entry;
    entry["rank"] = i + 1;
    entry["class_id"] = cd.class_id;
    entry["mean_distance"] = cd.mean_distance;
    auto& samples = entry["per_sample"] = nlohmann::ordered_json::array();
    for (const SampleDistance& s : cd.per_sample) {
      samples.push_back({{"sample_index", s.sample_index},
                         {"distance", s.distance}});
    }
    ranked.push_back(std::move(entry));
  }
  j["stage1_class"] = report.stage1_class;
  j["stage2_candidates"] = report.stage2_candidates;
  auto& best = j["stage2_best"] = nlohmann::ordered_json::array();
  for (const CandidateBest& b : report.stage2_best) {
    best.push_back({{"class_id", b.class_id},
                    {"sample_index", b.sample_index},
                    {"distance", b.distance}});
  }
  j["stage2_class"] = report.stage2_class;
  return j.dump(2) + "\n";
}

}  // namespace edgeprint
