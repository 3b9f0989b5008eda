#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgeprint/components.hpp"
#include "edgeprint/edges.hpp"
#include "edgeprint/image.hpp"

namespace edgeprint {

/// Everything that determines how an image becomes a feature vector.
struct ExtractionConfig {
  EdgeOperator op = EdgeOperator::Sobel;
  std::optional<double> threshold;  // absent: auto threshold
  double threshold_k = kDefaultThresholdK;
  int min_component = kDefaultMinComponent;
  RegionGrid grid{2, 2};

  /// Throws PreconditionError on out-of-range fields.
  void validate() const;

  /// Canonical "operator=.. threshold=.. threshold_k=.. min_component=..
  /// grid=RxC" string. Equal fingerprints mean interchangeable features.
  std::string fingerprint() const;
  static ExtractionConfig parse_fingerprint(std::string_view text);

  friend bool operator==(const ExtractionConfig&,
                         const ExtractionConfig&) = default;
};

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// Per-region edginess counts, row-major region order.
struct FeatureVector {
  std::vector<std::int64_t> values;
  std::string fingerprint;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Runs edge detection and edginess independently on each grid region.
FeatureVector extract(const GrayImage& image, const ExtractionConfig& config);

/// Classified training database. Every vector shares the gallery's config.
class Gallery {
 public:
  static constexpr int kFormatVersion = 1;

  explicit Gallery(ExtractionConfig config);

  const ExtractionConfig& config() const { return config_; }
  const std::string& fingerprint() const { return fingerprint_; }
  const std::map<std::string, std::vector<FeatureVector>>& classes() const {
    return classes_;
  }
  int format_version() const { return kFormatVersion; }

  bool empty() const { return classes_.empty(); }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t sample_count() const;

  /// Appends to class_id, creating it if absent. The vector's fingerprint
  /// must match the gallery's.
  void add(const std::string& class_id, FeatureVector features);

  friend bool operator==(const Gallery&, const Gallery&) = default;

 private:
  ExtractionConfig config_;
  std::string fingerprint_;
  std::map<std::string, std::vector<FeatureVector>> classes_;
};

/// Class ids must be non-empty and free of commas, whitespace and control
/// characters so gallery rows stay unambiguous.
void validate_class_id(std::string_view class_id);

/// Returns a copy of gallery with extract(image) appended under class_id.
Gallery enroll(Gallery gallery, const std::string& class_id,
               const GrayImage& image);

/// Canonical text form: sorted classes, samples by index, LF endings.
std::string save_gallery(const Gallery& gallery);
Gallery load_gallery(std::string_view text);

}  // namespace edgeprint
