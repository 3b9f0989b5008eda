#include "edgeprint/features.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "edgeprint/errors.hpp"

namespace edgeprint {

namespace {

constexpr std::string_view kGalleryMagic = "edgeprint-gallery";

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void ExtractionConfig::validate() const {
  if (!(threshold_k > 0.0) || !std::isfinite(threshold_k)) {
    throw PreconditionError("threshold_k must be positive and finite, got " +
                            format_double(threshold_k));
  }
  if (threshold && (!(*threshold >= 0.0) || !std::isfinite(*threshold))) {
    throw PreconditionError("threshold must be finite and >= 0, got " +
                            format_double(*threshold));
  }
  if (min_component < 1) {
    throw PreconditionError("min_component must be >= 1, got " +
                            std::to_string(min_component));
  }
  if (grid.rows < 1 || grid.cols < 1) {
    throw PreconditionError("grid must be at least 1x1");
  }
}

std::string ExtractionConfig::fingerprint() const {
  std::string out = "operator=";
  out += to_string(op);
  out += " threshold=";
  out += threshold ? format_double(*threshold) : "auto";
  out += " threshold_k=" + format_double(threshold_k);
  out += " min_component=" + std::to_string(min_component);
  out += " grid=" + grid.to_string();
  return out;
}

ExtractionConfig ExtractionConfig::parse_fingerprint(std::string_view text) {
  static constexpr std::string_view kKeys[] = {"operator", "threshold",
                                               "threshold_k", "min_component",
                                               "grid"};
  ExtractionConfig config;
  std::size_t next_key = 0;
  for (std::string_view token : split(text, ' ')) {
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || next_key == std::size(kKeys) ||
        token.substr(0, eq) != kKeys[next_key]) {
      throw PreconditionError("unexpected config field '" +
                              std::string(token) + "'");
    }
    const std::string_view value = token.substr(eq + 1);
    switch (next_key++) {
      case 0:
        config.op = parse_edge_operator(value);
        break;
      case 1:
        if (value == "auto") {
          config.threshold.reset();
        } else {
          double t = 0;
          if (!parse_double(value, t))
            throw PreconditionError("invalid threshold '" + std::string(value) + "'");
          config.threshold = t;
        }
        break;
      case 2:
        if (!parse_double(value, config.threshold_k))
          throw PreconditionError("invalid threshold_k '" + std::string(value) + "'");
        break;
      case 3:
        if (!parse_int(value, config.min_component))
          throw PreconditionError("invalid min_component '" + std::string(value) + "'");
        break;
      case 4:
        config.grid = RegionGrid::parse(value);
        break;
    }
  }
  if (next_key != std::size(kKeys)) {
    throw PreconditionError("config is missing field '" +
                            std::string(kKeys[next_key]) + "'");
  }
  config.validate();
  return config;
}

FeatureVector extract(const GrayImage& image, const ExtractionConfig& config) {
  config.validate();
  FeatureVector features;
  features.fingerprint = config.fingerprint();
  const auto regions = partition(image, config.grid);
  features.values.reserve(regions.size());
  for (const RegionView& region : regions) {
    try {
      const GrayImage sub = crop(image, region);
      const EdgeMap edges =
          detect_edges(sub, config.op, config.threshold, config.threshold_k);
      features.values.push_back(static_cast<std::int64_t>(
          edginess(edges, static_cast<std::size_t>(config.min_component))));
    } catch (const PreconditionError& e) {
      throw PreconditionError("region " + std::to_string(region.index) + " (" +
                              region_name(config.grid, region.index) +
                              "): " + e.what());
    }
  }
  return features;
}

Gallery::Gallery(ExtractionConfig config)
    : config_(std::move(config)), fingerprint_(config_.fingerprint()) {
  config_.validate();
}

std::size_t Gallery::sample_count() const {
  std::size_t n = 0;
  for (const auto& [id, samples] : classes_) n += samples.size();
  return n;
}

void Gallery::add(const std::string& class_id, FeatureVector features) {
  validate_class_id(class_id);
  if (features.fingerprint != fingerprint_) {
    throw ConfigMismatchError("feature config '" + features.fingerprint +
                              "' does not match gallery config '" +
                              fingerprint_ + "'");
  }
  if (features.values.size() !=
      static_cast<std::size_t>(config_.grid.region_count())) {
    throw ConfigMismatchError("feature vector has " +
                              std::to_string(features.values.size()) +
                              " values, gallery grid expects " +
                              std::to_string(config_.grid.region_count()));
  }
  classes_[class_id].push_back(std::move(features));
}

void validate_class_id(std::string_view class_id) {
  if (class_id.empty()) throw PreconditionError("class id must not be empty");
  for (unsigned char ch : class_id) {
    if (ch == ',' || ch <= ' ' || ch == 0x7f) {
      throw PreconditionError("class id '" + std::string(class_id) +
                              "' contains a comma, whitespace or control "
                              "character");
    }
  }
}

Gallery enroll(Gallery gallery, const std::string& class_id,
               const GrayImage& image) {
  validate_class_id(class_id);
  gallery.add(class_id, extract(image, gallery.config()));
  return gallery;
}

std::string save_gallery(const Gallery& gallery) {
  if (gallery.empty()) {
    throw PreconditionError("refusing to save a gallery with no classes");
  }
  std::ostringstream out;
  out << kGalleryMagic << " v" << Gallery::kFormatVersion << '\n';
  out << "config " << gallery.fingerprint() << '\n';
  for (const auto& [class_id, samples] : gallery.classes()) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      out << class_id << ',' << i;
      for (std::int64_t v : samples[i].values) out << ',' << v;
      out << '\n';
    }
  }
  return out.str();
}

Gallery load_gallery(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }

  const std::string expected_header =
      std::string(kGalleryMagic) + " v" + std::to_string(Gallery::kFormatVersion);
  if (lines.empty() || lines[0] != expected_header) {
    throw GalleryParseError(
        GalleryErrorCode::VersionMismatch, 1,
        "expected header '" + expected_header + "', found '" +
            std::string(lines.empty() ? std::string_view{} : lines[0]) + "'");
  }
  constexpr std::string_view kConfigPrefix = "config ";
  if (lines.size() < 2 || !lines[1].starts_with(kConfigPrefix)) {
    throw GalleryParseError(GalleryErrorCode::BadConfig, 2,
                            "expected 'config ...' line");
  }
  ExtractionConfig config;
  try {
    config = ExtractionConfig::parse_fingerprint(
        lines[1].substr(kConfigPrefix.size()));
  } catch (const PreconditionError& e) {
    throw GalleryParseError(GalleryErrorCode::BadConfig, 2, e.what());
  }

  Gallery gallery(config);
  const auto width = static_cast<std::size_t>(config.grid.region_count());
  const std::string fingerprint = config.fingerprint();
  for (std::size_t n = 2; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const auto fields = split(lines[n], ',');
    if (fields.size() < 3) {
      throw GalleryParseError(GalleryErrorCode::MalformedRow, line_no,
                              "expected class,index,values...");
    }
    const std::string class_id(fields[0]);
    try {
      validate_class_id(class_id);
    } catch (const PreconditionError& e) {
      throw GalleryParseError(GalleryErrorCode::MalformedRow, line_no, e.what());
    }
    std::size_t index = 0;
    if (!parse_int(fields[1], index)) {
      throw GalleryParseError(GalleryErrorCode::MalformedRow, line_no,
                              "invalid sample index '" +
                                  std::string(fields[1]) + "'");
    }
    const auto existing = gallery.classes().find(class_id);
    const std::size_t expected_index =
        existing == gallery.classes().end() ? 0 : existing->second.size();
    if (index != expected_index) {
      throw GalleryParseError(GalleryErrorCode::MalformedRow, line_no,
                              "sample index " + std::to_string(index) +
                                  " out of sequence, expected " +
                                  std::to_string(expected_index));
    }
    if (fields.size() - 2 != width) {
      throw GalleryParseError(
          GalleryErrorCode::InconsistentFeatures, line_no,
          "row has " + std::to_string(fields.size() - 2) +
              " values but config grid " + config.grid.to_string() +
              " needs " + std::to_string(width));
    }
    FeatureVector features;
    features.fingerprint = fingerprint;
    features.values.reserve(width);
    for (std::size_t i = 2; i < fields.size(); ++i) {
      std::int64_t v = 0;
      if (!parse_int(fields[i], v) || v < 0) {
        throw GalleryParseError(GalleryErrorCode::MalformedRow, line_no,
                                "invalid count '" + std::string(fields[i]) + "'");
      }
      features.values.push_back(v);
    }
    gallery.add(class_id, std::move(features));
  }
  if (gallery.empty()) {
    throw GalleryParseError(GalleryErrorCode::MalformedRow, lines.size() + 1,
                            "gallery has no samples");
  }
  return gallery;
}

}  // namespace edgeprint
