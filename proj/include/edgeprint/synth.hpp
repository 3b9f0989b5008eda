#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgeprint/image.hpp"

namespace edgeprint {

/// Parameters for the procedural palm-like corpus.
///
/// The image is split into band_rows x band_cols cells. Each class fixes,
/// per cell, how many dark line strokes it holds (between min_lines and
/// max_lines), their orientation family, tilt and length. Strokes sit in
/// separated slots inside the cell so they never touch one another or a cell
/// border. Samples are split into capture sessions; each session adds its own
/// few strokes on top of the class layout, so a class is multimodal the way
/// multi-session captures are. Samples of a class perturb the strokes
/// (endpoint and orientation jitter, occasional dropout), sprinkle short
/// clutter strokes and add uniform pixel noise.
struct SynthSpec {
  int class_count = 10;
  int samples_per_class = 12;
  int width = 384;
  int height = 284;
  int band_rows = 4;
  int band_cols = 4;
  int min_lines = 1;
  int max_lines = 5;
  double line_thickness = 2.0;
  double orientation_jitter = 0.03;  // radians, per sample
  double endpoint_jitter = 2.0;      // pixels, per sample
  double dropout = 0.03;             // per-stroke omission probability
  int clutter_strokes = 2;           // short random strokes per sample
  int noise_amplitude = 8;           // uniform noise in [-a, a]
  int contrast_jitter = 10;          // per-sample stroke intensity offset
  int background = 170;
  int line_intensity = 70;
  int sessions = 2;           // samples are split evenly across sessions
  int session_strokes = 6;    // extra strokes specific to each session
  int min_class_separation = 10;  // L1 distance of 2x2 quadrant line totals
  std::uint64_t seed = 1;

  /// Throws PreconditionError when the spec cannot be honoured.
  void validate() const;
};

struct SynthSample {
  std::string class_id;
  int sample_index = 0;
  GrayImage image;
  int line_count = 0;  // class strokes actually drawn (excludes clutter)
};

/// Class ids are "c" followed by a zero-padded ordinal.
std::string synth_class_id(int class_index, int class_count);

/// Fully determined by spec (including seed). Samples are ordered by class,
/// then sample index.
std::vector<SynthSample> generate_synthetic(const SynthSpec& spec);

/// Session of a sample: samples are divided into equal consecutive blocks.
int synth_session(const SynthSpec& spec, int sample_index);

/// Per-cell stroke counts of each class's base layout (row-major cells),
/// before session strokes.
std::vector<std::vector<int>> synth_class_layouts(const SynthSpec& spec);

/// Frozen corpus used by the end-to-end benchmark and acceptance suite:
/// 10 classes x 12 samples at 384x284.
SynthSpec benchmark_synth_spec();

}  // namespace edgeprint
