#pragma once

#include <filesystem>
#include <vector>

#include "edgeprint/evaluation.hpp"
#include "edgeprint/synth.hpp"

namespace edgeprint {

/// Reads <root>/<class_id>/<sample>.pgm. The file stem must be a
/// non-negative integer; it becomes the sample index.
Corpus load_corpus_dir(const std::filesystem::path& root);

/// Writes <root>/<class_id>/<NN>.pgm for every sample.
void write_corpus_dir(const std::filesystem::path& root,
                      const std::vector<SynthSample>& samples);

Corpus to_corpus(const std::vector<SynthSample>& samples);

}  // namespace edgeprint
