#include "edgeprint/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <system_error>

#include "edgeprint/errors.hpp"
#include "edgeprint/features.hpp"
#include "edgeprint/pgm.hpp"

namespace fs = std::filesystem;

namespace edgeprint {

Corpus load_corpus_dir(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("corpus directory '" + root.string() + "' does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& class_dir : fs::directory_iterator(root)) {
    if (!class_dir.is_directory()) continue;
    for (const auto& entry : fs::directory_iterator(class_dir.path())) {
      if (entry.is_regular_file() && entry.path().extension() == ".pgm")
        files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  Corpus corpus;
  corpus.reserve(files.size());
  for (const fs::path& file : files) {
    const std::string class_id = file.parent_path().filename().string();
    validate_class_id(class_id);
    const std::string stem = file.stem().string();
    int index = -1;
    auto [ptr, err] = std::from_chars(stem.data(), stem.data() + stem.size(), index);
    if (err != std::errc{} || ptr != stem.data() + stem.size() || index < 0) {
      throw PreconditionError("corpus file '" + file.string() +
                              "' is not named <sample-number>.pgm");
    }
    try {
      corpus.push_back({class_id, index, read_pgm_file(file)});
    } catch (const Error& e) {
      throw Error(e.kind(), file.string() + ": " + e.what());
    }
  }
  if (corpus.empty()) {
    throw IoError("no <class>/<sample>.pgm files under '" + root.string() + "'");
  }
  return corpus;
}

void write_corpus_dir(const fs::path& root, const std::vector<SynthSample>& samples) {
  for (const SynthSample& s : samples) {
    const fs::path dir = root / s.class_id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    std::string name = std::to_string(s.sample_index);
    if (name.size() < 2) name.insert(0, 2 - name.size(), '0');
    write_pgm_file(dir / (name + ".pgm"), s.image);
  }
}

Corpus to_corpus(const std::vector<SynthSample>& samples) {
  Corpus corpus;
  corpus.reserve(samples.size());
  for (const SynthSample& s : samples)
    corpus.push_back({s.class_id, s.sample_index, s.image});
  return corpus;
}

}  // namespace edgeprint
